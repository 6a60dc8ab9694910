#pragma once

#include <doctest.h>

#include "dntau/gaussian_rational.hpp"

namespace doctest {
template <>
struct StringMaker<dntau::GR> {
  static String convert(const dntau::GR& x) { return x.to_string().c_str(); }
};
}  // namespace doctest
