#pragma once

#include <string>

#include "dntau/operators.hpp"
#include "dntau/series.hpp"

namespace dntau {

// phi~_{a,b}(z,w) = kernel_multiple * (z-w)/(z+w) + regular(z,w), where
// regular is a double power series in uz = 1/z, uw = 1/w certified for total
// degree <= window.
struct TwoPoint {
  int a = 1, b = 1;
  GR kernel_multiple;
  SparseSeries regular;
  long window = 0;
  std::string region = "|z|>|w|";
  std::string convention;
  nlohmann::json to_json() const;
};

// Graded space (uz, uw) with total degree <= T.
SpacePtr twopoint_space(long T);
// Region ring |z|>|w| on (uz, uw) truncated at max-prefix <= T.
SpacePtr twopoint_region_space(long T);

// iota_{|z|>|w|} (z-w)/(z+w) = 1 + 2 sum_{m>=1} (-1)^m (w/z)^m in the region ring.
SparseSeries kernel_series(const SpacePtr& region);

// Certified window for a basis of depth K and order M.
long twopoint_window(long K, long order);

TwoPoint build_twopoint(const GrBasis& basis, int a, int b, long K, long order);
TwoPoint closed_form_phi22(const Params& p, long order);

// (a2 + a2~) K = uz^2/2 - uw^2/2 in the region ring, checked exactly.
bool kernel_identity_holds(long T);

// R(w, z): swap the two arguments of a regular part.
SparseSeries swap_arguments(const SparseSeries& r);
// R(-z, -w).
SparseSeries negate_arguments(const SparseSeries& r);

}  // namespace dntau
