#pragma once

#include <climits>
#include <string>
#include <vector>

#include "dntau/gaussian_rational.hpp"
#include "dntau/series.hpp"

namespace dntau {

// Dense single-variable Laurent series sum_n c_n z^n, bounded above, known
// exactly for n >= floor().  floor() == kExact means the value is an exact
// Laurent polynomial (nothing truncated).
class Laurent {
public:
  static constexpr long kExact = LONG_MIN / 4;

  Laurent() = default;
  explicit Laurent(long floor) : floor_(floor) {}
  static Laurent monomial(long n, const GR& c, long floor = kExact);
  static Laurent one(long floor = kExact) { return monomial(0, 1, floor); }

  long floor() const { return floor_; }
  bool exact() const { return floor_ == kExact; }
  bool is_zero() const;
  // Highest / lowest exponent with a non-zero coefficient (is_zero() must be false).
  long top() const;
  long bottom() const;

  // Throws SeriesError when n is below the floor.
  GR get(long n) const;
  void add(long n, const GR& c);
  void set(long n, const GR& c);

  Laurent operator-() const;
  friend Laurent operator+(const Laurent& a, const Laurent& b);
  friend Laurent operator-(const Laurent& a, const Laurent& b);
  friend Laurent operator*(const GR& c, const Laurent& a);
  friend Laurent operator*(const Laurent& a, const Laurent& b);
  Laurent& operator+=(const Laurent& o) { return *this = *this + o; }
  Laurent& operator-=(const Laurent& o) { return *this = *this - o; }

  // z^p * f; the floor moves with the shift.
  Laurent shifted(long p) const;
  // Drop everything below f (f must not be lower than the current floor).
  Laurent truncated(long f) const;
  // Keep exact polynomial part above f and mark as exact; used when the tail
  // is known to be zero.
  Laurent with_floor(long f) const;

  // Exact agreement on the common window n >= max(floors, lo).
  bool agrees(const Laurent& o, long lo = kExact) const;
  // First exponent (from the top) where the two differ on the common window.
  std::string first_difference(const Laurent& o, long lo = kExact) const;

  // Series in one variable named var with exponent n -> sign*n (sign = -1 gives powers of 1/z).
  SparseSeries to_series(const SpacePtr& sp, int var, int sign = 1) const;
  nlohmann::json to_json() const;
  std::string to_string(const char* var = "z") const;

  // Iterate non-zero terms from top to bottom.
  template <class F>
  void for_each(F&& f) const {
    for (size_t i = c_.size(); i-- > 0;)
      if (!c_[i].is_zero()) f(lo_ + static_cast<long>(i), c_[i]);
  }

private:
  void normalize();
  long floor_ = kExact;
  long lo_ = 0;
  std::vector<GR> c_;
};

}  // namespace dntau
