#pragma once

#include <string>
#include <vector>

#include "dntau/bigcomplex.hpp"
#include "dntau/operators.hpp"
#include "dntau/report.hpp"
#include "dntau/series.hpp"
#include "dntau/twopoint.hpp"

namespace dntau {

struct MiwaConfig {
  int N1 = 0, N2 = 0;
  long W = 0;
  // Miwa variables are u_{a,i} = 1/z_{a,i}, named "u<a>_<i>".
  std::vector<std::string> block_names(int a) const;
  void validate() const;
};

// Smallest balanced configuration that inverts faithfully at weight W.
MiwaConfig default_miwa_config(long W);

struct TwoPointSet {
  TwoPoint p11, p12, p22;
};
TwoPointSet build_twopoints(const Params& p, long W);

// Variables t<a>_<m>, m odd, graded by wt(t_{a,m}) = m.
struct TauSeries {
  int N = 2;
  int h = 2;
  long W = 0;
  SparseSeries t;
  nlohmann::json to_json() const;
  std::string to_csv() const;
};

SpacePtr time_space(long W, const std::string& prefix = "t");
// Index of t<a>_<m> in time_space.
int time_index(const SpacePtr& sp, int a, int m, const std::string& prefix = "t");

// tau in Miwa variables; result lives in the region ring of cfg and is
// checked to contain only non-negative powers of every u.
SparseSeries miwa_tau(const TwoPointSet& tp, const MiwaConfig& cfg);
TauSeries miwa_invert(const Params& p, const SparseSeries& miwa, const MiwaConfig& cfg);
// t_{a,m} = -(2/m) p_m^{(a)} substituted back, for round-trip checks.
SparseSeries miwa_substitute(const TauSeries& tau, const MiwaConfig& cfg, const SpacePtr& target);

TauSeries compute_tau(const Params& p, long W, const MiwaConfig& cfg);
TauSeries compute_tau(const Params& p, long W);

CheckReport verify_string(const TauSeries& tau);
CheckReport verify_symmetry(const TauSeries& tau);
// Checks both tau(iZ1, Z2) in Miwa form (when supplied) and t_{1,m} -> (-i)^m t_{1,m}.
CheckReport verify_rationality(const TauSeries& tau, const SparseSeries* miwa = nullptr, int N1 = 0);

// String operator pieces, exposed for tests.
SparseSeries apply_expanded_string(const TauSeries& tau);
struct StringFit {
  bool solved = false;
  GR sigma1, sigma2;
  bool all_rows_vanish = false;
};
StringFit fit_string_normalization(const TauSeries& tau);

// Coefficient table of tau with t_{a,m} scaled by (sqrt(hbar)/rho1)^{m h/(h_a (h+1)) - 1}.
struct NumericSeries {
  std::vector<std::string> vars;
  std::vector<std::pair<Mono, BigComplex>> terms;
  BigComplex coeff(const Mono& m, unsigned bits) const;
};
NumericSeries rescale_hbar(const TauSeries& tau, const BigComplex& hbar, unsigned bits);
// Exponent mh/(h_a(h+1)) - 1 of the rescaling factor.
mpq_class hbar_exponent(int h, int a, int m);
// rho_1 = -i xi, xi = e^{i pi/h}.
BigComplex rho1(int h, unsigned bits);

}  // namespace dntau
