#include "dntau/twopoint.hpp"

#include <algorithm>

namespace dntau {

nlohmann::json TwoPoint::to_json() const {
  return {{"a", a},          {"b", b},           {"kernel_multiple", dntau::to_json(kernel_multiple)},
          {"window", window}, {"region", region}, {"convention", convention},
          {"regular", regular.to_json()}};
}

SpacePtr twopoint_space(long T) { return Space::graded({"uz", "uw"}, {1, 1}, T); }

SpacePtr twopoint_region_space(long T) { return Space::region({{"uz", "uw"}}, T); }

SparseSeries kernel_series(const SpacePtr& region) {
  std::vector<SparseSeries::Term> terms;
  long T = region->bounds().empty() ? 0 : region->bounds()[0].bound;
  for (long m = 0; m <= T; ++m) {
    Mono mo{};
    mo[0] = static_cast<int16_t>(m);
    mo[1] = static_cast<int16_t>(-m);
    terms.emplace_back(mo, m == 0 ? GR(1) : GR(m % 2 ? -2 : 2));
  }
  return SparseSeries::from_terms(region, std::move(terms));
}

long twopoint_window(long K, long order) { return std::min(K, order); }

namespace {

// acc += c * f(z) g(w) as an outer product; exponent n of z becomes uz^{-n}.
void outer_add(TermAccumulator& acc, const Space& sp, const Laurent& f, const Laurent& g, const GR& c, long T) {
  if (f.floor() > -T || g.floor() > -T)
    throw SeriesError("two-point assembly: basis vectors are not certified deep enough for window " +
                      std::to_string(T));
  f.for_each([&](long n, const GR& x) {
    g.for_each([&](long m, const GR& y) {
      Mono mo{};
      mo[0] = static_cast<int16_t>(-n);
      mo[1] = static_cast<int16_t>(-m);
      if (sp.admits(mo)) acc.add(mo, c * x * y);
    });
  });
}

// Subtract the kernel part and move the result into the graded space,
// insisting that every exponent is non-negative.
SparseSeries split_regular(const SparseSeries& region_sum, const GR& kmult, long T, const char* what) {
  SparseSeries r = region_sum - kmult * kernel_series(region_sum.space());
  std::vector<SparseSeries::Term> terms;
  for (auto& [m, c] : r.terms()) {
    if (m[0] < 0 || m[1] < 0)
      throw SeriesError(std::string(what) + ": mixed ratio powers failed to cancel at uz^" + std::to_string(m[0]) +
                        " uw^" + std::to_string(m[1]));
    terms.emplace_back(m, c);
  }
  return SparseSeries::from_terms(twopoint_space(T), std::move(terms));
}

GR r_k(long k) { return k == 0 ? GR::frac(1, 2) : GR(k % 2 ? -1 : 1); }

// u^e -> -((e+1)/2) u^{e+2} in variable v, applied n times, times factor.
std::pair<Mono, GR> a2_power(Mono m, GR c, int v, int n) {
  for (int j = 0; j < n; ++j) {
    long e = m[v];
    c *= GR::frac(-(e + 1), 2);
    m[v] = static_cast<int16_t>(e + 2);
  }
  return {m, c};
}

SparseSeries apply_a2_var(const SparseSeries& s, int v, int n, const GR& factor) {
  return s.map_terms([&](const Mono& m, const GR& c) { return a2_power(m, c * factor, v, n); });
}

}  // namespace

TwoPoint build_twopoint(const GrBasis& basis, int a, int b, long K, long order) {
  if (a > b || a < 1 || b > 2) throw std::invalid_argument("two-point labels must satisfy 1 <= a <= b <= 2");
  if (K > basis.K || order > basis.order)
    throw SeriesError("build_twopoint: basis of depth " + std::to_string(basis.K) + " and order " +
                      std::to_string(basis.order) + " is too small");
  const long T = twopoint_window(K, order);
  SpacePtr sp = twopoint_region_space(T);
  TermAccumulator acc(sp);
  TwoPoint tp;
  tp.a = a;
  tp.b = b;
  tp.window = T;
  tp.kernel_multiple = a == b ? GR::frac(1, 2) : GR(0);
  for (long k = 0; k <= K; ++k) {
    if (a == 1)
      outer_add(acc, *sp, basis.psi(-k).c1, basis.psi(k).comp(b), r_k(k), T);
    else
      outer_add(acc, *sp, basis.psi(k).c2, basis.psi(-k).c2, r_k(k), T);
  }
  SparseSeries sum = acc.finish();
  if (a == 2) {
    std::vector<SparseSeries::Term> geo;
    for (long k = 0; 2 * k + 1 <= T; ++k) {
      Mono mo{};
      mo[0] = static_cast<int16_t>(2 * k + 1);
      mo[1] = static_cast<int16_t>(-(2 * k + 1));
      geo.emplace_back(mo, GR(-1));
    }
    sum += SparseSeries::from_terms(sp, std::move(geo));
    tp.convention =
        "phi22(z,w) = sum_k r_k Psi_k^(2)(z) Psi_{-k}^(2)(w) - sum_k (w/z)^(2k+1), expanded in |z|>|w|; "
        "the (w,z)-ordered statement is the same function in |w|>|z|";
  } else {
    tp.convention = "phi1b(z,w) = sum_k r_k Psi_{-k}^(1)(z) Psi_k^(b)(w), expanded in |z|>|w|";
  }
  tp.regular = split_regular(sum, tp.kernel_multiple, T, "build_twopoint");
  return tp;
}

TwoPoint closed_form_phi22(const Params& p, long order) {
  const long T = order;
  SpacePtr sp = twopoint_region_space(T);
  SparseSeries K = kernel_series(sp);
  GR gfac = -i_pow(p.h) / GR(p.h + 1);
  auto g = [&](const SparseSeries& s) {
    return apply_a2_var(s, 0, p.h + 1, gfac) + apply_a2_var(s, 1, p.h + 1, gfac);
  };
  SparseSeries sum = K, term = K;
  for (long n = 1; !term.is_zero(); ++n) {
    term = GR::frac(1, n) * g(term);
    sum += term;
  }
  TwoPoint tp;
  tp.a = tp.b = 2;
  tp.window = T;
  tp.kernel_multiple = GR::frac(1, 2);
  tp.convention = "(1/2) exp(g_z + g_w) (z-w)/(z+w), expanded in |z|>|w|";
  tp.regular = split_regular(GR::frac(1, 2) * sum, tp.kernel_multiple, T, "closed_form_phi22");
  return tp;
}

bool kernel_identity_holds(long T) {
  SpacePtr sp = twopoint_region_space(T);
  SparseSeries K = kernel_series(sp);
  SparseSeries lhs = apply_a2_var(K, 0, 1, 1) + apply_a2_var(K, 1, 1, 1);
  SparseSeries rhs = SparseSeries::monomial(sp, mono_unit(0, 2), GR::frac(1, 2)) -
                     SparseSeries::monomial(sp, mono_unit(1, 2), GR::frac(1, 2));
  return lhs == rhs;
}

SparseSeries swap_arguments(const SparseSeries& r) {
  return r.map_terms([](const Mono& m, const GR& c) {
    Mono s = m;
    std::swap(s[0], s[1]);
    return std::make_pair(s, c);
  });
}

SparseSeries negate_arguments(const SparseSeries& r) {
  return r.map_terms([](const Mono& m, const GR& c) {
    return std::make_pair(m, (m[0] + m[1]) % 2 ? -c : c);
  });
}

}  // namespace dntau
