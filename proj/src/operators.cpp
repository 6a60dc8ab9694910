#include "dntau/operators.hpp"

#include <algorithm>
#include <sstream>

#include "dntau/parallel.hpp"

namespace dntau {

Params::Params(int n) : N(n), h(2 * n - 2) {
  if (n < 2) throw std::invalid_argument("N must be at least 2");
}

nlohmann::json WavePair::to_json() const { return {{"c1", c1.to_json()}, {"c2", c2.to_json()}}; }

long DiffOp::max_shift() const {
  long m = LONG_MIN;
  for (auto& t : terms) m = std::max(m, t.p);
  return m;
}

Laurent DiffOp::apply(const Laurent& f) const {
  Laurent r(f.exact() ? Laurent::kExact : f.floor() + max_shift());
  f.for_each([&](long n, const GR& c) {
    for (auto& t : terms) {
      mpq_class w = 1;
      for (int j = 0; j < t.k; ++j) w *= n;
      if (sgn(w) == 0) continue;
      r.add(n + t.p, t.c * GR(w) * c);
    }
  });
  return r;
}

DiffOp op_a1(const Params& p) {
  return {{{-GR::i(), 1, 0}, {GR::frac(1, p.h), -p.h, 1}, {GR::frac(-1, 2), -p.h, 0}}};
}

DiffOp op_a2() { return {{{GR::frac(1, 2), -2, 1}, {GR::frac(-1, 2), -2, 0}}}; }

WavePair apply_a(const Params& p, const WavePair& v) { return {op_a1(p).apply(v.c1), op_a2().apply(v.c2)}; }

Laurent a1_inv(const Params& p, const Laurent& g) {
  if (g.exact()) throw SeriesError("a1^{-1} of an exact polynomial needs an explicit truncation floor");
  Laurent f(g.floor() - 1);
  if (g.is_zero()) return f;
  long top = g.top() - 1;
  const long h = p.h;
  for (long e = top; e >= f.floor(); --e) {
    // (a1 f)_{e+1} = -i f_e + ((e+1+h)/h - 1/2) f_{e+1+h}
    GR L = e + 1 + h <= top ? GR(mpq_class(e + 1 + h, h) - mpq_class(1, 2)) * f.get(e + 1 + h) : GR();
    f.set(e, GR::i() * (g.get(e + 1) - L));
  }
  return f;
}

Laurent a2_inv(const Laurent& g) {
  Laurent f(g.exact() ? Laurent::kExact : g.floor() + 2);
  g.for_each([&](long n, const GR& c) {
    if (n == -1) throw SeriesError("a2^{-1}: z^{-1} is not in the image of a2");
    f.add(n + 2, GR::frac(2, n + 1) * c);
  });
  return f;
}

WavePair apply_a_inv(const Params& p, const WavePair& v) { return {a1_inv(p, v.c1), a2_inv(v.c2)}; }

WavePair apply_b(const Params& p, const WavePair& v) { return {v.c1.shifted(p.h), v.c2.shifted(2)}; }

static WavePair a_power(const Params& p, WavePair v, int n) {
  for (int j = 0; j < n; ++j) v = apply_a(p, v);
  return v;
}

WavePair apply_c(const Params& p, const WavePair& v) {
  return apply_b(p, v) - i_pow(p.h) * a_power(p, v, p.h);
}

WavePair apply_g(const Params& p, const WavePair& v) {
  return (-i_pow(p.h) / GR(p.h + 1)) * a_power(p, v, p.h + 1);
}

WavePair apply_A(const Params& p, const WavePair& v) {
  WavePair ba = apply_b(p, apply_a(p, v));
  WavePair ah1 = a_power(p, v, p.h + 1);
  return ba + GR::frac(1, 2) * v - i_pow(p.h) * ah1;
}

WavePair apply_word(const Params& p, const std::string& word, const WavePair& v) {
  std::istringstream is(word);
  std::vector<std::string> toks;
  for (std::string t; is >> t;) toks.push_back(t);
  WavePair r = v;
  for (auto it = toks.rbegin(); it != toks.rend(); ++it) {
    const std::string& t = *it;
    if (t == "a")
      r = apply_a(p, r);
    else if (t == "ainv")
      r = apply_a_inv(p, r);
    else if (t == "b")
      r = apply_b(p, r);
    else if (t == "c")
      r = apply_c(p, r);
    else if (t == "g")
      r = apply_g(p, r);
    else if (t == "A")
      r = apply_A(p, r);
    else
      throw std::invalid_argument("unknown operator '" + t + "'");
  }
  return r;
}

GR probe_diagonal(const Params& p, int a, long n) {
  WavePair v;
  v.comp(a) = Laurent::monomial(-n, 1);
  WavePair r = apply_A(p, v);
  const Laurent& c = r.comp(a);
  if (!c.is_zero() && c.top() > -n)
    throw SeriesError("A raises the degree of z^" + std::to_string(-n) + " on component " + std::to_string(a));
  return c.get(-n);
}

void require_window(const WavePair& v, long order, const char* what) {
  long f = std::max(v.c1.floor(), v.c2.floor());
  if (f > -order)
    throw SeriesError(std::string(what) + ": truncation margin too small, certified down to z^" + std::to_string(f) +
                      " but z^" + std::to_string(-order) + " requested (need " + std::to_string(f + order) +
                      " more orders)");
}

static Laurent solve_component(const Params& p, int a, long order) {
  auto apply_comp = [&](const Laurent& f) {
    WavePair v;
    v.comp(a) = f;
    return apply_A(p, v).comp(a);
  };
  Laurent psi = Laurent::one();
  Laurent res = apply_comp(psi);
  for (long n = 1; n <= order; ++n) {
    GR d = probe_diagonal(p, a, n);
    GR expect = a == 1 ? GR(n) : GR::frac(-n, 2);
    if (!(d == expect))
      throw SeriesError("diagonal probe mismatch on component " + std::to_string(a) + " at n=" + std::to_string(n) +
                        ": got " + d.to_string());
    GR r = res.get(-n);
    if (r.is_zero()) continue;
    GR c = -r / d;
    psi.add(-n, c);
    res += c * apply_comp(Laurent::monomial(-n, 1));
    if (!res.get(-n).is_zero()) throw SeriesError("wave recursion failed to cancel");
  }
  for (long n = 0; n <= order; ++n)
    if (!res.get(-n).is_zero()) throw SeriesError("residual of A Psi does not vanish");
  // the tail is unknown beyond the requested order
  return psi.with_floor(-order);
}

WavePair solve_wave(const Params& p, long order) {
  if (order < 1) throw std::invalid_argument("order must be >= 1");
  return {solve_component(p, 1, order), solve_component(p, 2, order)};
}

Laurent psi2_closed_form(const Params& p, long m, long order) {
  const long h = p.h;
  Laurent r(-order);
  GR pref = (GR(2) * GR::i()).pow(-m);
  GR base = i_pow(h) / GR(mpq_class(h + 1) * mpq_class(mpz_class(1) << (h + 1)));
  GR bk = 1;
  for (long k = 0;; ++k) {
    long deg = -2 * m - 2 * (h + 1) * k;
    if (deg < -order) break;
    r.add(deg, pref * bk * GR(double_factorial(2 * (m + h * k + k) - 1) / factorial(k)));
    bk *= base;
  }
  return r;
}

WavePair gaussian_oracle(const Params& p, long order) {
  if (order < 1) throw std::invalid_argument("order must be >= 1");
  const long h = p.h;
  const long nmax = order / (h + 1);
  // exponent of the Gaussian integrand as a series in (alpha, y), graded by alpha
  auto sp = std::make_shared<Space>(std::vector<Variable>{{"alpha", 1}, {"y", 1}},
                                    std::vector<LinearBound>{{{1, 0}, 2 * nmax}});
  SparseSeries S(sp);
  for (long j = 3; j <= 2 * h + 2; ++j) {
    mpq_class c = binomial(2 * h + 2, j) / mpq_class(2 * h + 2);
    c *= mpq_class(-2, h);
    c /= mpq_class(mpz_class(1) << j);
    Mono m{};
    m[0] = static_cast<int16_t>(j - 2);
    m[1] = static_cast<int16_t>(j);
    S += SparseSeries::monomial(sp, m, GR(c));
  }
  SparseSeries E = exp(S);
  std::vector<GR> acoef(2 * nmax + 1);
  for (auto& [m, c] : E.terms()) {
    if (m[1] % 2) continue;
    acoef[m[0]] += c * GR(double_factorial(m[1] - 1));
  }
  Laurent c1(-order);
  GR alpha2 = GR::i() / GR(h);
  for (long j = 1; j <= 2 * nmax; j += 2)
    if (!acoef[j].is_zero()) throw SeriesError("odd alpha power survived the Gaussian average");
  for (long n = 0; n <= nmax; ++n) c1.add(-n * (h + 1), acoef[2 * n] * alpha2.pow(n));
  return {c1, psi2_closed_form(p, 0, order)};
}

const WavePair& GrBasis::psi(long k) const {
  auto it = psis.find(k);
  if (it == psis.end()) throw std::out_of_range("basis vector Psi_" + std::to_string(k) + " was not built");
  return it->second;
}

long basis_margin(const Params& p, long K, long order) { return order + K * p.h; }

GrBasis build_basis(const Params& p, long K, long order) {
  if (K < 0 || order < 1) throw std::invalid_argument("build_basis needs K >= 0 and order >= 1");
  GrBasis B;
  B.params = p;
  B.K = K;
  B.order = order;
  WavePair psi = solve_wave(p, basis_margin(p, K, order));
  std::vector<WavePair> pos(K + 1), neg(K + 1);
  pos[0] = neg[0] = psi;
  // the two chains are independent
  parallel_for(2, [&](size_t which) {
    for (long k = 1; k <= K; ++k) {
      if (which == 0)
        pos[k] = GR::i() * apply_a(p, pos[k - 1]);
      else
        neg[k] = (GR(-2) * GR::i() / GR(2 * (k - 1) + 1)) * apply_c(p, neg[k - 1]);
    }
  });
  auto cut = [&](const WavePair& v, long k) {
    require_window(v, order, ("Psi_" + std::to_string(k)).c_str());
    return WavePair{v.c1.truncated(-order), v.c2.truncated(-order)};
  };
  for (long k = 0; k <= K; ++k) {
    B.psis[k] = cut(pos[k], k);
    if (k > 0) B.psis[-k] = cut(neg[k], -k);
  }
  for (long k = 1; k <= K; ++k) B.phis.push_back({Laurent(), Laurent::monomial(2 * k - 1, 1)});
  return B;
}

}  // namespace dntau
