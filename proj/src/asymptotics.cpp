#include "dntau/asymptotics.hpp"

#include <algorithm>

namespace dntau {

namespace {

// (1+x)^r for a monomial x, kept to whatever the space admits.
SparseSeries binomial_series(const SpacePtr& sp, const Mono& x, const mpq_class& r) {
  SparseSeries out(sp);
  Mono m = mono_zero();
  for (long j = 0;; ++j) {
    if (!sp->admits(m)) break;
    mpq_class c = binomial(r, j);
    if (c == 0) break;
    out += SparseSeries::monomial(sp, m, GR(c));
    for (size_t v = 0; v < sp->nvars(); ++v) m[v] = static_cast<int16_t>(m[v] + x[v]);
  }
  return out;
}

// exp(sum_{j>=3} C(h+1,j) s^j e^{j-2}) for the Gaussian variable s and its scale e.
SparseSeries cubic_exponential(const SpacePtr& sp, int s, int e, int h) {
  SparseSeries r(sp);
  for (int j = 3; j <= h + 1; ++j) {
    Mono m = mono_unit(s, j);
    m[e] = static_cast<int16_t>(j - 2);
    r += SparseSeries::monomial(sp, m, GR(binomial(h + 1, j)));
  }
  return exp(r);
}

// Apply the normalized Gaussian moment map to variable s: s^{2n} -> (2n-1)!!/(-h(h+1))^n.
SparseSeries gaussian_moments(const SparseSeries& f, int s, int h) {
  mpq_class base(-h * (h + 1));
  return f.map_terms([&](const Mono& m, const GR& c) -> std::pair<Mono, GR> {
    if (m[s] % 2) return {m, GR(0)};
    long n = m[s] / 2;
    Mono r = m;
    r[s] = 0;
    mpq_class q = dfact(n);
    for (long i = 0; i < n; ++i) q /= base;
    return {r, c * GR(q)};
  });
}

// Watson moments for y with weight e^{-w^2 y} y^{-1/2}: y^q -> (2q-1)!!/2^q uw^{2q}.
SparseSeries watson_moments(const SparseSeries& f, int y, int uw) {
  return f.map_terms([&](const Mono& m, const GR& c) -> std::pair<Mono, GR> {
    long q = m[y];
    Mono r = m;
    r[y] = 0;
    r[uw] = static_cast<int16_t>(r[uw] + 2 * q);
    mpq_class k = dfact(q);
    mpz_class two = mpz_class(1) << q;
    return {r, c * GR(k / mpq_class(two))};
  });
}

// e^{2a} -> (-i(h+1))^a u^{(h+1)a}; odd powers of e must be absent.
SparseSeries scale_to_u(const SparseSeries& f, int e, int u, int h) {
  GR step = GR(0, -(h + 1));
  return f.map_terms([&](const Mono& m, const GR& c) -> std::pair<Mono, GR> {
    if (m[e] % 2) throw SeriesError("odd power of the Gaussian scale survived the moment map");
    long a = m[e] / 2;
    Mono r = m;
    r[e] = 0;
    r[u] = static_cast<int16_t>(r[u] + (h + 1) * a);
    return {r, c * step.pow(a)};
  });
}

LinearBound single(size_t n, size_t v, long b) {
  std::vector<int> c(n, 0);
  c[v] = 1;
  return {c, b};
}

}  // namespace

nlohmann::json SaddleData::to_json() const {
  nlohmann::json j;
  j["h"] = h;
  for (int a = 0; a < 2; ++a) {
    nlohmann::json c;
    c["xi"] = xi[a].get_str();
    c["u"] = u[a].get_str();
    c["c_squared"] = c_sq[a].get_str();
    j["component" + std::to_string(a + 1)] = c;
  }
  return j;
}

SaddleData saddle_data(const Params& p) {
  SaddleData s;
  s.h = p.h;
  s.xi[0] = 1;
  s.xi[1] = 0;
  s.u[0] = -p.h;
  s.u[1] = 0;
  s.c_sq[0] = -2 * p.h * (p.h + 1);
  s.c_sq[1] = p.h + 1;
  return s;
}

CheckReport verify_saddle(const Params& p) {
  SaddleData s = saddle_data(p);
  const int h = p.h;
  // f, f' and f''/2 at x
  auto f = [&](const mpq_class& x) -> mpq_class {
    mpq_class r = 1;
    for (int i = 0; i < 2 * h + 2; ++i) r *= x;
    return r - (h + 1) * x * x;
  };
  auto df = [&](const mpq_class& x) -> mpq_class {
    mpq_class r = 2 * h + 2;
    for (int i = 0; i < 2 * h + 1; ++i) r *= x;
    return r - 2 * (h + 1) * x;
  };
  auto half_d2f = [&](const mpq_class& x) -> mpq_class {
    mpq_class r = (h + 1) * (2 * h + 1);
    for (int i = 0; i < 2 * h; ++i) r *= x;
    return r - (h + 1);
  };
  CheckReport r;
  r.check = "saddle";
  r.pass = true;
  for (int a = 0; a < 2; ++a) {
    bool ok = df(s.xi[a]) == 0 && f(s.xi[a]) == s.u[a] && half_d2f(s.xi[a]) == -s.c_sq[a];
    r.data["component" + std::to_string(a + 1)] = ok;
    r.pass = r.pass && ok;
  }
  r.data["h"] = h;
  return r;
}

Laurent expand_1d(int a, long k, const Params& p, long order) {
  const int h = p.h;
  Laurent out(-order);
  if (a == 2) {
    // sum_n (-i)^k (i^h/(h+1))^n/n! (2q-1)!!/2^q z^{-2q}, q = k + n(h+1)
    GR base = i_pow(h) * GR(mpq_class(1, h + 1));
    for (long n = 0;; ++n) {
      long q = k + n * (h + 1);
      if (-2 * q < -order) break;
      mpq_class c = dfact(q) / factorial(n);
      if (q >= 0)
        c /= mpq_class(mpz_class(1) << q);
      else
        c *= mpq_class(mpz_class(1) << -q);
      out.add(-2 * q, i_pow(-k) * base.pow(n) * GR(c));
    }
    return out;
  }
  if (a != 1) throw std::invalid_argument("component must be 1 or 2");
  if (k < -order) return out;
  // y = iz(1 + s), s = sigma*eps, eps^2 = 1/Lambda
  long E = 2 * ((order + k) / (h + 1));
  auto sp = std::make_shared<Space>(std::vector<Variable>{{"sigma", 1}, {"eps", 1}, {"u", 1}},
                                    std::vector<LinearBound>{single(3, 1, E)});
  Mono x = mono_unit(0);
  x[1] = 1;
  SparseSeries f = binomial_series(sp, x, mpq_class(2 * k - 1, 2)) * cubic_exponential(sp, 0, 1, h);
  SparseSeries g = scale_to_u(gaussian_moments(f, 0, h), 1, 2, h);
  for (auto& [m, c] : g.terms()) {
    long e = k - m[2];
    if (e >= -order) out.add(e, c);
  }
  return out;
}

mpq_class gaussian_double_moment(long k, long l) {
  mpq_class r = dfact(k) * dfact(l);
  r /= mpq_class(mpz_class(1) << (k + l + 1));
  return r;
}

SparseSeries int_sing_series(long T) {
  SpacePtr rs = twopoint_region_space(T);
  return GR::frac(1, 2) * kernel_series(rs);
}

TwoPoint expand_2d(int a, int b, const Params& p, long T) {
  const int h = p.h;
  if (a > b) throw std::invalid_argument("expand_2d expects a <= b");
  TwoPoint out;
  out.a = a;
  out.b = b;
  out.window = T;
  out.convention = "integral representation, kernel (x-y)/(x+y)";
  SpacePtr ts = twopoint_space(T);
  long E = 2 * (T / (h + 1));

  if (a == 1 && b == 1) {
    // vars: sigma, tau, ez, ew, rho
    std::vector<LinearBound> bd{single(5, 2, E), single(5, 3, E), single(5, 4, T), {{0, 0, 1, 1, 1}, 2 * E + T}};
    auto sp = std::make_shared<Space>(
        std::vector<Variable>{{"sigma", 1}, {"tau", 1}, {"ez", 1}, {"ew", 1}, {"rho", 1}}, bd);
    auto mono = [&](std::initializer_list<std::pair<int, int>> l) {
      Mono m = mono_zero();
      for (auto [v, e] : l) m[v] = static_cast<int16_t>(e);
      return m;
    };
    SparseSeries s = SparseSeries::monomial(sp, mono({{0, 1}, {2, 1}}), 1);
    SparseSeries t_rho = SparseSeries::monomial(sp, mono({{1, 1}, {3, 1}, {4, 1}}), 1);
    SparseSeries rho = SparseSeries::monomial(sp, mono({{4, 1}}), 1);
    SparseSeries one = SparseSeries::constant(sp, 1);
    SparseSeries K = (one - rho + s - t_rho) * invert_unit(one + rho + s + t_rho);
    SparseSeries meas = binomial_series(sp, mono({{0, 1}, {2, 1}}), mpq_class(-1, 2)) *
                        binomial_series(sp, mono({{1, 1}, {3, 1}}), mpq_class(-1, 2)) *
                        cubic_exponential(sp, 0, 2, h) * cubic_exponential(sp, 1, 3, h);
    SparseSeries g = gaussian_moments(gaussian_moments(K * meas, 0, h), 1, h);
    // map to (uz, uw) in the region ring: ez^{2a} ew^{2b} rho^m -> c uz^{(h+1)a+m} uw^{(h+1)b-m}
    SpacePtr rs = twopoint_region_space(T);
    GR step = GR(0, -(h + 1));
    TermAccumulator acc(rs);
    for (auto& [m, c] : g.terms()) {
      if (m[2] % 2 || m[3] % 2) throw SeriesError("odd Gaussian scale power in the (1,1) expansion");
      long az = m[2] / 2, aw = m[3] / 2;
      Mono r = mono_zero();
      r[0] = static_cast<int16_t>((h + 1) * az + m[4]);
      r[1] = static_cast<int16_t>((h + 1) * aw - m[4]);
      acc.add(r, GR::frac(1, 2) * c * step.pow(az + aw));
    }
    SparseSeries full = acc.finish();
    out.kernel_multiple = GR::frac(1, 2);
    SparseSeries rest = full - GR::frac(1, 2) * kernel_series(rs);
    std::vector<int> map{0, 1};
    for (auto& [m, c] : rest.terms())
      if (m[0] < 0 || m[1] < 0) throw SeriesError("(1,1) expansion left a non-regular remainder");
    out.regular = rest.embed(ts, map);
    out.region = "|z|>|w|";
    return out;
  }

  if (a == 1 && b == 2) {
    // vars: sigma, ez, y, uz, uw
    long Q = T / 2;
    std::vector<LinearBound> bd{single(5, 1, E), single(5, 2, Q), single(5, 3, T), {{0, 1, 1, 1, 0}, E + Q + T}};
    auto sp = std::make_shared<Space>(
        std::vector<Variable>{{"sigma", 1}, {"ez", 1}, {"y", 1}, {"uz", 1}, {"uw", 1}}, bd);
    Mono s = mono_unit(0);
    s[1] = 1;
    SparseSeries one = SparseSeries::constant(sp, 1);
    // y/x = -i y uz (1+s)^{-1}
    Mono yu = mono_unit(2);
    yu[3] = 1;
    SparseSeries ratio = SparseSeries::monomial(sp, yu, -GR::i()) * binomial_series(sp, s, -1);
    SparseSeries K = (one - ratio) * invert_unit(one + ratio);
    SparseSeries wexp = exp(SparseSeries::monomial(sp, mono_unit(2, h + 1), i_pow(h) * GR(mpq_class(1, h + 1))));
    SparseSeries meas = binomial_series(sp, s, mpq_class(-1, 2)) * cubic_exponential(sp, 0, 1, h) * wexp;
    SparseSeries g = scale_to_u(gaussian_moments(K * meas, 0, h), 1, 3, h);
    g = watson_moments(g, 2, 4);
    SparseSeries reg = GR::frac(1, 2) * g;
    out.kernel_multiple = 0;
    TermAccumulator acc(ts);
    for (auto& [m, c] : reg.terms()) {
      Mono r = mono_zero();
      r[0] = m[3];
      r[1] = m[4];
      acc.add(r, c);
    }
    out.regular = acc.finish();
    return out;
  }

  if (a == 2 && b == 2) {
    // polynomial part in (x, y) after dividing x^{h+1}+y^{h+1} by x+y
    auto ps = Space::polynomial({"x", "y"});
    SparseSeries x = SparseSeries::variable(ps, "x"), y = SparseSeries::variable(ps, "y");
    SparseSeries P = x.pow(h + 1) + y.pow(h + 1);
    SparseSeries q(ps);
    for (int j = 0; j <= h; ++j) q += SparseSeries::monomial(ps, [&] {
      Mono m = mono_zero();
      m[0] = static_cast<int16_t>(h - j);
      m[1] = static_cast<int16_t>(j);
      return m;
    }(), GR(j % 2 ? -1 : 1));
    if (!(q * (x + y) == P)) throw SeriesError("x^{h+1}+y^{h+1} is not divisible by x+y");
    // sum_{n>=1} c^n/n! P^{n-1}, stopping once x-degree alone exceeds the window
    GR c = i_pow(h) * GR(mpq_class(1, h + 1));
    long nmax = T / (h + 1) + 1;
    SparseSeries S(ps), Pn = SparseSeries::constant(ps, 1);
    for (long n = 1; n <= nmax; ++n) {
      S += GR(mpq_class(1) / factorial(n)) * c.pow(n) * Pn;
      Pn = Pn * P;
    }
    SparseSeries integrand = (x - y) * q * S;
    TermAccumulator acc(ts);
    for (auto& [m, cc] : integrand.terms()) {
      long px = m[0], py = m[1];
      Mono r = mono_zero();
      r[0] = static_cast<int16_t>(2 * px);
      r[1] = static_cast<int16_t>(2 * py);
      if (!ts->admits(r)) continue;
      mpq_class mom = dfact(px) * dfact(py) / mpq_class(mpz_class(1) << (px + py));
      acc.add(r, GR::frac(-1, 2) * cc * GR(mom));
    }
    out.kernel_multiple = GR::frac(1, 2);
    out.regular = acc.finish();
    return out;
  }
  throw std::invalid_argument("expand_2d: unknown pair");
}

CheckReport verify_double_integrals(const Params& p, long orders, long kmax) {
  CheckReport r;
  r.check = "double_integrals";
  r.pass = true;
  r.data["h"] = p.h;
  r.data["orders"] = orders;
  long T = orders * (p.h + 1);
  r.data["window"] = T;
  GrBasis B = build_basis(p, T, T);
  for (auto [a, b] : {std::pair{1, 1}, std::pair{1, 2}, std::pair{2, 2}}) {
    TwoPoint e = expand_2d(a, b, p, T);
    TwoPoint t = build_twopoint(B, a, b, T, T);
    long w = std::min(e.window, t.window);
    SpacePtr ws = twopoint_space(w);
    bool ok = e.kernel_multiple == t.kernel_multiple && e.regular.truncated(ws) == t.regular.truncated(ws);
    std::string key = "pair" + std::to_string(a) + std::to_string(b);
    r.data[key] = ok;
    if (!ok) {
      SparseSeries d = e.regular.truncated(ws) - t.regular.truncated(ws);
      if (!d.is_zero()) r.data[key + "_first_difference"] = d.terms().front().second.to_string();
    }
    r.pass = r.pass && ok;
  }
  bool one_d = true;
  for (long k = -kmax; k <= kmax; ++k)
    for (int a = 1; a <= 2; ++a) {
      Laurent e = expand_1d(a, k, p, T);
      if (!e.agrees(B.psi(k).comp(a), -T)) {
        one_d = false;
        r.data["expand_1d_mismatch"] = "a=" + std::to_string(a) + " k=" + std::to_string(k) + ": " +
                                       e.first_difference(B.psi(k).comp(a), -T);
      }
    }
  r.data["expand_1d"] = one_d;
  r.pass = r.pass && one_d;
  return r;
}

SparseSeries ip_series(int a, long p, const Params& par, long B) {
  const int h = par.h;
  // mu = 1/lambda on the lattice 1/2; exponent numerators <= B
  auto sp = std::make_shared<Space>(std::vector<Variable>{{"mu", 2}}, std::vector<LinearBound>{{{1}, B}});
  SparseSeries out(sp);
  if (a == 2) {
    // lambda^{-p-nh-1/2} (2q-1)!!/(2(h+1))^q/n!, q = p + n(h+1)
    for (long n = 0;; ++n) {
      long q = p + n * (h + 1);
      long num = 2 * (p + n * h) + 1;
      if (num > B) break;
      mpq_class c = dfact(q) / factorial(n);
      mpq_class base(2 * (h + 1));
      if (q >= 0)
        for (long i = 0; i < q; ++i) c /= base;
      else
        for (long i = 0; i < -q; ++i) c *= base;
      out += SparseSeries::monomial(sp, mono_unit(0, static_cast<int>(num)), GR(c));
    }
    return out;
  }
  // a = 1: expansion at x = 1 + s with F(s) = f(1+s) + h, Gaussian coefficient 2h(h+1)
  long E = std::max<long>(0, (B - 1) / 2) * 2;
  auto gs = std::make_shared<Space>(std::vector<Variable>{{"sigma", 1}, {"eps", 1}},
                                    std::vector<LinearBound>{single(2, 1, E)});
  // coefficients of F beyond the quadratic
  SparseSeries cubic(gs);
  for (int j = 3; j <= 2 * h + 2; ++j) {
    mpq_class Fj = binomial(2 * h + 2, j);
    Mono m = mono_unit(0, j);
    m[1] = static_cast<int16_t>(j - 2);
    cubic += SparseSeries::monomial(gs, m, GR(Fj));
  }
  Mono x = mono_unit(0);
  x[1] = 1;
  SparseSeries f = binomial_series(gs, x, mpq_class(2 * p)) * exp(cubic);
  // <sigma^{2n}> = (2n-1)!!/(-4h(h+1))^n
  mpq_class base(-4 * h * (h + 1));
  for (auto& [m, c] : f.terms()) {
    if (m[0] % 2) continue;
    long n = m[0] / 2;
    mpq_class q = dfact(n);
    for (long i = 0; i < n; ++i) q /= base;
    if (m[1] % 2) throw SeriesError("odd Gaussian scale power in I_p");
    long num = m[1] + 1;  // eps^{2j} lambda^{-1/2} = mu^{j + 1/2}
    if (num > B) continue;
    out += SparseSeries::monomial(sp, mono_unit(0, static_cast<int>(num)), c * GR(q));
  }
  return out;
}

CheckReport verify_Ip_relation(int a, long p_lo, long p_hi, const Params& par, long order) {
  const int h = par.h;
  CheckReport r;
  r.check = "ip";
  r.pass = true;
  r.data["a"] = a;
  r.data["h"] = h;
  r.data["p_range"] = {p_lo, p_hi};
  long B = 2 * order + 1;
  auto lam_d = [](const SparseSeries& s) {
    // lambda d/dlambda mu^{e/2} = -(e/2) mu^{e/2}
    return s.map_terms([](const Mono& m, const GR& c) -> std::pair<Mono, GR> {
      return {m, c * GR::frac(-m[0], 2)};
    });
  };
  auto sp_win = std::make_shared<Space>(std::vector<Variable>{{"mu", 2}}, std::vector<LinearBound>{{{1}, B - 2}});
  for (long p = p_lo; p <= p_hi; ++p) {
    SparseSeries Ip = ip_series(a, p, par, B), Ip1 = ip_series(a, p + 1, par, B);
    SparseSeries lhs = lam_d(Ip) + GR::frac(2 * p + 1, 2 * h + 2) * Ip;
    SparseSeries rhs = Ip1.shifted(mono_unit(0, -2), GR(-h));
    if (a == 1) lhs = lhs - Ip.shifted(mono_unit(0, -2), GR(h));
    bool ok = lhs.truncated(sp_win) == rhs.truncated(sp_win);
    r.data["p" + std::to_string(p)] = ok;
    r.pass = r.pass && ok;
  }
  r.data["window_mu_exponent"] = GR::frac(B - 2, 2).to_string();
  return r;
}

}  // namespace dntau
