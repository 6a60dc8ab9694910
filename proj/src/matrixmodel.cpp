#include "dntau/matrixmodel.hpp"

#include <boost/math/constants/constants.hpp>
#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/multiprecision/mpfr.hpp>
#include <cmath>
#include <complex>

#include "dntau/asymptotics.hpp"
#include "dntau/pfaffian.hpp"

namespace dntau {

namespace mp = boost::multiprecision;
namespace quad = boost::math::quadrature;

namespace {

using Mat = std::vector<std::vector<SparseSeries>>;

SparseSeries det_of(const Mat& M, const SpacePtr& sp) {
  return det_laplace(M, SparseSeries(sp), SparseSeries::constant(sp, 1));
}

// X (x) I + s * I (x) Y for diagonal X, Y given as series.
Mat kronecker_sum(const std::vector<SparseSeries>& X, const std::vector<SparseSeries>& Y, int s, const SpacePtr& sp) {
  size_t n = X.size(), m = Y.size();
  Mat M(n * m, std::vector<SparseSeries>(n * m, SparseSeries(sp)));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < m; ++j) {
      size_t r = i * m + j;
      // (X (x) I)_{(i,j),(i',j')} = X_{ii'} d_{jj'};  (I (x) Y) = d_{ii'} Y_{jj'}
      for (size_t i2 = 0; i2 < n; ++i2)
        for (size_t j2 = 0; j2 < m; ++j2) {
          size_t c = i2 * m + j2;
          SparseSeries e(sp);
          if (j == j2 && i == i2) e += X[i];
          if (i == i2 && j == j2) e += GR(s) * Y[j];
          M[r][c] = e;
        }
    }
  return M;
}

}  // namespace

CheckReport verify_det_identities(int N) {
  if (N < 1 || N > 3) throw std::invalid_argument("verify_det_identities supports N <= 3");
  std::vector<std::string> names;
  for (int i = 1; i <= N; ++i) names.push_back("x" + std::to_string(i));
  for (int i = 1; i <= N; ++i) names.push_back("y" + std::to_string(i));
  SpacePtr sp = Space::polynomial(names);
  std::vector<SparseSeries> X, Y;
  for (int i = 0; i < N; ++i) {
    X.push_back(SparseSeries::variable(sp, names[i]));
    Y.push_back(SparseSeries::variable(sp, names[N + i]));
  }
  CheckReport r;
  r.check = "det_identities";
  r.data["N"] = N;
  SparseSeries lhs = det_of(kronecker_sum(X, X, 1, sp), sp);
  SparseSeries rhs = SparseSeries::constant(sp, 1);
  for (int i = 0; i < N; ++i) rhs *= GR(2) * X[i];
  for (int i = 0; i < N; ++i)
    for (int j = i + 1; j < N; ++j) rhs *= (X[i] + X[j]).pow(2);
  bool kron = lhs == rhs;
  r.data["kronecker_sum"] = kron;
  r.data["kronecker_sum_terms"] = lhs.size();
  // S(X,Y) through numerator and denominator determinants
  SparseSeries num = det_of(kronecker_sum(X, Y, -1, sp), sp), den = det_of(kronecker_sum(X, Y, 1, sp), sp);
  SparseSeries pn = SparseSeries::constant(sp, 1), pd = SparseSeries::constant(sp, 1);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      pn *= X[i] - Y[j];
      pd *= X[i] + Y[j];
    }
  bool S = num * pd == pn * den;
  r.data["interaction"] = S;
  r.pass = kron && S;
  return r;
}

double hciz_quadrature(const std::vector<double>& A, const std::vector<double>& B) {
  if (A.size() != B.size() || A.empty() || A.size() > 2) throw std::invalid_argument("HCIZ quadrature needs N = 1 or 2");
  if (A.size() == 1) return std::exp(-A[0] * B[0]);
  // U = e^{i phi} [[e^{i al} cos t, e^{i be} sin t], [-e^{-i be} sin t, e^{-i al} cos t]];
  // Haar measure in t is sin(2t) dt on [0, pi/2]; the phases drop out of the trace.
  const double al = 0.3, be = 1.1, ph = 0.7;
  auto f = [&](double t) {
    using C = std::complex<double>;
    const C I(0, 1);
    C u[2][2] = {{std::exp(I * (ph + al)) * std::cos(t), std::exp(I * (ph + be)) * std::sin(t)},
                 {-std::exp(I * (ph - be)) * std::sin(t), std::exp(I * (ph - al)) * std::cos(t)}};
    C tr = 0;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) tr += u[i][j] * A[j] * std::conj(u[i][j]) * B[i];
    return std::exp(-tr.real()) * std::sin(2 * t);
  };
  double err = 0;
  return quad::gauss_kronrod<double, 61>::integrate(f, 0.0, boost::math::constants::half_pi<double>(), 15, 1e-15,
                                                    &err);
}

double hciz_determinant_ratio(const std::vector<double>& A, const std::vector<double>& B) {
  if (A.size() == 1) return std::exp(-A[0] * B[0]);
  double det = std::exp(-A[0] * B[0] - A[1] * B[1]) - std::exp(-A[0] * B[1] - A[1] * B[0]);
  double da = A[1] - A[0], db = B[1] - B[0];
  if (da == 0 || db == 0) throw std::invalid_argument("HCIZ formula needs distinct eigenvalues");
  return det / (da * db);
}

CheckReport verify_hciz(int N, const std::vector<double>& A, const std::vector<double>& B, double rel_tol) {
  if (static_cast<int>(A.size()) != N || static_cast<int>(B.size()) != N)
    throw std::invalid_argument("eigenvalue lists must have N entries");
  CheckReport r;
  r.check = "hciz";
  r.data["N"] = N;
  r.data["tolerance"] = rel_tol;
  std::vector<double> ca = N == 1 ? std::vector<double>{0.5} : std::vector<double>{0.5, 1.5};
  std::vector<double> cb = N == 1 ? std::vector<double>{1.0} : std::vector<double>{1.0, 2.0};
  double C = hciz_quadrature(ca, cb) / hciz_determinant_ratio(ca, cb);
  double q = hciz_quadrature(A, B), f = C * hciz_determinant_ratio(A, B);
  double qs = hciz_quadrature(B, A);
  double rel = std::abs(q - f) / std::abs(f);
  double rel_swap = std::abs(q - qs) / std::abs(q);
  r.data["fitted_constant"] = C;
  r.data["quadrature"] = q;
  r.data["formula"] = f;
  r.data["relative_error"] = rel;
  r.data["swap_relative_difference"] = rel_swap;
  r.pass = rel <= rel_tol && rel_swap <= rel_tol;
  return r;
}

namespace {

template <class T>
T watson_integral(int h, long k, const T& z) {
  // y = v^2: 2 * integral_0^inf v^{2k} exp(-z^2 v^2 - v^{2h+2}/(h+1)) dv
  quad::exp_sinh<T> integrator;
  auto f = [&](const T& v) -> T {
    if (v == 0) return k == 0 ? T(2) : T(0);
    T l = mp::log(v * v);
    if (!mp::isfinite(l)) return T(0);
    // in log form so that huge abscissas underflow to 0 instead of inf * 0
    return 2 * mp::exp(k * l - z * z * mp::exp(l) - mp::exp((h + 1) * l) / (h + 1));
  };
  T tol = mp::pow(T(2), -static_cast<int>(std::numeric_limits<T>::digits) + 8);
  return integrator.integrate(f, tol);
}

}  // namespace

BigComplex watson_quadrature(const WatsonTask& t) {
  if (t.h % 4 != 2) throw std::invalid_argument("Watson quadrature converges only for h = 2 mod 4");
  if (t.k < 0) throw std::invalid_argument("Watson quadrature needs k >= 0");
  if (!(t.z > 0)) throw std::invalid_argument("z must be real positive");
  PrecisionScope s(t.bits);
  BigFloat val;
  if (t.bits <= 160) {
    using T = mp::mpfr_float_50;
    T z = t.z;
    T v = watson_integral<T>(t.h, t.k, z) * z / mp::sqrt(boost::math::constants::pi<T>());
    val = BigFloat(v.str());
  } else {
    using T = mp::number<mp::mpfr_float_backend<100>>;
    T z = t.z;
    T v = watson_integral<T>(t.h, t.k, z) * z / mp::sqrt(boost::math::constants::pi<T>());
    val = BigFloat(v.str());
  }
  // (-i)^k
  BigComplex phase(i_pow(-t.k), t.bits);
  return phase * BigComplex(val, BigFloat(0), t.bits);
}

std::pair<BigComplex, BigComplex> watson_partial_sum(const WatsonTask& t, int n_terms) {
  Params p((t.h + 2) / 2);
  long order = 2 * t.k + 2 * (p.h + 1) * (n_terms + 1);
  Laurent s = expand_1d(2, t.k, p, order);
  std::vector<std::pair<long, GR>> terms;
  s.for_each([&](long n, const GR& c) { terms.emplace_back(n, c); });
  if (static_cast<int>(terms.size()) <= n_terms) throw std::logic_error("not enough terms for the partial sum");
  BigComplex z(t.z, 0.0, t.bits), sum(t.bits);
  for (int i = 0; i < n_terms; ++i) sum += BigComplex(terms[i].second, t.bits) * pow(z, terms[i].first);
  BigComplex next = BigComplex(terms[n_terms].second, t.bits) * pow(z, terms[n_terms].first);
  return {sum, next};
}

CheckReport quadrature_vs_asymptotics(const WatsonTask& t, int n_terms) {
  CheckReport r;
  r.check = "quadrature";
  BigComplex q = watson_quadrature(t);
  auto [ps, next] = watson_partial_sum(t, n_terms);
  BigFloat diff = (q - ps).abs(), bound = 2 * next.abs();
  r.data["h"] = t.h;
  r.data["k"] = t.k;
  r.data["z"] = t.z;
  r.data["terms"] = n_terms;
  r.data["bits"] = t.bits;
  r.data["quadrature"] = q.to_string(25);
  r.data["partial_sum"] = ps.to_string(25);
  r.data["difference"] = diff.convert_to<double>();
  r.data["bound"] = bound.convert_to<double>();
  r.pass = diff <= bound;
  return r;
}

double int_sing_quadrature(double z, double w) {
  // x = a^2, y = b^2: (2zw/pi) * double integral over (R_+)^2 of (a^2-b^2)/(a^2+b^2) e^{-w^2 a^2 - z^2 b^2}
  quad::exp_sinh<double> outer, inner;
  auto fa = [&](double a) {
    auto fb = [&](double b) {
      double a2 = a * a, b2 = b * b;
      if (a2 + b2 == 0) return 0.0;
      return (a2 - b2) / (a2 + b2) * std::exp(-w * w * a2 - z * z * b2);
    };
    return inner.integrate(fb, 1e-14);
  };
  return 2 * z * w / boost::math::constants::pi<double>() * outer.integrate(fa, 1e-13);
}

CheckReport verify_int_sing(double z, double w, double tol) {
  CheckReport r;
  r.check = "int_sing";
  double q = int_sing_quadrature(z, w), exact = 0.5 * (z - w) / (z + w);
  r.data["z"] = z;
  r.data["w"] = w;
  r.data["quadrature"] = q;
  r.data["closed_form"] = exact;
  r.data["abs_error"] = std::abs(q - exact);
  r.data["tolerance"] = tol;
  r.pass = std::abs(q - exact) <= tol;
  return r;
}

double gaussian_double_moment_quadrature(long k, long l) {
  quad::exp_sinh<double> e;
  auto one = [&](long n) {
    return 2 * e.integrate(
                   [&](double x) {
                     if (!(x > 0) || !std::isfinite(x)) return n == 0 && x == 0 ? 1.0 : 0.0;
                     return std::exp(2 * n * std::log(x) - x * x);
                   },
                   1e-14);
  };
  return one(k) * one(l) / (2 * boost::math::constants::pi<double>());
}

nlohmann::json normalization_report(const Params& p, const MiwaConfig& cfg) {
  const int h = p.h;
  std::vector<std::string> names;
  for (auto& n : cfg.block_names(1)) names.push_back("z" + n.substr(1));
  for (auto& n : cfg.block_names(2)) names.push_back("z" + n.substr(1));
  SpacePtr sp = Space::polynomial(names.empty() ? std::vector<std::string>{"z"} : names);
  SparseSeries num = SparseSeries::constant(sp, 1), den = SparseSeries::constant(sp, 1);
  auto block = [&](int a, int off, int n) {
    int power = a == 1 ? h : 2;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        SparseSeries zi = SparseSeries::variable(sp, names[off + i]), zj = SparseSeries::variable(sp, names[off + j]);
        num *= zi - zj;                              // Delta*
        den *= zi + zj;                              // Delta*
        den *= zj.pow(power) - zi.pow(power);        // Delta(Z^{h_a})
      }
    for (int i = 0; i < n; ++i) den *= SparseSeries::variable(sp, names[off + i]).pow(a == 1 ? h / 2 : 1);
  };
  block(1, 0, cfg.N1);
  block(2, cfg.N1, cfg.N2);
  auto degree = [](const SparseSeries& s) {
    long d = -1;
    for (auto& [m, c] : s.terms()) {
      long e = 0;
      for (auto x : m) e += x;
      d = std::max(d, e);
    }
    return d;
  };
  long expected = -(static_cast<long>(h) * cfg.N1 * (cfg.N1 - 1) / 2 + static_cast<long>(cfg.N2) * (cfg.N2 - 1) +
                    static_cast<long>(h / 2) * cfg.N1 + cfg.N2);
  nlohmann::json j;
  j["constant"] = "C(h,N1,N2) (undetermined)";
  j["h"] = h;
  j["N1"] = cfg.N1;
  j["N2"] = cfg.N2;
  j["numerator"] = num.to_string();
  j["denominator"] = den.to_string();
  j["degree"] = degree(num) - degree(den);
  j["expected_degree"] = expected;
  j["degree_check"] = degree(num) - degree(den) == expected;
  return j;
}

}  // namespace dntau
