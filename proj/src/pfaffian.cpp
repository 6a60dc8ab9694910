#include "dntau/pfaffian.hpp"

#include <memory>
#include <random>

namespace dntau {

GR det_gauss(std::vector<std::vector<GR>> A) {
  const size_t n = A.size();
  GR det = 1;
  for (size_t c = 0; c < n; ++c) {
    size_t piv = c;
    while (piv < n && A[piv][c].is_zero()) ++piv;
    if (piv == n) return 0;
    if (piv != c) {
      std::swap(A[piv], A[c]);
      det = -det;
    }
    det *= A[c][c];
    GR inv = GR(1) / A[c][c];
    for (size_t r = c + 1; r < n; ++r) {
      if (A[r][c].is_zero()) continue;
      GR f = A[r][c] * inv;
      for (size_t k = c; k < n; ++k) A[r][k] -= f * A[c][k];
    }
  }
  return det;
}

namespace {

// Numerator polynomial over a product of known linear factors, the factors
// identified by index into a shared table.
struct FactoredFraction {
  std::shared_ptr<const std::vector<SparseSeries>> table;
  SparseSeries num;
  std::vector<int> den;

  SparseSeries factor_power(const std::vector<int>& e) const {
    SparseSeries r = SparseSeries::constant(num.space(), 1);
    for (size_t k = 0; k < e.size(); ++k)
      for (int j = 0; j < e[k]; ++j) r = r * (*table)[k];
    return r;
  }
  FactoredFraction combine(const FactoredFraction& o, bool sub) const {
    std::vector<int> l(den.size());
    std::vector<int> ea(den.size()), eb(den.size());
    for (size_t k = 0; k < den.size(); ++k) {
      l[k] = std::max(den[k], o.den[k]);
      ea[k] = l[k] - den[k];
      eb[k] = l[k] - o.den[k];
    }
    SparseSeries a = num * factor_power(ea), b = o.num * factor_power(eb);
    return {table, sub ? a - b : a + b, l};
  }
  friend FactoredFraction operator+(const FactoredFraction& a, const FactoredFraction& b) { return a.combine(b, false); }
  friend FactoredFraction operator-(const FactoredFraction& a, const FactoredFraction& b) { return a.combine(b, true); }
  friend FactoredFraction operator*(const FactoredFraction& a, const FactoredFraction& b) {
    std::vector<int> d(a.den.size());
    for (size_t k = 0; k < d.size(); ++k) d[k] = a.den[k] + b.den[k];
    return {a.table, a.num * b.num, d};
  }
  FactoredFraction operator-() const { return {table, -num, den}; }
};

}  // namespace

IdentityReport verify_schur_pfaffian(int n) {
  IdentityReport rep{"schur_pfaffian_n" + std::to_string(n), false, {}};
  if (n < 1 || n > 3) throw std::invalid_argument("verify_schur_pfaffian supports 1 <= n <= 3");
  const int m = 2 * n;
  std::vector<std::string> names;
  for (int i = 1; i <= m; ++i) names.push_back("x" + std::to_string(i));
  SpacePtr sp = Space::polynomial(names);
  auto X = [&](int i) { return SparseSeries::variable(sp, names[i]); };
  auto table = std::make_shared<std::vector<SparseSeries>>();
  std::vector<std::vector<int>> id(m, std::vector<int>(m, -1));
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      id[i][j] = static_cast<int>(table->size());
      table->push_back(X(i) + X(j));
    }
  const size_t nf = table->size();
  FactoredFraction zero{table, SparseSeries(sp), std::vector<int>(nf, 0)};
  FactoredFraction one{table, SparseSeries::constant(sp, 1), std::vector<int>(nf, 0)};
  SkewMatrix<FactoredFraction> M(m, zero);
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      std::vector<int> d(nf, 0);
      d[id[i][j]] = 1;
      M.set(i, j, FactoredFraction{table, X(i) - X(j), d});
    }
  FactoredFraction pf = pfaffian(M, one);
  SparseSeries rhs = SparseSeries::constant(sp, 1);
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) rhs = rhs * (X(i) - X(j));
  std::vector<int> el(nf), er(nf);
  for (size_t k = 0; k < nf; ++k) {
    int l = std::max(1, pf.den[k]);
    el[k] = l - pf.den[k];
    er[k] = l - 1;
  }
  SparseSeries lhs_cleared = pf.num * pf.factor_power(el);
  SparseSeries rhs_cleared = rhs * pf.factor_power(er);
  rep.pass = lhs_cleared == rhs_cleared;
  rep.detail = "cleared-denominator polynomial with " + std::to_string(rhs_cleared.size()) + " terms";
  return rep;
}

DeBruijnData de_bruijn_example(int two_n, const std::vector<std::vector<GR>>& kernel) {
  DeBruijnData d;
  d.kernel = kernel;
  size_t deg = 0;
  for (auto& row : kernel) deg = std::max(deg, row.size());
  deg = std::max(deg, kernel.size());
  for (int i = 0; i < two_n; ++i) {
    std::vector<GR> phi(i + 1);
    phi[i] = 1;
    d.phis.push_back(phi);
    std::vector<GR> mom;
    for (size_t k = 0; k <= deg + two_n + 2; ++k) mom.push_back(GR::frac(1, static_cast<long>(k) + i + 1));
    d.moments.push_back(mom);
  }
  return d;
}

IdentityReport verify_de_bruijn(const DeBruijnData& d) {
  const size_t m = d.phis.size();
  IdentityReport rep{"de_bruijn_2n" + std::to_string(m), false, {}};
  if (m % 2) throw std::invalid_argument("de Bruijn needs an even number of test functions");
  auto K = [&](size_t a, size_t b) -> GR {
    if (a < d.kernel.size() && b < d.kernel[a].size()) return d.kernel[a][b];
    return 0;
  };
  size_t kd = 0;
  for (auto& row : d.kernel) kd = std::max(kd, row.size());
  kd = std::max(kd, d.kernel.size());
  for (size_t a = 0; a < kd; ++a)
    for (size_t b = 0; b < kd; ++b)
      if (!(K(a, b) == -K(b, a))) throw std::invalid_argument("de Bruijn kernel is not antisymmetric");
  auto ell = [&](size_t i, size_t k) -> GR {
    if (k >= d.moments[i].size()) throw std::out_of_range("moment table too short");
    return d.moments[i][k];
  };
  // ell_i(x^a phi_i)
  auto ellphi = [&](size_t i, size_t a) {
    GR s;
    for (size_t k = 0; k < d.phis[i].size(); ++k)
      if (!d.phis[i][k].is_zero()) s += d.phis[i][k] * ell(i, a + k);
    return s;
  };
  SkewMatrix<GR> A(m, GR());
  for (size_t i = 0; i < m; ++i)
    for (size_t j = i + 1; j < m; ++j) {
      GR s;
      for (size_t a = 0; a < kd; ++a)
        for (size_t b = 0; b < kd; ++b)
          if (!K(a, b).is_zero()) s += K(a, b) * ellphi(i, a) * ellphi(j, b);
      A.set(i, j, s);
    }
  GR lhs = pfaffian(A, GR(1));

  std::vector<std::string> names;
  for (size_t i = 0; i < m; ++i) names.push_back("x" + std::to_string(i + 1));
  SpacePtr sp = Space::polynomial(names);
  SkewMatrix<SparseSeries> R(m, SparseSeries(sp));
  for (size_t i = 0; i < m; ++i)
    for (size_t j = i + 1; j < m; ++j) {
      SparseSeries e(sp);
      for (size_t a = 0; a < kd; ++a)
        for (size_t b = 0; b < kd; ++b)
          if (!K(a, b).is_zero()) {
            Mono mo{};
            mo[i] = static_cast<int16_t>(a);
            mo[j] = static_cast<int16_t>(b);
            e += SparseSeries::monomial(sp, mo, K(a, b));
          }
      R.set(i, j, e);
    }
  SparseSeries pfR = pfaffian(R, SparseSeries::constant(sp, 1));
  for (size_t i = 0; i < m; ++i) {
    SparseSeries phi(sp);
    for (size_t k = 0; k < d.phis[i].size(); ++k) phi += SparseSeries::monomial(sp, mono_unit(i, k), d.phis[i][k]);
    pfR = pfR * phi;
  }
  GR rhs;
  for (auto& [mo, c] : pfR.terms()) {
    GR t = c;
    for (size_t i = 0; i < m; ++i) t *= ell(i, mo[i]);
    rhs += t;
  }
  rep.pass = lhs == rhs;
  rep.detail = "Pf(A) = " + lhs.to_string() + ", iterated functional = " + rhs.to_string();
  return rep;
}

IdentityReport verify_pf_squared(int size, unsigned seed) {
  IdentityReport rep{"pf_squared_size" + std::to_string(size), false, {}};
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> num(-9, 9), den(1, 7);
  SkewMatrix<GR> M(size, GR());
  std::vector<std::vector<GR>> D(size, std::vector<GR>(size));
  for (int i = 0; i < size; ++i)
    for (int j = i + 1; j < size; ++j) {
      mpq_class re(num(rng), den(rng)), im(num(rng), den(rng));
      re.canonicalize();
      im.canonicalize();
      GR c(re, im);
      M.set(i, j, c);
      D[i][j] = c;
      D[j][i] = -c;
    }
  GR pf = pfaffian(M, GR(1));
  GR det = det_gauss(D);
  bool ok = pf * pf == det;
  if (size <= 12) ok = ok && pfaffian_recursive(M, GR(1)) == pf;
  rep.pass = ok;
  rep.detail = "Pf = " + pf.to_string() + ", det = " + det.to_string();
  return rep;
}

}  // namespace dntau
