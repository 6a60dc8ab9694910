#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "dntau/gaussian_rational.hpp"
#include "dntau/parallel.hpp"
#include "dntau/series.hpp"

namespace dntau {

// Skew-symmetric matrix given by its strict upper triangle.
template <class R>
class SkewMatrix {
public:
  SkewMatrix(size_t n, const R& zero) : n_(n), zero_(zero), up_(n * n, zero) {}
  size_t size() const { return n_; }
  void set(size_t i, size_t j, const R& v) {
    if (i == j) throw std::invalid_argument("diagonal of a skew matrix is zero");
    if (i < j)
      up_[i * n_ + j] = v;
    else
      up_[j * n_ + i] = -v;
  }
  // Entry (i, j) for i < j.
  const R& upper(size_t i, size_t j) const { return up_[i * n_ + j]; }
  R at(size_t i, size_t j) const {
    if (i == j) return zero_;
    return i < j ? up_[i * n_ + j] : -up_[j * n_ + i];
  }
  const R& zero() const { return zero_; }

private:
  size_t n_;
  R zero_;
  std::vector<R> up_;
};

struct PfaffianError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Expansion along the largest index of each subset with memoization over the
// reachable index subsets, evaluated layer by layer (deterministic).
template <class R>
R pfaffian(const SkewMatrix<R>& M, const R& one) {
  const size_t n = M.size();
  if (n % 2) throw PfaffianError("Pfaffian of an odd-sized matrix");
  if (n == 0) return one;
  if (n > 30) throw PfaffianError("matrix too large for subset memoization");
  using Mask = uint32_t;
  // collect reachable subsets by size
  std::vector<std::vector<Mask>> layers(n / 2 + 1);
  std::unordered_map<Mask, size_t> slot;
  Mask full = n == 32 ? ~Mask(0) : ((Mask(1) << n) - 1);
  layers[n / 2].push_back(full);
  for (size_t L = n / 2; L > 1; --L) {
    for (Mask s : layers[L]) {
      int top = 31 - __builtin_clz(s);
      Mask rest = s & ~(Mask(1) << top);
      for (Mask r = rest; r; r &= r - 1) {
        Mask sub = rest & ~(r & -r);
        if (slot.emplace(sub, 0).second) layers[L - 1].push_back(sub);
      }
    }
  }
  std::unordered_map<Mask, R> val;
  // size-2 subsets
  for (Mask s : layers[1]) {
    int top = 31 - __builtin_clz(s);
    int low = __builtin_ctz(s);
    val.emplace(s, M.upper(low, top));
  }
  for (size_t L = 2; L <= n / 2; ++L) {
    auto& layer = layers[L];
    std::vector<R> out(layer.size(), M.zero());
    parallel_for(layer.size(), [&](size_t k) {
      Mask s = layer[k];
      int top = 31 - __builtin_clz(s);
      Mask rest = s & ~(Mask(1) << top);
      R acc = M.zero();
      int pos = 0;
      for (Mask r = rest; r; r &= r - 1, ++pos) {
        int i = __builtin_ctz(r);
        const R& a = M.upper(i, top);
        Mask sub = rest & ~(Mask(1) << i);
        const R& p = val.at(sub);
        if (pos % 2 == 0)
          acc = acc + a * p;
        else
          acc = acc - a * p;
      }
      out[k] = std::move(acc);
    });
    for (size_t k = 0; k < layer.size(); ++k) val.emplace(layer[k], std::move(out[k]));
  }
  return val.at(full);
}

// Plain recursion without memoization; refused above size 12.
template <class R>
R pfaffian_recursive(const SkewMatrix<R>& M, const R& one) {
  const size_t n = M.size();
  if (n % 2) throw PfaffianError("Pfaffian of an odd-sized matrix");
  if (n > 12) throw PfaffianError("plain recursion refused above size 12; use the memoized Pfaffian");
  std::vector<size_t> idx(n);
  for (size_t i = 0; i < n; ++i) idx[i] = i;
  auto rec = [&](auto&& self, const std::vector<size_t>& s) -> R {
    if (s.empty()) return one;
    size_t last = s.back();
    R acc = M.zero();
    for (size_t k = 0; k + 1 < s.size(); ++k) {
      std::vector<size_t> sub;
      for (size_t j = 0; j + 1 < s.size(); ++j)
        if (j != k) sub.push_back(s[j]);
      R term = M.upper(s[k], last) * self(self, sub);
      acc = k % 2 == 0 ? acc + term : acc - term;
    }
    return acc;
  };
  return rec(rec, idx);
}

// Determinant by Laplace expansion over column subsets (subset DP); works over
// any commutative ring.
template <class R>
R det_laplace(const std::vector<std::vector<R>>& A, const R& zero, const R& one) {
  const size_t n = A.size();
  if (n == 0) return one;
  if (n > 24) throw std::invalid_argument("det_laplace: matrix too large");
  // dp[mask] = det of rows 0..popcount(mask)-1 restricted to columns in mask
  std::vector<R> dp(size_t(1) << n, zero);
  std::vector<bool> have(size_t(1) << n, false);
  dp[0] = one;
  have[0] = true;
  for (size_t mask = 0; mask < dp.size(); ++mask) {
    if (!have[mask]) continue;
    size_t row = __builtin_popcountll(mask);
    if (row == n) continue;
    int sign_count = 0;
    for (size_t c = 0; c < n; ++c) {
      if (mask >> c & 1) {
        ++sign_count;
        continue;
      }
      // sign from moving column c past the columns after it already used
      size_t after = __builtin_popcountll(mask >> (c + 1));
      R term = dp[mask] * A[row][c];
      size_t nm = mask | (size_t(1) << c);
      dp[nm] = (after % 2 == 0) ? dp[nm] + term : dp[nm] - term;
      have[nm] = true;
    }
    (void)sign_count;
  }
  return dp[dp.size() - 1];
}

// Exact determinant over Q(i) by Gaussian elimination.
GR det_gauss(std::vector<std::vector<GR>> A);

struct IdentityReport {
  std::string name;
  bool pass = false;
  std::string detail;
};

// Pf((x_i-x_j)/(x_i+x_j)) = prod_{i<j} (x_i-x_j)/(x_i+x_j) on 2n symbols.
IdentityReport verify_schur_pfaffian(int n);

// de Bruijn with R a polynomial kernel and "integration" given by exact moment
// functionals ell_i(x^k) = moments[i][k]; phis[i] are polynomials in x given
// by coefficient lists.
struct DeBruijnData {
  std::vector<std::vector<GR>> kernel;   // kernel[a][b] = coefficient of x^a y^b
  std::vector<std::vector<GR>> phis;     // phis[i][k] = coefficient of x^k in phi_i
  std::vector<std::vector<GR>> moments;  // moments[i][k] = ell_i(x^k)
};
IdentityReport verify_de_bruijn(const DeBruijnData& d);
// Monomial test functions phi_i = x^{i} and moments ell_i(x^k) = 1/(k+i+1).
DeBruijnData de_bruijn_example(int two_n, const std::vector<std::vector<GR>>& kernel);

// Pf(M)^2 = det(M) for a pseudo-random rational skew matrix of the given size.
IdentityReport verify_pf_squared(int size, unsigned seed);

}  // namespace dntau
