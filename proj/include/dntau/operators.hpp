#pragma once

#include <map>
#include <string>
#include <vector>

#include "dntau/laurent.hpp"

namespace dntau {

struct Params {
  int N = 2;
  int h = 2;
  explicit Params(int n);
  int h_a(int a) const { return a == 1 ? h : 2; }
};

// Element f1 e1 + i f2 e2; the i on the second component is a convention
// consumers carry, the stored f2 excludes it.
struct WavePair {
  Laurent c1, c2;
  const Laurent& comp(int a) const { return a == 1 ? c1 : c2; }
  Laurent& comp(int a) { return a == 1 ? c1 : c2; }
  WavePair operator+(const WavePair& o) const { return {c1 + o.c1, c2 + o.c2}; }
  WavePair operator-(const WavePair& o) const { return {c1 - o.c1, c2 - o.c2}; }
  friend WavePair operator*(const GR& c, const WavePair& v) { return {c * v.c1, c * v.c2}; }
  nlohmann::json to_json() const;
};

// sum of c * z^p * (z d/dz)^k acting on one component.
struct DiffTerm {
  GR c;
  long p;
  int k;
};

struct DiffOp {
  std::vector<DiffTerm> terms;
  Laurent apply(const Laurent& f) const;
  // Largest z-power shift; the floor of the output is floor(f) + max_shift().
  long max_shift() const;
};

DiffOp op_a1(const Params& p);
DiffOp op_a2();

// Operator words over {a, ainv, b, c, g, A}; applied right to left, so
// "A a" means A(a(v)).
WavePair apply_a(const Params& p, const WavePair& v);
WavePair apply_a_inv(const Params& p, const WavePair& v);
WavePair apply_b(const Params& p, const WavePair& v);
WavePair apply_c(const Params& p, const WavePair& v);
// g = -i^h a^{h+1}/(h+1) on each component.
WavePair apply_g(const Params& p, const WavePair& v);
WavePair apply_A(const Params& p, const WavePair& v);
WavePair apply_word(const Params& p, const std::string& word, const WavePair& v);

Laurent a1_inv(const Params& p, const Laurent& g);
Laurent a2_inv(const Laurent& g);

// Diagonal of A on z^{-n} for component a, read off by applying A to the
// exact monomial.  Throws if A raises the degree.
GR probe_diagonal(const Params& p, int a, long n);

// Minimum order of the window z^{-order} that v still certifies.
void require_window(const WavePair& v, long order, const char* what);

WavePair solve_wave(const Params& p, long order);
WavePair gaussian_oracle(const Params& p, long order);

// e^{g} (2m-1)!!/(2 i z^2)^m to z^{-order}.
Laurent psi2_closed_form(const Params& p, long m, long order);

struct GrBasis {
  Params params{2};
  long K = 0;
  long order = 0;
  std::map<long, WavePair> psis;
  std::vector<WavePair> phis;  // phis[k-1] = Phi_k
  const WavePair& psi(long k) const;
};

// Required single-series order so that every Psi_k, |k| <= K, is certified
// down to z^{-order}.
long basis_margin(const Params& p, long K, long order);
GrBasis build_basis(const Params& p, long K, long order);

}  // namespace dntau
