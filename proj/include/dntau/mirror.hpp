#pragma once

#include <string>
#include <utility>
#include <vector>

#include "dntau/bigcomplex.hpp"
#include "dntau/report.hpp"
#include "dntau/tau.hpp"

namespace dntau {

// Slots 1..N label phi_i (Saito-Givental side) and e_{2i-1}, e_0 for i = N (FJRW side).
struct MirrorConstants {
  int N = 3, h = 4;
  unsigned bits = kDefaultPrecisionBits;
  BigComplex xi, eta, c;
  std::vector<int> m;             // exponents, index 1..N
  std::vector<BigComplex> rho;    // rho_i = -i xi^{m_i}, index 1..N
  mpq_class D;                    // conformal dimension 1 - 2/h
  std::vector<mpq_class> deg;     // index 1..N
  std::vector<std::pair<mpq_class, mpq_class>> theta;  // index 1..N
  int star(int i) const { return i == N ? N : N - i; }
  nlohmann::json to_json() const;
};

MirrorConstants mirror_constants(int N, unsigned bits);
CheckReport verify_mirror_constants(const MirrorConstants& mc);

// Res(phi_i phi_j) from the closed pattern.
mpq_class residue_pairing(int N, int i, int j);
// Res(phi_{i_1} ... phi_{i_k}) computed in the local algebra of x1^2 x2 - x2^{N-1} + x3^2
// with N psi_D = Res(psi) [Hess f].
mpq_class local_residue(int N, const std::vector<int>& slots);

// Genus-0 <x2, x2^{N-3}, x2^{N-2}, x2> from the deformation f + t x2 (N >= 4).
// naive: d/dt Res_t(x2 x2^{N-3} x2^{N-2}) with the undeformed insertions.
// flat: adds the first-order flat-coordinate term c t, c fixed by flatness of Res(phi_{N-1} phi_{N-1}).
struct FourPointOracle {
  mpq_class naive, flat_shift, flat;
  nlohmann::json to_json() const;
};
FourPointOracle sg_four_point_oracle(int N);
// Grothendieck residue of x2^j (j >= 0) for f + t x2, as a sum over the N Morse points, t != 0.
mpq_class deformed_residue_x2(int N, const mpq_class& t, int j);

enum class Side { SG, FJRW };
Side parse_side(const std::string& s);
std::string side_name(Side s);

struct Insertion {
  int slot = 1;  // 1..N
  int k = 0;     // descendant power psi^k
  friend bool operator<(const Insertion& a, const Insertion& b) {
    return a.slot != b.slot ? a.slot < b.slot : a.k < b.k;
  }
  friend bool operator==(const Insertion& a, const Insertion& b) { return a.slot == b.slot && a.k == b.k; }
};

// "e0,e0,e1" (FJRW) or "phi1,x2,x2^2" (SG); ":k" appends psi^k, e.g. "e1:2".
std::vector<Insertion> parse_insertions(const std::string& s, int N, Side side);
std::string insertion_label(const Insertion& x, int N, Side side);

// BKP time (a, m) carrying an insertion, and the inverse.
std::pair<int, int> bkp_time(const Insertion& x, int N);
Insertion insertion_of(int a, int m, int N);

// t_{a,m} = factor * t^{side}_{k,slot}, with sqrt(hbar) = rho_1.
BigComplex dictionary_factor(const MirrorConstants& mc, Side side, const Insertion& x);
// hbar at which tau equals the side's total descendant potential.
BigComplex side_hbar(const MirrorConstants& mc, Side side);

struct SelectionRules {
  mpq_class dimension_sum, genus_solution;
  bool dimension = false, euler = false, stable = false;
  mpq_class euler1, euler2;
  std::string violated;  // empty when admissible
  bool admissible() const { return violated.empty(); }
  nlohmann::json to_json() const;
};
SelectionRules selection_rules(int N, const std::vector<Insertion>& ins, int g);
// Genus forced by the dimension constraint, or -1 when no integer genus >= 0 fits.
int dimension_genus(int N, const std::vector<Insertion>& ins);

struct Correlator {
  Side side = Side::FJRW;
  int g = 0;
  std::vector<Insertion> insertions;
  BigComplex value;
  bool forbidden = false;
  SelectionRules rules;
  nlohmann::json to_json(int N) const;
};

// log tau must come from log(tau.t).
Correlator extract_correlator(const TauSeries& tau, const SparseSeries& log_tau, const MirrorConstants& mc, Side side,
                              int g, std::vector<Insertion> ins);

// Coefficient table of tau in the side's variables t<side>_<k>_<slot>.
NumericSeries to_side_variables(const TauSeries& tau, const MirrorConstants& mc, Side side);
// Inverse substitution back to the BKP times.
NumericSeries from_side_variables(const NumericSeries& s, const MirrorConstants& mc, Side side);

// SG -> BKP -> SG round trip and FJRW factors against the Mir map composed with the SG factors.
CheckReport verify_dictionaries(const TauSeries& tau, const MirrorConstants& mc);
// Every monomial of log tau that the selection rules forbid must carry coefficient 0.
CheckReport verify_selection_rules(const TauSeries& tau, const MirrorConstants& mc);
// All genus-0 primary 3-point correlators within the weight window against residues (SG)
// and the FJRW table.
CheckReport verify_three_point(const TauSeries& tau, const MirrorConstants& mc, double tol);
CheckReport verify_correlator(const TauSeries& tau, const MirrorConstants& mc, Side side, int g,
                              const std::vector<Insertion>& ins, const GR& expected, double tol);

}  // namespace dntau
