#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "dntau/gaussian_rational.hpp"

namespace dntau {

struct SeriesError : std::logic_error {
  using std::logic_error::logic_error;
};

constexpr int kMaxVars = 24;
// Exponent numerators over each variable's lattice constant; unused slots are zero.
using Mono = std::array<int16_t, kMaxVars>;

struct MonoHash {
  size_t operator()(const Mono& m) const noexcept;
};

// Graded lexicographic order on the lattice integers.
bool mono_less(const Mono& a, const Mono& b);

struct Variable {
  std::string name;
  int lattice = 1;
};

// A monomial is kept iff sum_i coeffs[i]*e[i] <= bound for every constraint.
// Products are exact modulo this truncation only for operands whose terms
// evaluate every form to a non-negative value (the "cone" of the space);
// multiplication enforces that.
struct LinearBound {
  std::vector<int> coeffs;
  long bound;
};

class Space {
public:
  Space(std::vector<Variable> vars, std::vector<LinearBound> bounds, std::string region = {});

  // Weighted-degree truncation sum w_i e_i <= W.
  static std::shared_ptr<const Space> graded(const std::vector<std::string>& names, const std::vector<int>& weights,
                                             long W);
  // No truncation at all: exact polynomials.
  static std::shared_ptr<const Space> polynomial(const std::vector<std::string>& names);
  // Region ring for ordered blocks |x_{b,1}|>...>|x_{b,n_b}| of inverse variables
  // u = 1/x.  Ratios u_i/u_j (i<j in a block) have non-negative prefix sums in
  // the block, so truncating max-prefix(block 1) + max-prefix(block 2) + ... <= W
  // is an ideal.  Names are listed block by block.
  static std::shared_ptr<const Space> region(const std::vector<std::vector<std::string>>& blocks, long W);

  size_t nvars() const { return vars_.size(); }
  const Variable& var(size_t i) const { return vars_[i]; }
  const std::vector<Variable>& vars() const { return vars_; }
  const std::vector<LinearBound>& bounds() const { return bounds_; }
  const std::string& region_tag() const { return region_; }
  int index(const std::string& name) const;
  int require(const std::string& name) const;

  bool admits(const Mono& m) const;
  long form(size_t j, const Mono& m) const;
  bool same_as(const Space& o) const;

private:
  std::vector<Variable> vars_;
  std::vector<LinearBound> bounds_;
  std::string region_;
};

using SpacePtr = std::shared_ptr<const Space>;

class SparseSeries;

// Unordered accumulation of terms; finish() drops zeros and inadmissible
// monomials and sorts canonically.
class TermAccumulator {
public:
  explicit TermAccumulator(SpacePtr sp) : sp_(std::move(sp)) {}
  void add(const Mono& m, const GR& c);
  void add_product(const Mono& m, const GR& a, const GR& b);
  SparseSeries finish();
  size_t size() const { return map_.size(); }

private:
  SpacePtr sp_;
  std::unordered_map<Mono, GR, MonoHash> map_;
};

class SparseSeries {
public:
  using Term = std::pair<Mono, GR>;

  SparseSeries() = default;
  explicit SparseSeries(SpacePtr sp) : sp_(std::move(sp)) {}

  static SparseSeries constant(SpacePtr sp, const GR& c);
  static SparseSeries monomial(SpacePtr sp, const Mono& m, const GR& c);
  static SparseSeries variable(SpacePtr sp, const std::string& name, const GR& c = 1);
  // Terms must already be unique; they are filtered and sorted.
  static SparseSeries from_terms(SpacePtr sp, std::vector<Term> terms);

  const SpacePtr& space() const { return sp_; }
  const std::vector<Term>& terms() const { return terms_; }
  size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  GR coeff(const Mono& m) const;
  GR constant_term() const;

  SparseSeries operator-() const;
  friend SparseSeries operator+(const SparseSeries& a, const SparseSeries& b);
  friend SparseSeries operator-(const SparseSeries& a, const SparseSeries& b);
  friend SparseSeries operator*(const SparseSeries& a, const SparseSeries& b);
  friend SparseSeries operator*(const GR& c, const SparseSeries& a);
  SparseSeries& operator+=(const SparseSeries& o) { return *this = *this + o; }
  SparseSeries& operator-=(const SparseSeries& o) { return *this = *this - o; }
  SparseSeries& operator*=(const SparseSeries& o) { return *this = *this * o; }
  friend bool operator==(const SparseSeries& a, const SparseSeries& b);

  SparseSeries pow(unsigned n) const;
  // Multiply by a single monomial; no cone requirement (exact shift).
  SparseSeries shifted(const Mono& m, const GR& c = 1) const;
  // Re-home into another space with the same variables, dropping what it does not admit.
  SparseSeries truncated(const SpacePtr& target) const;
  // Rename/reorder variables: source variable i goes to target index map[i] (-1 = must have zero exponent).
  SparseSeries embed(const SpacePtr& target, const std::vector<int>& map) const;
  // d/dx_v with lattice bookkeeping: x^{e/L} -> (e/L) x^{(e-L)/L}.
  SparseSeries derivative(int v) const;
  // x_v -> c_v x_v for every variable (c empty means 1).
  SparseSeries scale_vars(const std::vector<GR>& factors) const;
  // Apply a map on each term; the callback returns (new monomial, factor) or factor 0 to drop.
  SparseSeries map_terms(const std::function<std::pair<Mono, GR>(const Mono&, const GR&)>& f) const;
  // Terms whose exponent of v equals e, with that exponent cleared.
  SparseSeries slice(int v, int e) const;

  // Canonical JSON: {"vars":[...], "lattice":[...], "terms":[[exps],{re,im}]...}
  nlohmann::json to_json() const;
  std::string to_string() const;

private:
  friend class TermAccumulator;
  SpacePtr sp_;
  std::vector<Term> terms_;
};

SparseSeries exp(const SparseSeries& f);
SparseSeries log(const SparseSeries& f);
SparseSeries invert_unit(const SparseSeries& f);

// Product of a and b keeping only terms whose exponent of variable v equals target.
SparseSeries mul_select(const SparseSeries& a, const SparseSeries& b, int v, int target);

Mono mono_zero();
Mono mono_unit(int v, int e = 1);

// Requires a form with value >= 1 on every term of f (nilpotency modulo truncation).
void require_nilpotent(const SparseSeries& f, const char* what);

}  // namespace dntau
