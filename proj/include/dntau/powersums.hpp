#pragma once

#include <string>
#include <vector>

#include "dntau/series.hpp"

namespace dntau {

using Partition = std::vector<int>;  // weakly decreasing, positive parts

std::vector<Partition> partitions(int n, int max_len = 1 << 20, bool odd_only = false);

// Coefficient of the monomial x^lambda in prod_j p_{mu_j} (number of ways to
// distribute the parts of mu over the variables of lambda).
mpz_class powersum_monomial_coeff(const Partition& mu, const Partition& lambda);

// Rewrites f, symmetric in the variables `block`, in the power sums
// p_m = sum_{i in block} x_i^m, m = 1..W.  Other variables are carried along.
// Output variables: p1..pW (prefixed by `prefix`) followed by the remaining
// variables of f in their original order; the output space is untruncated.
// Requires block.size() >= W.
SparseSeries symmetric_to_powersums(const SparseSeries& f, const std::vector<int>& block, long W,
                                    const std::string& prefix = "p");

// Same, but only odd power sums p1, p3, ... are allowed.  Faithful as soon as
// the block has at least as many variables as the longest strict partition of
// W (Schur Q-functions are independent there); the linear system is
// overdetermined and any inconsistency (even power-sum dependence) throws.
SparseSeries symmetric_to_odd_powersums(const SparseSeries& f, const std::vector<int>& block, long W,
                                        const std::string& prefix = "p");

// Largest l with l(l+1)/2 <= W.
int min_odd_faithful_vars(long W);

// Substitutes p_m = sum_{i in block} x_i^m: pvars[j] is the index of p_{ms[j]} in g;
// block lists target variable indices; other variables of g are mapped by
// carry (index in g -> index in target).
SparseSeries expand_powersums(const SparseSeries& g, const std::vector<int>& pvars, const std::vector<int>& ms,
                              const SpacePtr& target, const std::vector<int>& block,
                              const std::vector<std::pair<int, int>>& carry);

}  // namespace dntau
