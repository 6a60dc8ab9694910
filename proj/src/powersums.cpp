#include "dntau/powersums.hpp"

#include <algorithm>
#include <map>

namespace dntau {

namespace {

void gen_partitions(int n, int maxpart, int max_len, bool odd, Partition& cur, std::vector<Partition>& out) {
  if (n == 0) {
    out.push_back(cur);
    return;
  }
  if (static_cast<int>(cur.size()) >= max_len) return;
  for (int p = std::min(n, maxpart); p >= 1; --p) {
    if (odd && p % 2 == 0) continue;
    cur.push_back(p);
    gen_partitions(n - p, p, max_len, odd, cur, out);
    cur.pop_back();
  }
}

mpz_class count_assign(const Partition& mu, size_t j, std::vector<int>& rem, std::map<std::pair<size_t, std::vector<int>>, mpz_class>& memo) {
  if (j == mu.size()) {
    for (int r : rem)
      if (r) return 0;
    return 1;
  }
  auto key = std::make_pair(j, rem);
  auto it = memo.find(key);
  if (it != memo.end()) return it->second;
  mpz_class s = 0;
  for (size_t v = 0; v < rem.size(); ++v) {
    if (rem[v] < mu[j]) continue;
    rem[v] -= mu[j];
    s += count_assign(mu, j + 1, rem, memo);
    rem[v] += mu[j];
  }
  memo.emplace(key, s);
  return s;
}

// Number of distinct permutations of lambda padded with zeros to n slots.
mpz_class orbit_size(const Partition& lambda, size_t n) {
  mpz_class r;
  mpz_fac_ui(r.get_mpz_t(), n);
  std::map<int, unsigned long> mult;
  for (int x : lambda) ++mult[x];
  mult[0] += n - lambda.size();
  for (auto& [k, m] : mult) {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), m);
    r /= f;
  }
  return r;
}

struct Grouped {
  // other-variable exponents (block zeroed) -> sorted block exponents -> coefficient
  std::map<Mono, std::map<Partition, GR>> groups;
};

Grouped group_symmetric(const SparseSeries& f, const std::vector<int>& block, long W) {
  Grouped g;
  std::map<Mono, std::map<Partition, size_t>> counts;
  for (auto& [m, c] : f.terms()) {
    Mono key = m;
    Partition lam;
    long deg = 0;
    for (int v : block) {
      if (f.space()->var(v).lattice != 1) throw SeriesError("power sums need integer exponents");
      if (m[v] < 0) throw SeriesError("power sums need non-negative exponents in the block");
      if (m[v] > 0) lam.push_back(m[v]);
      deg += m[v];
      key[v] = 0;
    }
    if (deg > W) throw SeriesError("block degree exceeds the weight bound");
    std::sort(lam.rbegin(), lam.rend());
    auto& slot = g.groups[key];
    auto it = slot.find(lam);
    if (it == slot.end())
      slot.emplace(lam, c);
    else if (!(it->second == c))
      throw SeriesError("series is not symmetric in the block variables");
    ++counts[key][lam];
  }
  for (auto& [key, byl] : counts)
    for (auto& [lam, n] : byl)
      if (orbit_size(lam, block.size()) != n) throw SeriesError("series is not symmetric in the block variables");
  return g;
}

struct OutLayout {
  SpacePtr space;
  std::vector<int> pindex;  // m -> output index (or -1)
  std::vector<int> carry;   // input var -> output index (-1 for block vars)
};

OutLayout layout(const SparseSeries& f, const std::vector<int>& block, long W, const std::string& prefix, bool odd) {
  OutLayout L;
  std::vector<std::string> names;
  L.pindex.assign(W + 1, -1);
  for (int m = 1; m <= W; ++m) {
    if (odd && m % 2 == 0) continue;
    L.pindex[m] = static_cast<int>(names.size());
    names.push_back(prefix + std::to_string(m));
  }
  std::vector<bool> inblock(f.space()->nvars(), false);
  for (int v : block) inblock[v] = true;
  L.carry.assign(f.space()->nvars(), -1);
  std::vector<Variable> vars;
  for (auto& n : names) vars.push_back({n, 1});
  for (size_t v = 0; v < f.space()->nvars(); ++v) {
    if (inblock[v]) continue;
    L.carry[v] = static_cast<int>(vars.size());
    vars.push_back(f.space()->var(v));
  }
  L.space = std::make_shared<Space>(vars, std::vector<LinearBound>{});
  return L;
}

Mono out_mono(const OutLayout& L, const Mono& key, const Partition& mu) {
  Mono m{};
  for (size_t v = 0; v < L.carry.size(); ++v)
    if (L.carry[v] >= 0) m[L.carry[v]] = key[v];
  for (int part : mu) ++m[L.pindex[part]];
  return m;
}

}  // namespace

std::vector<Partition> partitions(int n, int max_len, bool odd_only) {
  std::vector<Partition> out;
  Partition cur;
  gen_partitions(n, n, max_len, odd_only, cur, out);
  return out;
}

mpz_class powersum_monomial_coeff(const Partition& mu, const Partition& lambda) {
  std::vector<int> rem(lambda.begin(), lambda.end());
  std::map<std::pair<size_t, std::vector<int>>, mpz_class> memo;
  return count_assign(mu, 0, rem, memo);
}

int min_odd_faithful_vars(long W) {
  int l = 0;
  while ((l + 1) * (l + 2) / 2 <= W) ++l;
  return l;
}

SparseSeries symmetric_to_powersums(const SparseSeries& f, const std::vector<int>& block, long W,
                                    const std::string& prefix) {
  if (static_cast<long>(block.size()) < W)
    throw SeriesError("symmetric_to_powersums: " + std::to_string(block.size()) + " variables cannot represent p_1..p_" +
                      std::to_string(W) + " faithfully");
  Grouped g = group_symmetric(f, block, W);
  OutLayout L = layout(f, block, W, prefix, false);
  std::map<std::pair<Partition, Partition>, mpz_class> Lcache;
  auto Lc = [&](const Partition& mu, const Partition& lam) {
    auto key = std::make_pair(mu, lam);
    auto it = Lcache.find(key);
    if (it != Lcache.end()) return it->second;
    mpz_class v = powersum_monomial_coeff(mu, lam);
    Lcache.emplace(key, v);
    return v;
  };
  TermAccumulator acc(L.space);
  for (auto& [key, byl] : g.groups) {
    std::map<int, std::map<Partition, GR>> bydeg;
    for (auto& [lam, c] : byl) {
      int d = 0;
      for (int x : lam) d += x;
      bydeg[d][lam] = c;
    }
    for (auto& [d, resid] : bydeg) {
      std::vector<Partition> parts = partitions(d);
      // longest first: p_mu only reaches coarsenings of mu
      std::stable_sort(parts.begin(), parts.end(), [](const auto& a, const auto& b) { return a.size() > b.size(); });
      for (auto& mu : parts) {
        auto it = resid.find(mu);
        if (it == resid.end() || it->second.is_zero()) continue;
        GR cmu = it->second / GR(mpq_class(Lc(mu, mu)));
        for (auto& nu : parts) {
          if (nu.size() > mu.size()) continue;
          mpz_class l = Lc(mu, nu);
          if (l == 0) continue;
          resid[nu] -= cmu * GR(mpq_class(l));
        }
        acc.add(out_mono(L, key, mu), cmu);
      }
      for (auto& [lam, c] : resid)
        if (!c.is_zero()) throw SeriesError("power-sum conversion left a residual");
    }
  }
  return acc.finish();
}

SparseSeries symmetric_to_odd_powersums(const SparseSeries& f, const std::vector<int>& block, long W,
                                        const std::string& prefix) {
  const size_t N = block.size();
  if (static_cast<long>(N) < min_odd_faithful_vars(W))
    throw SeriesError("symmetric_to_odd_powersums: " + std::to_string(N) +
                      " variables are not faithful for odd power sums up to weight " + std::to_string(W));
  Grouped g = group_symmetric(f, block, W);
  OutLayout L = layout(f, block, W, prefix, true);

  struct Solver {
    std::vector<Partition> rows, cols;
    // c = P f for the pivot rows; Q f = 0 for consistency
    std::vector<std::vector<mpq_class>> P, Q;
  };
  std::map<int, Solver> solvers;
  auto solver = [&](int d) -> const Solver& {
    auto it = solvers.find(d);
    if (it != solvers.end()) return it->second;
    Solver s;
    s.rows = partitions(d, static_cast<int>(N));
    s.cols = partitions(d, 1 << 20, true);
    size_t R = s.rows.size(), C = s.cols.size();
    std::vector<std::vector<mpq_class>> M(R, std::vector<mpq_class>(C + R));
    for (size_t r = 0; r < R; ++r) {
      for (size_t c = 0; c < C; ++c) M[r][c] = mpq_class(powersum_monomial_coeff(s.cols[c], s.rows[r]));
      M[r][C + r] = 1;
    }
    size_t rank = 0;
    for (size_t c = 0; c < C; ++c) {
      size_t piv = rank;
      while (piv < R && M[piv][c] == 0) ++piv;
      if (piv == R)
        throw SeriesError("odd power sums of degree " + std::to_string(d) + " are dependent in " + std::to_string(N) +
                          " variables");
      std::swap(M[piv], M[rank]);
      mpq_class inv = 1 / M[rank][c];
      for (auto& x : M[rank]) x *= inv;
      for (size_t r = 0; r < R; ++r) {
        if (r == rank || M[r][c] == 0) continue;
        mpq_class fct = M[r][c];
        for (size_t k = 0; k < C + R; ++k) M[r][k] -= fct * M[rank][k];
      }
      ++rank;
    }
    for (size_t r = 0; r < R; ++r) {
      std::vector<mpq_class> right(M[r].begin() + C, M[r].end());
      (r < C ? s.P : s.Q).push_back(std::move(right));
    }
    return solvers.emplace(d, std::move(s)).first->second;
  };

  TermAccumulator acc(L.space);
  for (auto& [key, byl] : g.groups) {
    std::map<int, std::map<Partition, GR>> bydeg;
    for (auto& [lam, c] : byl) {
      int d = 0;
      for (int x : lam) d += x;
      bydeg[d][lam] = c;
    }
    for (auto& [d, vals] : bydeg) {
      const Solver& s = solver(d);
      std::vector<GR> rhs(s.rows.size());
      for (size_t r = 0; r < s.rows.size(); ++r) {
        auto it = vals.find(s.rows[r]);
        if (it != vals.end()) rhs[r] = it->second;
      }
      for (auto& q : s.Q) {
        GR v;
        for (size_t r = 0; r < rhs.size(); ++r)
          if (q[r] != 0) v += GR(q[r]) * rhs[r];
        if (!v.is_zero()) throw SeriesError("even power-sum dependence detected in degree " + std::to_string(d));
      }
      for (size_t c = 0; c < s.cols.size(); ++c) {
        GR v;
        for (size_t r = 0; r < rhs.size(); ++r)
          if (s.P[c][r] != 0) v += GR(s.P[c][r]) * rhs[r];
        acc.add(out_mono(L, key, s.cols[c]), v);
      }
    }
  }
  return acc.finish();
}

SparseSeries expand_powersums(const SparseSeries& g, const std::vector<int>& pvars, const std::vector<int>& ms,
                              const SpacePtr& target, const std::vector<int>& block,
                              const std::vector<std::pair<int, int>>& carry) {
  std::map<int, SparseSeries> psum;
  for (int m : ms) {
    SparseSeries s(target);
    for (int v : block) s += SparseSeries::monomial(target, mono_unit(v, m), 1);
    psum.emplace(m, s);
  }
  std::map<std::pair<int, int>, SparseSeries> powcache;
  auto pw = [&](int m, int e) -> const SparseSeries& {
    auto key = std::make_pair(m, e);
    auto it = powcache.find(key);
    if (it != powcache.end()) return it->second;
    return powcache.emplace(key, psum.at(m).pow(e)).first->second;
  };
  SparseSeries out(target);
  for (auto& [mono, c] : g.terms()) {
    Mono base{};
    for (auto [from, to] : carry) base[to] = mono[from];
    SparseSeries t = SparseSeries::monomial(target, base, c);
    for (size_t j = 0; j < pvars.size() && !t.is_zero(); ++j)
      if (mono[pvars[j]]) t = t * pw(ms[j], mono[pvars[j]]);
    out += t;
  }
  return out;
}

}  // namespace dntau
