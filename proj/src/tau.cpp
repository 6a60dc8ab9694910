#include "dntau/tau.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "dntau/pfaffian.hpp"
#include "dntau/powersums.hpp"

namespace dntau {

std::vector<std::string> MiwaConfig::block_names(int a) const {
  std::vector<std::string> r;
  int n = a == 1 ? N1 : N2;
  for (int i = 1; i <= n; ++i) r.push_back("u" + std::to_string(a) + "_" + std::to_string(i));
  return r;
}

void MiwaConfig::validate() const {
  if (N1 < 0 || N2 < 0) throw std::invalid_argument("negative Miwa block size");
  if ((N1 + N2) % 2) throw std::invalid_argument("N1 + N2 must be even");
  if (N1 + N2 == 0) throw std::invalid_argument("at least one Miwa variable is required");
  if (W < 0) throw std::invalid_argument("weight must be non-negative");
  if (N1 + N2 > kMaxVars) throw std::invalid_argument("too many Miwa variables");
}

MiwaConfig default_miwa_config(long W) {
  int l = std::max(1, min_odd_faithful_vars(W));
  return {l, l, W};
}

TwoPointSet build_twopoints(const Params& p, long W) {
  GrBasis B = build_basis(p, W, W);
  return {build_twopoint(B, 1, 1, W, W), build_twopoint(B, 1, 2, W, W), build_twopoint(B, 2, 2, W, W)};
}

SpacePtr time_space(long W, const std::string& prefix) {
  std::vector<std::string> names;
  std::vector<int> w;
  for (int a = 1; a <= 2; ++a)
    for (int m = 1; m <= std::max<long>(W, 1); m += 2) {
      names.push_back(prefix + std::to_string(a) + "_" + std::to_string(m));
      w.push_back(m);
    }
  return Space::graded(names, w, W);
}

int time_index(const SpacePtr& sp, int a, int m, const std::string& prefix) {
  return sp->index(prefix + std::to_string(a) + "_" + std::to_string(m));
}

namespace {

struct BlockLayout {
  std::vector<int> idx1, idx2;
};

BlockLayout block_layout(const MiwaConfig& cfg) {
  BlockLayout L;
  for (int i = 0; i < cfg.N1; ++i) L.idx1.push_back(i);
  for (int j = 0; j < cfg.N2; ++j) L.idx2.push_back(cfg.N1 + j);
  return L;
}

SpacePtr miwa_space(const MiwaConfig& cfg) {
  std::vector<std::vector<std::string>> blocks;
  if (cfg.N1) blocks.push_back(cfg.block_names(1));
  if (cfg.N2) blocks.push_back(cfg.block_names(2));
  return Space::region(blocks, cfg.W);
}

// c0 + c * sum_{m>=1} (u_i/u_j)^m within the region.
SparseSeries ratio_series(const SpacePtr& sp, int i, int j, const GR& c0, const GR& c, bool alternating) {
  std::vector<SparseSeries::Term> terms;
  terms.emplace_back(mono_zero(), c0);
  long W = sp->bounds().empty() ? 0 : sp->bounds()[0].bound;
  for (long m = 1; m <= W; ++m) {
    Mono mo{};
    mo[i] = static_cast<int16_t>(m);
    mo[j] = static_cast<int16_t>(-m);
    if (!sp->admits(mo)) break;
    terms.emplace_back(mo, alternating && m % 2 ? -c : c);
  }
  return SparseSeries::from_terms(sp, std::move(terms));
}

}  // namespace

SparseSeries miwa_tau(const TwoPointSet& tp, const MiwaConfig& cfg) {
  cfg.validate();
  for (const TwoPoint* t : {&tp.p11, &tp.p12, &tp.p22})
    if (t->window < cfg.W)
      throw SeriesError("miwa_tau: two-point window " + std::to_string(t->window) + " is below the weight " +
                        std::to_string(cfg.W));
  SpacePtr sp = miwa_space(cfg);
  BlockLayout L = block_layout(cfg);
  const int n = cfg.N1 + cfg.N2;
  auto block_of = [&](int g) { return g < cfg.N1 ? 1 : 2; };
  SparseSeries zero(sp), one = SparseSeries::constant(sp, 1);
  SkewMatrix<SparseSeries> M(n, zero);
  for (int g = 0; g < n; ++g)
    for (int k = g + 1; k < n; ++k) {
      int a = block_of(g), b = block_of(k);
      if (a == b) {
        const TwoPoint& t = a == 1 ? tp.p11 : tp.p22;
        // (1/2) K(z_g, z_k) = 1/2 - sum_m (-1)^{m+1} (u_g/u_k)^m
        SparseSeries e = ratio_series(sp, g, k, GR::frac(1, 2), GR(1), true);
        e += t.regular.embed(sp, {g, k});
        M.set(g, k, e);
      } else {
        M.set(g, k, GR::i() * tp.p12.regular.embed(sp, {g, k}));
      }
    }
  SparseSeries r = pfaffian(M, one);
  GR pref = GR(mpq_class(mpz_class(1) << (n / 2))) * i_pow(-static_cast<long>(cfg.N1) * cfg.N1);
  r = pref * r;
  for (auto* blk : {&L.idx1, &L.idx2})
    for (size_t i = 0; i < blk->size(); ++i)
      for (size_t j = i + 1; j < blk->size(); ++j)
        r = r * ratio_series(sp, (*blk)[i], (*blk)[j], GR(1), GR(2), false);
  for (auto& [m, c] : r.terms())
    for (int v = 0; v < n; ++v)
      if (m[v] < 0)
        throw SeriesError("miwa_tau: positive power of z_" + sp->var(v).name.substr(1) + " survived in the window");
  return r;
}

TauSeries miwa_invert(const Params& p, const SparseSeries& miwa, const MiwaConfig& cfg) {
  cfg.validate();
  long W = cfg.W;
  SparseSeries f = miwa;
  if (cfg.N1) {
    std::vector<int> blk;
    for (auto& nm : cfg.block_names(1)) blk.push_back(f.space()->require(nm));
    f = symmetric_to_odd_powersums(f, blk, W, "P1_");
  }
  if (cfg.N2) {
    std::vector<int> blk;
    for (auto& nm : cfg.block_names(2)) blk.push_back(f.space()->require(nm));
    f = symmetric_to_odd_powersums(f, blk, W, "P2_");
  }
  SpacePtr ts = time_space(W);
  std::vector<int> map(f.space()->nvars());
  std::vector<GR> scale(f.space()->nvars());
  for (size_t v = 0; v < f.space()->nvars(); ++v) {
    const std::string& nm = f.space()->var(v).name;
    int a = nm[1] - '0';
    int m = std::stoi(nm.substr(3));
    map[v] = time_index(ts, a, m);
    if (map[v] < 0) throw SeriesError("miwa_invert: no time variable for " + nm);
    scale[v] = GR::frac(-m, 2);
  }
  TauSeries tau;
  tau.N = p.N;
  tau.h = p.h;
  tau.W = W;
  tau.t = f.scale_vars(scale).embed(ts, map);
  return tau;
}

SparseSeries miwa_substitute(const TauSeries& tau, const MiwaConfig& cfg, const SpacePtr& target) {
  std::map<std::pair<int, int>, SparseSeries> tv;  // (a,m) -> -(2/m) p_m^{(a)}
  auto t_of = [&](int a, int m) -> const SparseSeries& {
    auto key = std::make_pair(a, m);
    auto it = tv.find(key);
    if (it != tv.end()) return it->second;
    SparseSeries s(target);
    for (auto& nm : cfg.block_names(a)) s += SparseSeries::monomial(target, mono_unit(target->require(nm), m), 1);
    return tv.emplace(key, GR::frac(-2, m) * s).first->second;
  };
  const SpacePtr& ts = tau.t.space();
  SparseSeries out(target);
  for (auto& [mono, c] : tau.t.terms()) {
    SparseSeries term = SparseSeries::constant(target, c);
    for (size_t v = 0; v < ts->nvars() && !term.is_zero(); ++v) {
      if (!mono[v]) continue;
      const std::string& nm = ts->var(v).name;
      int a = nm[1] - '0';
      int m = std::stoi(nm.substr(3));
      term = term * t_of(a, m).pow(mono[v]);
    }
    out += term;
  }
  return out;
}

TauSeries compute_tau(const Params& p, long W, const MiwaConfig& cfg) {
  if (cfg.W != W) throw std::invalid_argument("Miwa configuration weight differs from W");
  TwoPointSet tp = build_twopoints(p, std::max<long>(W, 1));
  return miwa_invert(p, miwa_tau(tp, cfg), cfg);
}

TauSeries compute_tau(const Params& p, long W) { return compute_tau(p, W, default_miwa_config(W)); }

nlohmann::json TauSeries::to_json() const {
  return {{"N", N}, {"h", h}, {"weight", W}, {"series", t.to_json()}};
}

std::string TauSeries::to_csv() const {
  std::ostringstream os;
  os << "monomial,re,im\n";
  const SpacePtr& sp = t.space();
  for (auto& [m, c] : t.terms()) {
    std::string mono;
    for (size_t v = 0; v < sp->nvars(); ++v) {
      if (!m[v]) continue;
      if (!mono.empty()) mono += "*";
      mono += sp->var(v).name;
      if (m[v] != 1) mono += "^" + std::to_string(m[v]);
    }
    if (mono.empty()) mono = "1";
    os << mono << "," << c.re() << "," << c.im() << "\n";
  }
  return os.str();
}

// ------------------------------------------------------------------ string equation

namespace {

struct StringPieces {
  SparseSeries d11;  // -i d/dt_{1,1} tau
  SparseSeries x1;   // X_1 tau
  SparseSeries x2;   // X_2 tau
  long window;
};

// X_a = 4 sum_m (m+h_a) t_{a,m+h_a} d_{a,m} + sum_{0<m'<h_a} m'(h_a-m') t_{a,m'} t_{a,h_a-m'}
SparseSeries apply_X(const TauSeries& tau, int a) {
  const SpacePtr& sp = tau.t.space();
  const int ha = a == 1 ? tau.h : 2;
  SparseSeries r(sp);
  for (int m = 1; m + ha <= tau.W; m += 2) {
    int dm = time_index(sp, a, m), up = time_index(sp, a, m + ha);
    if (dm < 0 || up < 0) continue;
    r += tau.t.derivative(dm).shifted(mono_unit(up), GR(4 * (m + ha)));
  }
  for (int mp = 1; mp < ha; mp += 2) {
    int i1 = time_index(sp, a, mp), i2 = time_index(sp, a, ha - mp);
    if (i1 < 0 || i2 < 0) continue;
    Mono mo = mono_unit(i1);
    ++mo[i2];
    r += tau.t.shifted(mo, GR(mp * (ha - mp)));
  }
  return r;
}

StringPieces string_pieces(const TauSeries& tau) {
  const SpacePtr& sp = tau.t.space();
  long window = tau.W - 1;
  if (window < 0) throw std::invalid_argument("string equation needs W >= 1");
  SpacePtr ws = Space::graded([&] {
    std::vector<std::string> n;
    for (auto& v : sp->vars()) n.push_back(v.name);
    return n;
  }(), sp->bounds()[0].coeffs, window);
  int i11 = time_index(sp, 1, 1);
  StringPieces P;
  P.window = window;
  P.d11 = (-GR::i() * tau.t.derivative(i11)).truncated(ws);
  P.x1 = apply_X(tau, 1).truncated(ws);
  P.x2 = apply_X(tau, 2).truncated(ws);
  return P;
}

std::string mono_name(const SpacePtr& sp, const Mono& m) {
  std::string s;
  for (size_t v = 0; v < sp->nvars(); ++v) {
    if (!m[v]) continue;
    if (!s.empty()) s += "*";
    s += sp->var(v).name;
    if (m[v] != 1) s += "^" + std::to_string(m[v]);
  }
  return s.empty() ? "1" : s;
}

}  // namespace

SparseSeries apply_expanded_string(const TauSeries& tau) {
  StringPieces P = string_pieces(tau);
  return P.d11 + GR(mpq_class(1, 4 * tau.h)) * P.x1 + GR::frac(1, 8) * P.x2;
}

StringFit fit_string_normalization(const TauSeries& tau) {
  StringPieces P = string_pieces(tau);
  StringFit F;
  std::vector<Mono> rows;
  for (auto* s : {&P.d11, &P.x1, &P.x2})
    for (auto& t : s->terms()) rows.push_back(t.first);
  std::sort(rows.begin(), rows.end(), mono_less);
  rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
  for (size_t i = 0; i < rows.size() && !F.solved; ++i)
    for (size_t j = i + 1; j < rows.size() && !F.solved; ++j) {
      GR a11 = P.x1.coeff(rows[i]), a12 = P.x2.coeff(rows[i]);
      GR a21 = P.x1.coeff(rows[j]), a22 = P.x2.coeff(rows[j]);
      GR det = a11 * a22 - a12 * a21;
      if (det.is_zero()) continue;
      GR b1 = -P.d11.coeff(rows[i]), b2 = -P.d11.coeff(rows[j]);
      F.sigma1 = (b1 * a22 - a12 * b2) / det;
      F.sigma2 = (a11 * b2 - b1 * a21) / det;
      F.solved = true;
    }
  if (F.solved) F.all_rows_vanish = (P.d11 + F.sigma1 * P.x1 + F.sigma2 * P.x2).is_zero();
  return F;
}

CheckReport verify_string(const TauSeries& tau) {
  CheckReport r;
  r.check = "string";
  SparseSeries res = apply_expanded_string(tau);
  r.data["h"] = tau.h;
  r.data["weight"] = tau.W;
  r.data["window"] = tau.W - 1;
  r.pass = res.is_zero();
  if (!r.pass) {
    const auto& t = res.terms().front();
    r.data["residual_max_monomial"] = mono_name(res.space(), t.first);
    r.data["residual_coefficient"] = t.second.to_string();
  }
  StringFit F = fit_string_normalization(tau);
  r.data["sigma_fit_solved"] = F.solved;
  if (F.solved) {
    r.data["sigma1"] = F.sigma1.to_string();
    r.data["sigma2"] = F.sigma2.to_string();
    r.data["sigma_fit_all_rows_vanish"] = F.all_rows_vanish;
    r.data["sigma_matches_1_over_4ha"] =
        F.sigma1 == GR(mpq_class(1, 4 * tau.h)) && F.sigma2 == GR::frac(1, 8);
  }
  return r;
}

CheckReport verify_symmetry(const TauSeries& tau) {
  CheckReport r;
  r.check = "symmetry";
  const SpacePtr& sp = tau.t.space();
  long bad = 0;
  std::string first;
  for (auto& [m, c] : tau.t.terms()) {
    int deg2 = 0;
    for (int mm = 1; mm <= tau.W; mm += 2) {
      int v = time_index(sp, 2, mm);
      if (v >= 0) deg2 += m[v];
    }
    if (deg2 % 2) {
      if (!bad) first = mono_name(sp, m);
      ++bad;
    }
  }
  r.pass = bad == 0;
  r.data["h"] = tau.h;
  r.data["weight"] = tau.W;
  r.data["window"] = tau.W;
  r.data["odd_t2_terms"] = bad;
  if (bad) r.data["residual_max_monomial"] = first;
  return r;
}

CheckReport verify_rationality(const TauSeries& tau, const SparseSeries* miwa, int N1) {
  CheckReport r;
  r.check = "rationality";
  const SpacePtr& sp = tau.t.space();
  std::vector<GR> f(sp->nvars(), GR(1));
  for (int m = 1; m <= tau.W; m += 2) {
    int v = time_index(sp, 1, m);
    if (v >= 0) f[v] = (-GR::i()).pow(m);
  }
  SparseSeries s = tau.t.scale_vars(f);
  bool ok = true;
  std::string first;
  for (auto& [m, c] : s.terms())
    if (!c.is_real()) {
      if (ok) first = mono_name(sp, m);
      ok = false;
    }
  r.data["t_form_rational"] = ok;
  if (miwa) {
    std::vector<GR> g(miwa->space()->nvars(), GR(1));
    for (int i = 0; i < N1; ++i) g[i] = -GR::i();
    SparseSeries ms = miwa->scale_vars(g);
    bool mok = true;
    for (auto& [m, c] : ms.terms())
      if (!c.is_real()) mok = false;
    r.data["miwa_form_rational"] = mok;
    ok = ok && mok;
  }
  r.pass = ok;
  r.data["h"] = tau.h;
  r.data["weight"] = tau.W;
  r.data["window"] = tau.W;
  if (!first.empty()) r.data["residual_max_monomial"] = first;
  return r;
}

// ------------------------------------------------------------------ hbar rescaling

mpq_class hbar_exponent(int h, int a, int m) {
  int ha = a == 1 ? h : 2;
  mpq_class e(m * h, ha * (h + 1));
  e.canonicalize();
  return e - 1;
}

BigComplex rho1(int h, unsigned bits) { return -BigComplex(GR::i(), bits) * exp_i_pi(mpq_class(1, h), bits); }

BigComplex NumericSeries::coeff(const Mono& m, unsigned bits) const {
  for (auto& t : terms)
    if (t.first == m) return t.second;
  return BigComplex(bits);
}

NumericSeries rescale_hbar(const TauSeries& tau, const BigComplex& hbar, unsigned bits) {
  if (hbar.re() == 0 && hbar.im() == 0) throw std::invalid_argument("hbar must be non-zero");
  const SpacePtr& sp = tau.t.space();
  BigComplex base = sqrt(hbar) / rho1(tau.h, bits);
  std::vector<BigComplex> fac;
  NumericSeries out;
  for (size_t v = 0; v < sp->nvars(); ++v) {
    const std::string& nm = sp->var(v).name;
    out.vars.push_back(nm);
    int a = nm[1] - '0';
    int m = std::stoi(nm.substr(3));
    fac.push_back(pow(base, hbar_exponent(tau.h, a, m)));
  }
  for (auto& [m, c] : tau.t.terms()) {
    BigComplex x(c, bits);
    for (size_t v = 0; v < sp->nvars(); ++v)
      if (m[v]) x = x * pow(fac[v], static_cast<long>(m[v]));
    out.terms.emplace_back(m, x);
  }
  return out;
}

}  // namespace dntau
