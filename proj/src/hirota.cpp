#include "dntau/hirota.hpp"

#include <map>

namespace dntau {

namespace {

std::string tname(int a, int m, bool primed) {
  return std::string(primed ? "tp" : "t") + std::to_string(a) + "_" + std::to_string(m);
}

std::vector<int> odd_upto(long W) {
  std::vector<int> r;
  for (int m = 1; m <= std::max<long>(W, 1); m += 2) r.push_back(m);
  return r;
}

SpacePtr pair_space(long W, long bound) {
  std::vector<std::string> names;
  std::vector<int> w;
  for (bool pr : {false, true})
    for (int a = 1; a <= 2; ++a)
      for (int m : odd_upto(W)) {
        names.push_back(tname(a, m, pr));
        w.push_back(m);
      }
  return Space::graded(names, w, bound);
}

}  // namespace

SpacePtr hirota_space(long W) {
  std::vector<Variable> vars;
  std::vector<int> wt;
  for (bool pr : {false, true})
    for (int a = 1; a <= 2; ++a)
      for (int m : odd_upto(W)) {
        vars.push_back({tname(a, m, pr), 1});
        wt.push_back(m);
      }
  vars.push_back({"z", 1});
  std::vector<int> A = wt, B = wt;
  A.push_back(-1);
  B.push_back(0);
  return std::make_shared<Space>(vars, std::vector<LinearBound>{{A, W}, {B, W}});
}

SparseSeries vertex_action(const TauSeries& tau, int a, bool primed, int s, const SpacePtr& hs) {
  const SpacePtr& ts = tau.t.space();
  const int z = hs->require("z");
  // exponential prefactor
  SparseSeries lin(hs);
  for (int m : odd_upto(tau.W)) {
    Mono mo = mono_unit(hs->require(tname(a, m, primed)));
    mo[z] = static_cast<int16_t>(m);
    lin += SparseSeries::monomial(hs, mo, GR(s));
  }
  SparseSeries pre = exp(lin);

  // images of the time variables under the shift
  std::vector<SparseSeries> img(ts->nvars());
  std::vector<std::map<int, SparseSeries>> pw(ts->nvars());
  for (size_t v = 0; v < ts->nvars(); ++v) {
    const std::string& nm = ts->var(v).name;
    int b = nm[1] - '0';
    int m = std::stoi(nm.substr(3));
    img[v] = SparseSeries::variable(hs, tname(b, m, primed));
    if (b == a) img[v] -= SparseSeries::monomial(hs, mono_unit(z, -m), GR(mpq_class(2 * s, m)));
  }
  auto power = [&](size_t v, int e) -> const SparseSeries& {
    auto it = pw[v].find(e);
    if (it != pw[v].end()) return it->second;
    return pw[v].emplace(e, img[v].pow(e)).first->second;
  };
  SparseSeries shifted(hs);
  for (auto& [mono, c] : tau.t.terms()) {
    SparseSeries term = SparseSeries::constant(hs, c);
    for (size_t v = 0; v < ts->nvars() && !term.is_zero(); ++v)
      if (mono[v]) term = term * power(v, mono[v]);
    shifted += term;
  }
  return pre * shifted;
}

long hirota_exact_window(const TauSeries& tau, int m) { return tau.W - static_cast<long>(tau.h) * m; }

SparseSeries hirota_residual(const TauSeries& tau, int m, long window) {
  if (m < 0) throw std::invalid_argument("Hirota index m must be non-negative");
  if (window > hirota_exact_window(tau, m))
    throw std::invalid_argument("Hirota window " + std::to_string(window) + " exceeds the exact window " +
                                std::to_string(hirota_exact_window(tau, m)));
  SpacePtr hs = hirota_space(tau.W);
  const int z = hs->require("z");
  SpacePtr ps = pair_space(tau.W, std::max<long>(window, 0));
  std::vector<int> map(hs->nvars());
  for (size_t v = 0; v < hs->nvars(); ++v) map[v] = static_cast<int>(v) == z ? -1 : static_cast<int>(v);
  SparseSeries out(ps);
  if (window < 0) return out;
  const int target[3] = {0, -tau.h * m, -2 * m};
  for (int a = 1; a <= 2; ++a) {
    SparseSeries F = vertex_action(tau, a, false, 1, hs);
    SparseSeries Fp = vertex_action(tau, a, true, -1, hs);
    SparseSeries r = mul_select(F, Fp, z, target[a]).slice(z, target[a]).embed(ps, map);
    out = a == 1 ? r : out - r;
  }
  return out;
}

CheckReport verify_hirota(const TauSeries& tau, int m, long window) {
  if (window < 0) window = hirota_exact_window(tau, m);
  CheckReport r;
  r.check = "hirota";
  r.data["h"] = tau.h;
  r.data["m"] = m;
  r.data["weight"] = tau.W;
  r.data["window"] = window;
  r.data["analytic_floor"] = tau.W - static_cast<long>(tau.h) * (m + 1);
  SparseSeries res = hirota_residual(tau, m, window);
  r.pass = res.is_zero();
  r.data["nonzero_coefficients"] = res.size();
  if (!r.pass) {
    const auto& t = res.terms().front();
    std::string s;
    for (size_t v = 0; v < res.space()->nvars(); ++v)
      if (t.first[v]) {
        if (!s.empty()) s += "*";
        s += res.space()->var(v).name;
        if (t.first[v] != 1) s += "^" + std::to_string(t.first[v]);
      }
    r.data["residual_max_monomial"] = s.empty() ? "1" : s;
    r.data["residual_coefficient"] = t.second.to_string();
  }
  return r;
}

}  // namespace dntau
