// Acceptance runner: one PASS/FAIL line per criterion.  Exit status covers the
// fast suite; --extended adds the slow four-point lines, which are reported but
// do not change the exit status.

#include <chrono>
#include <cstring>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "dntau/asymptotics.hpp"
#include "dntau/hirota.hpp"
#include "dntau/matrixmodel.hpp"
#include "dntau/mirror.hpp"
#include "dntau/pfaffian.hpp"
#include "dntau/tau.hpp"
#include "dntau/twopoint.hpp"

using namespace dntau;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + ("failed: " + what);
    }
  }
  void note(const std::string& s) { detail += (detail.empty() ? "" : "; ") + s; }
};

struct Criterion {
  std::string id;
  std::string title;
  double limit_s;  // wall-clock limit; <= 0 means none
  std::function<Outcome()> run;
};

bool zero_above_floor(const WavePair& v) {
  for (const Laurent* c : {&v.c1, &v.c2}) {
    if (c->is_zero()) continue;
    for (long n = c->bottom(); n <= c->top(); ++n)
      if (n >= c->floor() && !c->get(n).is_zero()) return false;
  }
  return true;
}

mpq_class canon(mpq_class q) {
  q.canonicalize();
  return q;
}

mpq_class alpha2(long h) { return canon(mpq_class((h + 2) * (2 * h + 1), 24)); }
mpq_class alpha4(long h) { return canon(mpq_class((h + 2) * (2 * h + 1) * (2 * h * h + 53 * h + 50), 1152)); }
mpq_class alpha6(long h) {
  mpz_class H(h);
  mpz_class q = 556 * H * H * H * H - 1972 * H * H * H - 41853 * H * H - 76492 * H - 36164;
  return canon(mpq_class(-mpz_class((h + 2) * (2 * h + 1)) * q, 414720));
}

std::string str(const BigComplex& z, int digits = 25) { return z.to_string(digits); }

std::string sci(double x) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << x;
  return os.str();
}

// Stability: tau at W+2 restricted to weight <= W equals tau at W.
bool stable_under_weight(const Params& p, long W) {
  auto lo = compute_tau(p, W), hi = compute_tau(p, W + 2);
  const auto& sh = hi.t.space();
  std::vector<int> map;
  for (auto& v : lo.t.space()->vars()) map.push_back(sh->require(v.name));
  std::vector<SparseSeries::Term> keep;
  for (auto& t : hi.t.terms())
    if (sh->form(0, t.first) <= W) keep.push_back(t);
  return SparseSeries::from_terms(sh, keep) == lo.t.embed(sh, map);
}

std::vector<Criterion> fast_suite() {
  std::vector<Criterion> cs;

  cs.push_back({"1", "wave coefficients alpha^2, alpha^4, alpha^6 for h in {2,4,6}; Psi^(2) closed form k <= 8 (exact)", 10,
                [] {
                  Outcome o;
                  for (int N : {2, 3, 4}) {
                    Params p(N);
                    long h = p.h;
                    auto w = solve_wave(p, 3 * (h + 1) + 2);
                    GR a = GR::i() / GR(h);
                    o.require(w.c1.get(-(h + 1)) / a == GR(alpha2(h)), "alpha^2 h=" + std::to_string(h));
                    o.require(w.c1.get(-2 * (h + 1)) / a.pow(2) == GR(alpha4(h)), "alpha^4 h=" + std::to_string(h));
                    o.require(w.c1.get(-3 * (h + 1)) / a.pow(3) == GR(alpha6(h)), "alpha^6 h=" + std::to_string(h));
                    long order = 6 * (h + 1);
                    auto B = build_basis(p, 8, order);
                    for (long k = -8; k <= 8; ++k)
                      o.require(B.psi(k).c2.agrees(psi2_closed_form(p, k, order), -order),
                                "Psi^(2)_" + std::to_string(k) + " h=" + std::to_string(h));
                  }
                  return o;
                }});

  cs.push_back({"2", "solve_wave == gaussian_oracle; basis Psi^(2)_m == closed form, |m| <= 5, order 6(h+1), h in {2,4}",
                30, [] {
                  Outcome o;
                  for (int N : {2, 3}) {
                    Params p(N);
                    long order = 6 * (p.h + 1);
                    auto w = solve_wave(p, order);
                    auto g = gaussian_oracle(p, order);
                    o.require(w.c1.agrees(g.c1, -order) && w.c2.agrees(g.c2, -order),
                              "oracle h=" + std::to_string(p.h));
                    auto B = build_basis(p, 5, order);
                    for (long m = -5; m <= 5; ++m)
                      o.require(B.psi(m).c2.agrees(psi2_closed_form(p, m, order), -order),
                                "closed form m=" + std::to_string(m));
                  }
                  return o;
                }});

  cs.push_back({"3", "A Psi_k = -k Psi_k for -5 <= k <= 5, both components, h in {2,4} (exact)", 30, [] {
                  Outcome o;
                  for (int N : {2, 3}) {
                    Params p(N);
                    auto B = build_basis(p, 5, 6 * (p.h + 1));
                    for (long k = -5; k <= 5; ++k) {
                      auto v = B.psi(k);
                      o.require(zero_above_floor(apply_A(p, v) + GR(k) * v),
                                "k=" + std::to_string(k) + " h=" + std::to_string(p.h));
                    }
                  }
                  return o;
                }});

  cs.push_back({"4", "phi22 == closed form to bidegree 2(2h+2); regular parts of phi11, phi22 vanish at infinity", 60,
                [] {
                  Outcome o;
                  for (int N : {2, 3}) {
                    Params p(N);
                    long T = 2 * (2 * p.h + 2);
                    auto B = build_basis(p, T, T);
                    auto t22 = build_twopoint(B, 2, 2, T, T);
                    auto cf = closed_form_phi22(p, T);
                    o.require(t22.window == T && t22.regular == cf.regular &&
                                  t22.kernel_multiple == cf.kernel_multiple,
                              "phi22 h=" + std::to_string(p.h));
                    auto t11 = build_twopoint(B, 1, 1, T, T);
                    o.require(t11.regular.constant_term().is_zero() && t22.regular.constant_term().is_zero(),
                              "vanishing at infinity h=" + std::to_string(p.h));
                  }
                  return o;
                }});

  cs.push_back({"5", "Hirota m in {0,1} at W = 6 and W = 8, h = 2: every coefficient in the exact window is 0", 600,
                [] {
                  Outcome o;
                  for (long W : {6L, 8L}) {
                    auto tau = compute_tau(Params(2), W);
                    for (int m : {0, 1}) {
                      auto r = verify_hirota(tau, m);
                      o.require(r.pass, "W=" + std::to_string(W) + " m=" + std::to_string(m));
                      o.note("W=" + std::to_string(W) + " m=" + std::to_string(m) +
                             " window=" + r.data["window"].dump());
                    }
                  }
                  return o;
                }});

  cs.push_back({"5s", "stability: tau at W+2 truncated to W equals tau at W (h = 2, W = 6; h = 4, W = 7)", 600, [] {
                  Outcome o;
                  o.require(stable_under_weight(Params(2), 6), "h=2");
                  o.require(stable_under_weight(Params(3), 7), "h=4");
                  return o;
                }});

  cs.push_back({"6", "string equation: expanded L_{-1} annihilates tau at W = 8, h = 2 (exact)", 600, [] {
                  Outcome o;
                  auto r = verify_string(compute_tau(Params(2), 8));
                  o.require(r.pass, "string residual");
                  o.note("sigma1=" + r.data.value("sigma1", std::string("?")) +
                         " sigma2=" + r.data.value("sigma2", std::string("?")));
                  return o;
                }});

  cs.push_back({"7", "tau(t1,t2) = tau(t1,-t2) at W = 8; tau(iZ1,Z2) rational at W = 6 (exact)", 600, [] {
                  Outcome o;
                  o.require(verify_symmetry(compute_tau(Params(2), 8)).pass, "symmetry W=8");
                  Params p(2);
                  auto cfg = default_miwa_config(6);
                  auto miwa = miwa_tau(build_twopoints(p, 6), cfg);
                  auto tau = miwa_invert(p, miwa, cfg);
                  auto r = verify_rationality(tau, &miwa, cfg.N1);
                  o.require(r.pass && r.data["miwa_form_rational"] == true, "rationality W=6");
                  return o;
                }});

  cs.push_back({"8", "double integrals == two-point functions (11,12,22), 3 orders, h in {2,4}; I_p relation p in [-2,3]",
                120, [] {
                  Outcome o;
                  for (int N : {2, 3}) {
                    Params p(N);
                    o.require(verify_saddle(p).pass, "saddle h=" + std::to_string(p.h));
                    o.require(verify_double_integrals(p, 3).pass, "double integrals h=" + std::to_string(p.h));
                    for (int a : {1, 2})
                      o.require(verify_Ip_relation(a, -2, 3, p, 5).pass,
                                "I_p a=" + std::to_string(a) + " h=" + std::to_string(p.h));
                  }
                  return o;
                }});

  cs.push_back({"9", "Schur Pfaffian n <= 3, de Bruijn 2n <= 4, Pf^2 = det size <= 6 (exact)", 0, [] {
                  Outcome o;
                  for (int n = 1; n <= 3; ++n) o.require(verify_schur_pfaffian(n).pass, "schur n=" + std::to_string(n));
                  std::vector<std::vector<GR>> ker{{0, -1}, {1, 0}};
                  for (int two_n : {2, 4})
                    o.require(verify_de_bruijn(de_bruijn_example(two_n, ker)).pass,
                              "de Bruijn 2n=" + std::to_string(two_n));
                  for (int s : {2, 4, 6})
                    o.require(verify_pf_squared(s, 7u + s).pass, "Pf^2 size " + std::to_string(s));
                  return o;
                }});

  cs.push_back({"10", "HCIZ N=2 rel err < 1e-8; Watson h=2 z=3 within 2x first omitted term; int_sing(2,1) = 1/6 +- 1e-10",
                60, [] {
                  Outcome o;
                  auto hz = verify_hciz(2, {0.2, 0.9}, {0.4, 1.7}, 1e-8);
                  o.require(hz.pass, "HCIZ");
                  o.note("HCIZ rel err " + hz.data.value("relative_error", nlohmann::json()).dump());
                  for (long k : {0L, 1L, 2L})
                    o.require(quadrature_vs_asymptotics({2, k, 3.0, 256}, 2).pass, "Watson k=" + std::to_string(k));
                  double is = int_sing_quadrature(2, 1);
                  o.require(std::abs(is - 1.0 / 6.0) < 1e-10, "int_sing");
                  o.note("int_sing err " + sci(std::abs(is - 1.0 / 6.0)));
                  return o;
                }});

  cs.push_back({"11", "<e0,e0,e1>_{0,3} = -1/(N-1), N in {3,4}, 400 bits, |err| < 1e-50; forbidden correlators = 0 +- 1e-50",
                900, [] {
                  Outcome o;
                  const BigFloat tol("1e-50");
                  for (int N : {3, 4}) {
                    auto mc = mirror_constants(N, 400);
                    auto tau = compute_tau(Params(N), N == 3 ? 9 : 7);
                    auto lt = log(tau.t);
                    auto c = extract_correlator(tau, lt, mc, Side::FJRW, 0, parse_insertions("e0,e0,e1", N, Side::FJRW));
                    BigFloat err = (c.value - BigComplex(GR(mpq_class(-1, N - 1)), 400)).abs();
                    o.require(!c.forbidden && err < tol, "<e0,e0,e1> N=" + std::to_string(N));
                    o.note("N=" + std::to_string(N) + " value " + str(c.value, 20));
                    auto sr = verify_selection_rules(tau, mc);
                    o.require(sr.pass, "selection rules N=" + std::to_string(N));
                    if (N == 3) {
                      auto f = extract_correlator(tau, lt, mc, Side::FJRW, 0,
                                                  parse_insertions("e3,e3,e3", N, Side::FJRW));
                      o.require(f.forbidden && f.value.abs() < tol, "<e3,e3,e3> forbidden");
                    }
                  }
                  return o;
                }});
  return cs;
}

std::vector<Criterion> extended_suite() {
  std::vector<Criterion> cs;
  // shared N = 4, W = 14 tau
  static std::unique_ptr<TauSeries> tau;
  static std::unique_ptr<SparseSeries> lt;
  auto ensure = [] {
    if (!tau) {
      tau = std::make_unique<TauSeries>(compute_tau(Params(4), 14));
      lt = std::make_unique<SparseSeries>(log(tau->t));
    }
  };
  cs.push_back({"11x-fjrw", "<e3,e3,e3,e5>_{0,4} = 1/h at N = 4 (h = 6), W = 14, 400 bits, |err| < 1e-50", 0, [ensure] {
                  ensure();
                  Outcome o;
                  auto mc = mirror_constants(4, 400);
                  auto c = extract_correlator(*tau, *lt, mc, Side::FJRW, 0, parse_insertions("e3,e3,e3,e5", 4, Side::FJRW));
                  BigFloat err = (c.value - BigComplex(GR::frac(1, 6), 400)).abs();
                  o.require(err < BigFloat("1e-50"), "target 1/6");
                  o.note("value " + str(c.value, 20));
                  return o;
                }});
  cs.push_back({"11x-sg", "SG <x2,x2,x2,x2^2>_{0,4} = -1/h^2 at N = 4 (h = 6), W = 14, 400 bits, |err| < 1e-50", 0,
                [ensure] {
                  ensure();
                  Outcome o;
                  auto mc = mirror_constants(4, 400);
                  auto c = extract_correlator(*tau, *lt, mc, Side::SG, 0, parse_insertions("x2,x2,x2,x2^2", 4, Side::SG));
                  BigFloat err = (c.value - BigComplex(GR::frac(-1, 36), 400)).abs();
                  o.require(err < BigFloat("1e-50"), "target -1/36");
                  o.note("value " + str(c.value, 20));
                  return o;
                }});
  cs.push_back({"11x-oracle", "SG four-point from tau equals the flat-coordinate residue oracle at N = 4 (|err| < 1e-50)", 0,
                [ensure] {
                  ensure();
                  Outcome o;
                  auto mc = mirror_constants(4, 400);
                  auto orc = sg_four_point_oracle(4);
                  auto c = extract_correlator(*tau, *lt, mc, Side::SG, 0, parse_insertions("x2,x2,x2,x2^2", 4, Side::SG));
                  BigFloat err = (c.value - BigComplex(GR(orc.flat), 400)).abs();
                  o.require(err < BigFloat("1e-50"), "oracle");
                  o.note("oracle naive " + orc.naive.get_str() + " flat " + orc.flat.get_str() + ", tau " + str(c.value, 20));
                  // FJRW side through the mirror map carries the same correction: 1/(2h)
                  auto f = extract_correlator(*tau, *lt, mc, Side::FJRW, 0, parse_insertions("e3,e3,e3,e5", 4, Side::FJRW));
                  o.note("FJRW tau " + str(f.value, 20));
                  return o;
                }});
  return cs;
}

bool run(const std::vector<Criterion>& cs) {
  bool all = true;
  for (auto& c : cs) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.limit_s > 0 && s > c.limit_s) o.require(false, "runtime " + sci(s) + " s over limit");
    all = all && o.pass;
    std::ostringstream os;
    os.precision(2);
    os << std::fixed << s;
    std::cout << (o.pass ? "PASS " : "FAIL ") << "[" << c.id << "] " << c.title << " (" << os.str() << " s"
              << (c.limit_s > 0 ? ", limit " + std::to_string(static_cast<int>(c.limit_s)) + " s" : "") << ")";
    if (!o.detail.empty()) std::cout << " -- " << o.detail;
    std::cout << std::endl;
  }
  return all;
}

}  // namespace

int main(int argc, char** argv) {
  bool extended = false;
  for (int i = 1; i < argc; ++i) {
    if (!std::strcmp(argv[i], "--extended")) {
      extended = true;
    } else {
      std::cerr << "usage: acceptance [--extended]\n";
      return 2;
    }
  }
  bool ok = run(fast_suite());
  std::cout << (ok ? "fast suite: PASS" : "fast suite: FAIL") << std::endl;
  if (extended) {
    bool ext = run(extended_suite());
    std::cout << (ext ? "extended suite: PASS" : "extended suite: FAIL (does not affect exit status)") << std::endl;
  }
  return ok ? 0 : 1;
}
