#include "dntau/cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "dntau/asymptotics.hpp"
#include "dntau/hirota.hpp"
#include "dntau/matrixmodel.hpp"
#include "dntau/mirror.hpp"
#include "dntau/operators.hpp"
#include "dntau/parallel.hpp"
#include "dntau/pfaffian.hpp"
#include "dntau/powersums.hpp"
#include "dntau/tau.hpp"
#include "dntau/twopoint.hpp"

namespace dntau {

namespace {

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct Options {
  int N = 2;
  long weight = 6;
  long order = 12;
  long K = 4;
  int a = 2, b = 2;
  int N1 = 0, N2 = 0;
  int m = -1;
  long orders = 3;
  int n = 3;
  long k = 0;
  double z = 3.0;
  int terms = 4;
  unsigned prec = kDefaultPrecisionBits;
  int threads = 0;
  int g = 0;
  std::string ins = "e0,e0,e1";
  std::string side = "fjrw";
  std::string format = "json";
  std::string out;
  bool timings = false;
  bool bless = false;
  std::string dir = "tests/golden";
};

using Clock = std::chrono::steady_clock;

class Timer {
public:
  explicit Timer(nlohmann::json& sink) : sink_(sink) {}
  template <class F>
  auto operator()(const std::string& what, F&& f) {
    auto t0 = Clock::now();
    auto r = f();
    sink_[what] = std::chrono::duration<double>(Clock::now() - t0).count();
    return r;
  }

private:
  nlohmann::json& sink_;
};

CheckReport from_identity(const IdentityReport& r) {
  CheckReport c;
  c.check = r.name;
  c.pass = r.pass;
  c.data["detail"] = r.detail;
  return c;
}

MiwaConfig miwa_config(const Options& o) {
  MiwaConfig cfg = default_miwa_config(o.weight);
  if (o.N1 || o.N2) {
    cfg.N1 = o.N1;
    cfg.N2 = o.N2;
    cfg.W = o.weight;
    int need = min_odd_faithful_vars(o.weight);
    if ((o.N1 && o.N1 < need) || (o.N2 && o.N2 < need))
      throw UsageError("N1/N2 below " + std::to_string(need) + " do not invert faithfully at weight " +
                       std::to_string(o.weight));
  }
  try {
    cfg.validate();
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
  return cfg;
}

struct TauBundle {
  MiwaConfig cfg;
  SparseSeries miwa;
  TauSeries tau;
};

TauBundle tau_bundle(const Options& o) {
  Params p(o.N);
  TauBundle t;
  t.cfg = miwa_config(o);
  TwoPointSet tp = build_twopoints(p, std::max<long>(o.weight, 1));
  t.miwa = miwa_tau(tp, t.cfg);
  t.tau = miwa_invert(p, t.miwa, t.cfg);
  return t;
}

nlohmann::json tau_params(const Options& o, const MiwaConfig& cfg) {
  return {{"N", o.N}, {"h", 2 * o.N - 2}, {"weight", o.weight}, {"N1", cfg.N1}, {"N2", cfg.N2}};
}

bool wave_pairs_agree(const WavePair& x, const WavePair& y) { return x.c1.agrees(y.c1) && x.c2.agrees(y.c2); }

Report cmd_wave(const Options& o) {
  Report r;
  r.command = "wave";
  Params p(o.N);
  r.params = {{"N", o.N}, {"h", p.h}, {"order", o.order}};
  Timer t(r.timings);
  WavePair w = t("solve_wave", [&] { return solve_wave(p, o.order); });
  WavePair g = t("gaussian_oracle", [&] { return gaussian_oracle(p, o.order); });
  CheckReport c;
  c.check = "wave_vs_gaussian_oracle";
  c.pass = wave_pairs_agree(w, g);
  r.checks.push_back(c);
  r.artifacts["wave"] = w.to_json();
  return r;
}

Report cmd_basis(const Options& o) {
  Report r;
  r.command = "basis";
  Params p(o.N);
  r.params = {{"N", o.N}, {"h", p.h}, {"K", o.K}, {"order", o.order}};
  Timer t(r.timings);
  GrBasis B = t("build_basis", [&] { return build_basis(p, o.K, o.order); });
  CheckReport c;
  c.check = "eigenvector";
  c.pass = true;
  for (auto& [k, psi] : B.psis) {
    WavePair lhs = apply_A(p, psi), rhs = GR(-k) * psi;
    bool ok = wave_pairs_agree(lhs, rhs);
    c.data["k" + std::to_string(k)] = ok;
    c.pass = c.pass && ok;
    r.artifacts["psi"][std::to_string(k)] = psi.to_json();
  }
  r.checks.push_back(c);
  return r;
}

Report cmd_twopoint(const Options& o) {
  Report r;
  r.command = "twopoint";
  Params p(o.N);
  if (o.a > o.b) throw UsageError("two-point pairs are (1,1), (1,2), (2,2)");
  r.params = {{"N", o.N}, {"h", p.h}, {"a", o.a}, {"b", o.b}, {"K", o.K}, {"order", o.order}};
  Timer t(r.timings);
  GrBasis B = t("build_basis", [&] { return build_basis(p, o.K, o.order); });
  TwoPoint tp = t("build_twopoint", [&] { return build_twopoint(B, o.a, o.b, o.K, o.order); });
  if (o.a == 2 && o.b == 2) {
    TwoPoint cf = closed_form_phi22(p, tp.window);
    CheckReport c;
    c.check = "closed_form_phi22";
    c.pass = cf.regular == tp.regular && cf.kernel_multiple == tp.kernel_multiple;
    c.data["window"] = tp.window;
    r.checks.push_back(c);
  }
  if (o.a == o.b) {
    CheckReport c;
    c.check = "regular_part_vanishes_at_infinity";
    c.pass = tp.regular.constant_term().is_zero();
    r.checks.push_back(c);
  }
  r.artifacts["twopoint"] = tp.to_json();
  return r;
}

Report cmd_tau(const Options& o, TauSeries* keep) {
  Report r;
  r.command = "tau";
  Timer t(r.timings);
  TauBundle tb = t("compute_tau", [&] { return tau_bundle(o); });
  r.params = tau_params(o, tb.cfg);
  CheckReport c;
  c.check = "miwa_round_trip";
  SparseSeries back = t("miwa_substitute", [&] { return miwa_substitute(tb.tau, tb.cfg, tb.miwa.space()); });
  c.pass = back == tb.miwa;
  r.checks.push_back(c);
  r.artifacts["tau"] = tb.tau.to_json();
  if (keep) *keep = tb.tau;
  return r;
}

std::vector<CheckReport> run_verify(const std::string& what, const Options& o, nlohmann::json& timings) {
  Timer t(timings);
  Params p(o.N);
  std::vector<CheckReport> out;
  bool all = what == "all";
  auto want = [&](const char* s) { return all || what == s; };
  bool need_tau = want("hirota") || want("string") || want("symmetry") || want("rationality");
  TauBundle tb;
  if (need_tau) tb = t("tau", [&] { return tau_bundle(o); });
  if (want("hirota")) {
    std::vector<int> ms = o.m >= 0 ? std::vector<int>{o.m} : std::vector<int>{0, 1};
    for (int m : ms) {
      if (all && hirota_exact_window(tb.tau, m) < 0) continue;
      out.push_back(t("hirota_m" + std::to_string(m), [&] { return verify_hirota(tb.tau, m); }));
    }
  }
  if (want("string")) out.push_back(t("string", [&] { return verify_string(tb.tau); }));
  if (want("symmetry")) out.push_back(t("symmetry", [&] { return verify_symmetry(tb.tau); }));
  if (want("rationality"))
    out.push_back(t("rationality", [&] { return verify_rationality(tb.tau, &tb.miwa, tb.cfg.N1); }));
  if (want("double-integrals")) {
    out.push_back(t("saddle", [&] { return verify_saddle(p); }));
    out.push_back(t("double-integrals", [&] { return verify_double_integrals(p, o.orders); }));
  }
  if (want("ip"))
    for (int a : {1, 2})
      out.push_back(t("ip" + std::to_string(a), [&] { return verify_Ip_relation(a, -2, 3, p, o.orders + 2); }));
  if (want("schur")) {
    int hi = all ? 3 : o.n;
    for (int n = all ? 1 : o.n; n <= hi; ++n)
      out.push_back(t("schur" + std::to_string(n), [&] { return from_identity(verify_schur_pfaffian(n)); }));
    for (int s : {2, 4, 6})
      out.push_back(t("pf_squared" + std::to_string(s), [&] { return from_identity(verify_pf_squared(s, 7u + s)); }));
  }
  if (want("debruijn")) {
    // kernel x - y
    std::vector<std::vector<GR>> ker{{0, -1}, {1, 0}};
    for (int two_n : {2, 4})
      out.push_back(t("debruijn" + std::to_string(two_n),
                      [&] { return from_identity(verify_de_bruijn(de_bruijn_example(two_n, ker))); }));
  }
  if (want("hciz")) {
    out.push_back(t("hciz", [&] { return verify_hciz(2, {1, 2}, {3, 5}); }));
    out.push_back(t("det_identities", [&] { return verify_det_identities(2); }));
  }
  if (want("quadrature")) {
    if (p.h % 4 == 2) {
      WatsonTask wt{p.h, o.k, o.z, 256};
      out.push_back(t("quadrature", [&] { return quadrature_vs_asymptotics(wt, o.terms); }));
    } else if (!all) {
      throw UsageError("the Watson quadrature converges only for h = 2 mod 4");
    }
    out.push_back(t("int_sing", [&] { return verify_int_sing(2, 1); }));
  }
  if (all && o.N >= 3) {
    MirrorConstants mc = mirror_constants(o.N, o.prec);
    out.push_back(t("mirror_constants", [&] { return verify_mirror_constants(mc); }));
    out.push_back(t("mirror_dictionaries", [&] { return verify_dictionaries(tb.tau, mc); }));
    out.push_back(t("selection_rules", [&] { return verify_selection_rules(tb.tau, mc); }));
  }
  return out;
}

Report cmd_verify(const std::string& what, const Options& o) {
  Report r;
  r.command = "verify " + what;
  r.params = {{"N", o.N}, {"h", 2 * o.N - 2}, {"weight", o.weight}};
  if (what == "hirota" && o.m >= 0) r.params["m"] = o.m;
  r.checks = run_verify(what, o, r.timings);
  return r;
}

Report cmd_mirror_constants(const Options& o) {
  Report r;
  r.command = "mirror constants";
  r.params = {{"N", o.N}, {"prec", o.prec}};
  if (o.N < 3) throw UsageError("mirror needs N >= 3");
  MirrorConstants mc = mirror_constants(o.N, o.prec);
  r.checks.push_back(verify_mirror_constants(mc));
  nlohmann::json pairing;
  for (int i = 1; i <= o.N; ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int j = 1; j <= o.N; ++j) row.push_back(residue_pairing(o.N, i, j).get_str());
    pairing.push_back(row);
  }
  r.artifacts["constants"] = mc.to_json();
  r.artifacts["residue_pairing"] = pairing;
  return r;
}

Report cmd_mirror_correlator(const Options& o) {
  Report r;
  r.command = "mirror correlator";
  if (o.N < 3) throw UsageError("mirror needs N >= 3");
  Side side;
  std::vector<Insertion> ins;
  try {
    side = parse_side(o.side);
    ins = parse_insertions(o.ins, o.N, side);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  long w = 0;
  for (auto& x : ins) w += bkp_time(x, o.N).second;
  Options oo = o;
  oo.weight = std::max(w, 1L);
  Timer t(r.timings);
  TauBundle tb = t("tau", [&] { return tau_bundle(oo); });
  MirrorConstants mc = mirror_constants(o.N, o.prec);
  Correlator c =
      t("extract", [&] { return extract_correlator(tb.tau, log(tb.tau.t), mc, side, o.g, ins); });
  r.params = tau_params(oo, tb.cfg);
  r.params["prec"] = o.prec;
  r.params["side"] = side_name(side);
  r.params["g"] = o.g;
  r.params["insertions"] = o.ins;
  r.artifacts["correlator"] = c.to_json(o.N);
  return r;
}

Report cmd_bench(const Options& o) {
  Report r;
  r.command = "bench";
  r.include_timings = true;
  r.params = {{"N", o.N}, {"weight", o.weight}};
  Timer t(r.timings);
  Params p(o.N);
  t("solve_wave", [&] { return solve_wave(p, 6 * (p.h + 1)); });
  TauBundle tb = t("tau", [&] { return tau_bundle(o); });
  r.checks.push_back(t("hirota_m0", [&] { return verify_hirota(tb.tau, 0); }));
  r.checks.push_back(t("string", [&] { return verify_string(tb.tau); }));
  r.checks.push_back(t("double-integrals", [&] { return verify_double_integrals(p, 3); }));
  r.artifacts["tau_terms"] = tb.tau.t.size();
  return r;
}

void emit(const Report& r, const Options& o, const TauSeries* csv_tau, std::ostream& out) {
  std::ostringstream body;
  if (o.format == "csv") {
    if (csv_tau) {
      body << csv_tau->to_csv();
    } else {
      body << "check,pass\n";
      for (auto& c : r.checks) body << c.check << "," << (c.pass ? "true" : "false") << "\n";
    }
  } else {
    body << canonical_dump(r.to_json()) << "\n";
  }
  if (o.out.empty()) {
    out << body.str();
  } else {
    std::ofstream f(o.out, std::ios::binary);
    if (!f) throw UsageError("cannot open " + o.out);
    f << body.str();
  }
}

int cmd_golden(const Options& o, std::ostream& out, std::ostream& err) {
  namespace fs = std::filesystem;
  if (o.bless) fs::create_directories(o.dir);
  int bad = 0;
  for (auto& gc : golden_cases()) {
    std::ostringstream got, e;
    int code = run_cli(gc.args, got, e);
    fs::path path = fs::path(o.dir) / gc.file;
    if (code != 0) {
      err << "golden " << gc.file << ": command exited " << code << ": " << e.str();
      ++bad;
      continue;
    }
    if (o.bless) {
      std::ofstream(path, std::ios::binary) << got.str();
      out << "blessed " << gc.file << "\n";
      continue;
    }
    std::ifstream f(path, std::ios::binary);
    if (!f) {
      err << "golden " << gc.file << ": missing (run with --bless)\n";
      ++bad;
      continue;
    }
    std::stringstream want;
    want << f.rdbuf();
    bool same = want.str() == got.str();
    out << (same ? "ok       " : "MISMATCH ") << gc.file << "\n";
    bad += !same;
  }
  return bad ? 1 : 0;
}

}  // namespace

const std::vector<GoldenCase>& golden_cases() {
  static const std::vector<GoldenCase> cases = {
      {"wave_N2_order12.json", {"wave", "--N", "2", "--order", "12"}},
      {"wave_N3_order15.json", {"wave", "--N", "3", "--order", "15"}},
      {"basis_N2_K3.json", {"basis", "--N", "2", "--K", "3", "--order", "8"}},
      {"twopoint22_N2.json", {"twopoint", "--N", "2", "--a", "2", "--b", "2", "--K", "6", "--order", "6"}},
      {"twopoint12_N2.json", {"twopoint", "--N", "2", "--a", "1", "--b", "2", "--K", "6", "--order", "6"}},
      {"tau_N2_W6.json", {"tau", "--N", "2", "--weight", "6"}},
      {"tau_N3_W7.csv", {"tau", "--N", "3", "--weight", "7", "--format", "csv"}},
      {"verify_string_N2_W6.json", {"verify", "string", "--N", "2", "--weight", "6"}},
      {"mirror_constants_N3.json", {"mirror", "constants", "--N", "3", "--prec", "512"}},
      {"correlator_N3_e0e0e1.json", {"mirror", "correlator", "--N", "3", "--g", "0", "--ins", "e0,e0,e1"}},
  };
  return cases;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Exact tau-function engine for the D_N (h,2)-reduced 2-component BKP hierarchy", "dn-tau"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  auto common = [&](CLI::App* s) {
    s->add_option("--N", o.N, "D_N rank, h = 2N-2")->check(CLI::Range(2, 16));
    s->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    s->add_option("--out", o.out, "write the report to a file");
    s->add_option("--threads", o.threads, "worker threads (default DNTAU_THREADS or all cores)")
        ->check(CLI::Range(1, 256));
    s->add_flag("--timings", o.timings, "include wall-clock timings (never hashed)");
  };
  auto weight_opts = [&](CLI::App* s) {
    s->add_option("--weight", o.weight, "weight window W")->check(CLI::Range(1L, 40L));
    s->add_option("--N1", o.N1, "Miwa variables in block 1")->check(CLI::Range(0, kMaxVars));
    s->add_option("--N2", o.N2, "Miwa variables in block 2")->check(CLI::Range(0, kMaxVars));
  };

  std::string verify_what;
  std::function<Report()> action;
  const TauSeries* csv_tau = nullptr;
  TauSeries csv_tau_store;

  auto* wave = app.add_subcommand("wave", "wave function Psi to a given order");
  common(wave);
  wave->add_option("--order", o.order, "truncation order in 1/z")->check(CLI::Range(1L, 400L));
  wave->callback([&] { action = [&] { return cmd_wave(o); }; });

  auto* basis = app.add_subcommand("basis", "Kac-Schwarz basis Psi_k, |k| <= K");
  common(basis);
  basis->add_option("--K", o.K, "basis depth")->check(CLI::Range(1L, 60L));
  basis->add_option("--order", o.order, "truncation order")->check(CLI::Range(1L, 400L));
  basis->callback([&] { action = [&] { return cmd_basis(o); }; });

  auto* tp = app.add_subcommand("twopoint", "two-point function phi_ab");
  common(tp);
  tp->add_option("--a", o.a)->check(CLI::Range(1, 2));
  tp->add_option("--b", o.b)->check(CLI::Range(1, 2));
  tp->add_option("--K", o.K, "basis depth")->check(CLI::Range(1L, 60L));
  tp->add_option("--order", o.order, "bidegree window")->check(CLI::Range(1L, 200L));
  tp->callback([&] { action = [&] { return cmd_twopoint(o); }; });

  auto* tau = app.add_subcommand("tau", "tau-function coefficients to weight W");
  common(tau);
  weight_opts(tau);
  tau->callback([&] {
    action = [&] {
      Report r = cmd_tau(o, &csv_tau_store);
      if (o.format == "csv") csv_tau = &csv_tau_store;
      return r;
    };
  });

  auto* verify = app.add_subcommand("verify", "run identity checks");
  verify->require_subcommand(1);
  for (const char* name : {"hirota", "string", "symmetry", "rationality", "double-integrals", "ip", "schur", "debruijn", "hciz",
                           "quadrature", "all"}) {
    auto* s = verify->add_subcommand(name);
    common(s);
    weight_opts(s);
    std::string nm = name;
    if (nm == "hirota") s->add_option("--m", o.m, "Hirota level (default 0 and 1)")->check(CLI::Range(0, 8));
    if (nm == "double-integrals" || nm == "ip") s->add_option("--orders", o.orders, "correction orders")->check(CLI::Range(1L, 12L));
    if (nm == "schur") s->add_option("--n", o.n, "2n symbols")->check(CLI::Range(1, 3));
    if (nm == "quadrature") {
      s->add_option("--k", o.k, "Psi_k^(2) index")->check(CLI::Range(0L, 20L));
      s->add_option("--z", o.z, "real z > 0")->check(CLI::PositiveNumber);
      s->add_option("--terms", o.terms, "partial-sum terms")->check(CLI::Range(1, 40));
    }
    if (nm == "all") s->add_option("--prec", o.prec, "bits for the mirror checks")->check(CLI::Range(64u, 8192u));
    s->callback([&, nm] { action = [&, nm] { return cmd_verify(nm, o); }; });
  }

  auto* mirror = app.add_subcommand("mirror", "mirror-symmetry dictionaries and correlators");
  mirror->require_subcommand(1);
  auto* mconst = mirror->add_subcommand("constants");
  common(mconst);
  mconst->add_option("--prec", o.prec, "bits")->check(CLI::Range(64u, 8192u));
  mconst->callback([&] { action = [&] { return cmd_mirror_constants(o); }; });
  auto* mcorr = mirror->add_subcommand("correlator");
  common(mcorr);
  mcorr->add_option("--prec", o.prec, "bits")->check(CLI::Range(64u, 8192u));
  mcorr->add_option("--g", o.g, "genus")->check(CLI::Range(0, 20));
  mcorr->add_option("--ins", o.ins, "insertions, e.g. e0,e0,e1 or phi1,x2:1");
  mcorr->add_option("--side", o.side, "fjrw or sg")->check(CLI::IsMember({"fjrw", "sg"}));
  mcorr->callback([&] { action = [&] { return cmd_mirror_correlator(o); }; });

  auto* bench = app.add_subcommand("bench", "time the main pipeline stages");
  common(bench);
  weight_opts(bench);
  bench->callback([&] { action = [&] { return cmd_bench(o); }; });

  bool golden_mode = false;
  auto* golden = app.add_subcommand("golden", "compare or regenerate the golden corpus");
  golden->add_option("--dir", o.dir, "golden directory");
  golden->add_flag("--bless", o.bless, "overwrite the golden files");
  golden->callback([&] { golden_mode = true; });

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::CallForVersion& e) {
    out << kVersion << "\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }
  if (o.threads) set_worker_count(static_cast<size_t>(o.threads));
  try {
    if (golden_mode) return cmd_golden(o, out, err);
    if (!action) {
      err << "usage error: no command\n";
      return 2;
    }
    Report r = action();
    r.include_timings = r.include_timings || o.timings;
    if (o.threads) r.params["threads"] = o.threads;
    emit(r, o, csv_tau, out);
    return r.pass() ? 0 : 1;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run_cli(args, out, err);
}

}  // namespace dntau
