#include "test_util.hpp"

#include "dntau/hirota.hpp"
#include "dntau/tau.hpp"

using namespace dntau;

namespace {

// Shared h = 2, W = 6 tau; built once per process.
const TauSeries& tau_h2_w6() {
  static const TauSeries t = compute_tau(Params(2), 6);
  return t;
}

TauSeries perturbed(const TauSeries& tau, int a, int m, int e, const GR& c) {
  TauSeries out = tau;
  const auto& sp = tau.t.space();
  out.t = tau.t + SparseSeries::monomial(sp, mono_unit(time_index(sp, a, m), e), c);
  return out;
}

}  // namespace

TEST_SUITE("tau") {
  TEST_CASE("default Miwa configuration") {
    auto c6 = default_miwa_config(6);
    CHECK(c6.N1 == 3);
    CHECK(c6.N2 == 3);
    CHECK(default_miwa_config(14).N1 == 4);
    CHECK(default_miwa_config(1).N1 == 1);
    CHECK(c6.block_names(2).front() == "u2_1");
  }

  TEST_CASE("configuration validation") {
    MiwaConfig bad{1, 2, 6};
    CHECK_THROWS(bad.validate());
    MiwaConfig none{0, 0, 6};
    CHECK_THROWS(none.validate());
    MiwaConfig neg{2, 2, -1};
    CHECK_THROWS(neg.validate());
    CHECK_THROWS(compute_tau(Params(2), 6, MiwaConfig{1, 1, 6}));
  }

  TEST_CASE("tau starts at 1 and is graded") {
    const auto& t = tau_h2_w6();
    CHECK(t.t.constant_term() == 1);
    CHECK(t.h == 2);
    for (auto& [m, c] : t.t.terms()) CHECK(t.t.space()->admits(m));
  }

  TEST_CASE("Hirota m = 0, 1 at W = 6, h = 2") {
    for (int m : {0, 1}) {
      auto r = verify_hirota(tau_h2_w6(), m);
      CHECK_MESSAGE(r.pass, r.to_json().dump());
      CHECK(r.data["window"] == 6 - 2 * m);
    }
  }

  TEST_CASE("Hirota at h = 4") {
    auto tau = compute_tau(Params(3), 9);
    for (int m : {0, 1}) CHECK(verify_hirota(tau, m).pass);
  }

  TEST_CASE("string equation with fitted scalars") {
    auto r = verify_string(tau_h2_w6());
    CHECK(r.pass);
    CHECK(r.data["sigma1"] == "1/8");
    CHECK(r.data["sigma2"] == "1/8");
    auto r4 = verify_string(compute_tau(Params(3), 7));
    CHECK(r4.pass);
    CHECK(r4.data["sigma1"] == "1/16");
  }

  TEST_CASE("symmetry and rationality") {
    Params p(2);
    auto cfg = default_miwa_config(6);
    auto tp = build_twopoints(p, 6);
    auto miwa = miwa_tau(tp, cfg);
    auto tau = miwa_invert(p, miwa, cfg);
    CHECK(tau.t == tau_h2_w6().t);
    CHECK(verify_symmetry(tau).pass);
    auto r = verify_rationality(tau, &miwa, cfg.N1);
    CHECK(r.pass);
    CHECK(r.data["miwa_form_rational"] == true);
    CHECK(miwa_substitute(tau, cfg, miwa.space()) == miwa);
  }

  TEST_CASE("larger Miwa blocks give the same tau") {
    auto t44 = compute_tau(Params(2), 6, MiwaConfig{4, 4, 6});
    CHECK(t44.t == tau_h2_w6().t);
    auto t60 = compute_tau(Params(3), 7, MiwaConfig{5, 3, 7});
    CHECK(t60.t == compute_tau(Params(3), 7).t);
  }

  TEST_CASE("raising the weight does not change lower coefficients") {
    auto t8 = compute_tau(Params(2), 8);
    const auto& t6 = tau_h2_w6().t;
    const auto& s8 = t8.t.space();
    std::vector<int> map;
    for (auto& v : t6.space()->vars()) map.push_back(s8->require(v.name));
    std::vector<SparseSeries::Term> low;
    for (auto& t : t8.t.terms())
      if (s8->form(0, t.first) <= 6) low.push_back(t);
    CHECK(SparseSeries::from_terms(s8, low) == t6.embed(s8, map));
  }

  TEST_CASE("perturbations are detected") {
    // t1_1 t1_3 has weight 4, inside every window
    auto bad = perturbed(tau_h2_w6(), 1, 3, 1, GR::frac(1, 7));
    bad.t = bad.t + SparseSeries::monomial(bad.t.space(),
                                           [&] {
                                             Mono m = mono_unit(time_index(bad.t.space(), 1, 1));
                                             m[time_index(bad.t.space(), 1, 3)] = 1;
                                             return m;
                                           }(),
                                           GR(1));
    CHECK_FALSE(verify_hirota(bad, 0).pass);
    CHECK_FALSE(verify_string(bad).pass);
    auto odd = perturbed(tau_h2_w6(), 2, 3, 1, GR(1));
    CHECK_FALSE(verify_symmetry(odd).pass);
    auto irr = perturbed(tau_h2_w6(), 2, 1, 2, GR::i());
    CHECK_FALSE(verify_rationality(irr).pass);
  }

  TEST_CASE("hbar exponents") {
    CHECK(hbar_exponent(4, 1, 1) == mpq_class(-4, 5));
    CHECK(hbar_exponent(4, 2, 1) == mpq_class(-3, 5));
    CHECK(hbar_exponent(2, 1, 3) == 0);
    auto r = rho1(4, 256);
    auto sq = r * r;
    // rho1^2 = -e^{2 pi i/h} = -i at h = 4
    CHECK((sq + BigComplex(GR::i(), 256)).abs() < BigFloat("1e-70"));
  }

  TEST_CASE("serialization is deterministic") {
    const auto& t = tau_h2_w6();
    CHECK(t.to_json().dump() == compute_tau(Params(2), 6).to_json().dump());
    auto csv = t.to_csv();
    CHECK(csv.find('\n') != std::string::npos);
  }
}
