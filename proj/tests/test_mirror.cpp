#include "test_util.hpp"

#include "dntau/mirror.hpp"

using namespace dntau;

namespace {

BigFloat dist(const BigComplex& a, const GR& b) { return (a - BigComplex(b, a.bits())).abs(); }

const BigFloat& tol50() {
  static const BigFloat t("1e-50");
  return t;
}

struct TauCase {
  TauSeries tau;
  SparseSeries log_tau;
};

const TauCase& tau_for(int N) {
  static std::map<int, TauCase> cache;
  auto it = cache.find(N);
  if (it == cache.end()) {
    // weight 9 at N = 3 holds <e3,e3,e3>
    TauSeries t = compute_tau(Params(N), N == 3 ? 9 : 7);
    it = cache.emplace(N, TauCase{t, log(t.t)}).first;
  }
  return it->second;
}

}  // namespace

TEST_SUITE("mirror") {
  TEST_CASE("constants") {
    for (int N = 3; N <= 6; ++N) {
      auto mc = mirror_constants(N, 400);
      CHECK_MESSAGE(verify_mirror_constants(mc).pass, verify_mirror_constants(mc).to_json().dump());
      CHECK(mc.h == 2 * N - 2);
      CHECK(mc.m[1] == 1);
      CHECK(mc.m[N] == N - 1);
      mpq_class two_h(2, mc.h);
      two_h.canonicalize();
      CHECK(mc.D == 1 - two_h);
      CHECK(dist(mc.rho[N], GR(1)) < tol50());
      // rho_1^2 = -eta
      CHECK((mc.rho[1] * mc.rho[1] + mc.eta).abs() < tol50());
      for (int i = 1; i <= N; ++i) CHECK(mc.star(mc.star(i)) == i);
    }
    CHECK_THROWS(mirror_constants(2, 400));
  }

  TEST_CASE("residue pairing agrees with the local algebra") {
    for (int N = 3; N <= 6; ++N)
      for (int i = 1; i <= N; ++i)
        for (int j = 1; j <= N; ++j) CHECK(residue_pairing(N, i, j) == local_residue(N, {i, j}));
    CHECK(residue_pairing(4, 1, 3) == mpq_class(-1, 12));
    CHECK(residue_pairing(4, 4, 4) == -1);
    CHECK(local_residue(4, {1, 1, 2}) == local_residue(4, {1, 3}) * 0 + local_residue(4, {2, 1, 1}));
  }

  TEST_CASE("insertion parsing") {
    auto f = parse_insertions("e0, e1, e3:2", 3, Side::FJRW);
    REQUIRE(f.size() == 3);
    CHECK(f[0] == Insertion{3, 0});
    CHECK(f[1] == Insertion{1, 0});
    CHECK(f[2] == Insertion{2, 2});
    for (auto& x : f) CHECK(parse_insertions(insertion_label(x, 3, Side::FJRW), 3, Side::FJRW).front() == x);
    auto s = parse_insertions("1,x2,phi3", 4, Side::SG);
    CHECK(s[0].slot == 1);
    CHECK(s[1].slot == 2);
    CHECK(s[2].slot == 3);
    CHECK_THROWS(parse_insertions("e2", 3, Side::FJRW));
    CHECK_THROWS(parse_insertions("e5", 3, Side::FJRW));
    CHECK_THROWS(parse_insertions("e1:x", 3, Side::FJRW));
    CHECK_THROWS(parse_insertions("", 3, Side::FJRW));
    CHECK(parse_side("sg") == Side::SG);
    CHECK_THROWS(parse_side("gw"));
  }

  TEST_CASE("BKP time of an insertion") {
    for (int N : {3, 4, 5})
      for (int slot = 1; slot <= N; ++slot)
        for (int k = 0; k <= 2; ++k) {
          Insertion x{slot, k};
          auto [a, m] = bkp_time(x, N);
          CHECK(m % 2 == 1);
          CHECK(insertion_of(a, m, N) == x);
        }
    CHECK(bkp_time({3, 1}, 3) == std::pair{2, 3});
    CHECK(bkp_time({1, 1}, 3) == std::pair{1, 5});
  }

  TEST_CASE("dictionary factors") {
    auto mc = mirror_constants(3, 400);
    CHECK(dist(dictionary_factor(mc, Side::SG, {1, 0}), GR::i()) < tol50());
    auto f2 = dictionary_factor(mc, Side::SG, {3, 0});
    auto want = BigComplex(GR(0, 2), 400) / mc.rho[1];
    CHECK((f2 - want).abs() < tol50());
    // hbar_FJRW = rho_1^2 / c^2
    auto hf = side_hbar(mc, Side::FJRW);
    CHECK((hf * mc.c * mc.c - mc.rho[1] * mc.rho[1]).abs() < tol50());
  }

  TEST_CASE("selection rules") {
    auto ins = [](const char* s, int N) { return parse_insertions(s, N, Side::FJRW); };
    CHECK(selection_rules(3, ins("e0,e0,e1", 3), 0).admissible());
    CHECK_FALSE(selection_rules(3, ins("e3,e3,e3", 3), 0).admissible());
    CHECK(selection_rules(3, ins("e0,e0,e3,e3", 3), 0).admissible());
    CHECK_FALSE(selection_rules(3, ins("e1", 3), 0).stable);
    CHECK(dimension_genus(3, ins("e0,e0,e1", 3)) == 0);
    CHECK(dimension_genus(4, ins("e1,e1,e5", 4)) == 0);
  }

  TEST_CASE("<e0,e0,e1> = -1/(N-1) at 400 bits") {
    for (int N : {3, 4}) {
      auto mc = mirror_constants(N, 400);
      const auto& tc = tau_for(N);
      auto c = extract_correlator(tc.tau, tc.log_tau, mc, Side::FJRW, 0, parse_insertions("e0,e0,e1", N, Side::FJRW));
      CHECK_FALSE(c.forbidden);
      CHECK(dist(c.value, GR(mpq_class(-1, N - 1))) < tol50());
    }
  }

  TEST_CASE("forbidden correlators extract to zero") {
    auto mc = mirror_constants(3, 400);
    const auto& tc = tau_for(3);
    auto c = extract_correlator(tc.tau, tc.log_tau, mc, Side::FJRW, 0, parse_insertions("e3,e3,e3", 3, Side::FJRW));
    CHECK(c.forbidden);
    CHECK(c.value.abs() < tol50());
    auto r = verify_selection_rules(tc.tau, mc);
    CHECK_MESSAGE(r.pass, r.to_json().dump());
  }

  TEST_CASE("all genus-0 three-point correlators") {
    for (int N : {3, 4}) {
      auto mc = mirror_constants(N, 400);
      auto r = verify_three_point(tau_for(N).tau, mc, 1e-50);
      CHECK_MESSAGE(r.pass, r.to_json().dump());
    }
  }

  TEST_CASE("dictionaries round trip and compose") {
    auto mc = mirror_constants(3, 400);
    auto r = verify_dictionaries(tau_for(3).tau, mc);
    CHECK_MESSAGE(r.pass, r.to_json().dump());
  }

  TEST_CASE("a perturbed tau fails the correlator check") {
    auto mc = mirror_constants(3, 400);
    TauSeries bad = tau_for(3).tau;
    const auto& sp = bad.t.space();
    Mono m = mono_unit(time_index(sp, 2, 1), 2);
    m[time_index(sp, 1, 1)] = 1;
    bad.t = bad.t + SparseSeries::monomial(sp, m, GR::frac(1, 5));
    auto r = verify_correlator(bad, mc, Side::FJRW, 0, parse_insertions("e0,e0,e1", 3, Side::FJRW), GR::frac(-1, 2),
                               1e-50);
    CHECK_FALSE(r.pass);
    auto good = verify_correlator(tau_for(3).tau, mc, Side::FJRW, 0, parse_insertions("e0,e0,e1", 3, Side::FJRW),
                                  GR::frac(-1, 2), 1e-50);
    CHECK(good.pass);
  }

  TEST_CASE("extraction errors") {
    auto mc3 = mirror_constants(3, 256);
    auto mc4 = mirror_constants(4, 256);
    const auto& tc = tau_for(3);
    CHECK_THROWS(extract_correlator(tc.tau, tc.log_tau, mc4, Side::FJRW, 0, {{1, 0}, {1, 0}, {1, 0}}));
    CHECK_THROWS(extract_correlator(tc.tau, tc.log_tau, mc3, Side::FJRW, 0, {{2, 3}, {2, 0}, {1, 0}}));
  }

  TEST_CASE("flat-structure oracle for the SG four-point function") {
    for (int N = 4; N <= 7; ++N) {
      auto o = sg_four_point_oracle(N);
      long h = 2 * N - 2;
      CHECK(o.naive == mpq_class(-1, h * h));
      CHECK(o.flat_shift == mpq_class(1, 2 * h * h));
      CHECK(o.flat == mpq_class(-1, 2 * h * h));
    }
    CHECK_THROWS(sg_four_point_oracle(3));
  }
}
