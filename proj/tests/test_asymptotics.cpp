#include "test_util.hpp"

#include "dntau/asymptotics.hpp"

using namespace dntau;

TEST_SUITE("asymptotics") {
  TEST_CASE("critical points of x^(2h+2) - (h+1) x^2") {
    for (int N : {2, 3, 4}) {
      Params p(N);
      int h = p.h;
      auto s = saddle_data(p);
      CHECK(s.xi[0] == 1);
      CHECK(s.xi[1] == 0);
      CHECK(s.u[0] == -h);
      CHECK(s.u[1] == 0);
      // second derivative / 2 at x = 1 is 2h(h+1), at x = 0 it is -(h+1)
      CHECK(s.c_sq[0] == -2 * h * (h + 1));
      CHECK(s.c_sq[1] == h + 1);
      CHECK(verify_saddle(p).pass);
    }
  }

  TEST_CASE("Watson expansion reproduces the closed form of Psi^(2)") {
    for (int N : {2, 3}) {
      Params p(N);
      long order = 6 * (p.h + 1);
      for (long k = 0; k <= 8; ++k) CHECK(expand_1d(2, k, p, order).agrees(psi2_closed_form(p, k, order), -order));
    }
  }

  TEST_CASE("h = 2 Watson series leading terms") {
    Params p(2);
    auto e = expand_1d(2, 0, p, 12);
    CHECK(e.get(0) == 1);
    CHECK(e.get(-6) == GR::frac(-5, 8));
    CHECK(e.get(-12) == GR(mpq_class(1155, 128)));
  }

  TEST_CASE("Gaussian expansion reproduces the wave function") {
    for (int N : {2, 3}) {
      Params p(N);
      long order = 4 * (p.h + 1);
      auto w = solve_wave(p, order);
      CHECK(expand_1d(1, 0, p, order).agrees(w.c1, -order));
      CHECK(expand_1d(2, 0, p, order).agrees(w.c2, -order));
    }
  }

  TEST_CASE("expansions distinguish k") {
    Params p(2);
    CHECK_FALSE(expand_1d(2, 1, p, 12).agrees(expand_1d(2, 2, p, 12), -12));
    CHECK_FALSE(expand_1d(1, 1, p, 12).agrees(expand_1d(1, -1, p, 12), -12));
  }

  TEST_CASE("double integrals equal the two-point functions") {
    for (int N : {2, 3}) {
      auto r = verify_double_integrals(Params(N), 3);
      CHECK_MESSAGE(r.pass, r.to_json().dump());
      CHECK(r.data["pair11"] == true);
      CHECK(r.data["pair12"] == true);
      CHECK(r.data["pair22"] == true);
    }
  }

  TEST_CASE("Gaussian double moments") {
    // Gamma(k+1/2) Gamma(l+1/2) / (2 pi)
    CHECK(gaussian_double_moment(0, 0) == mpq_class(1, 2));
    CHECK(gaussian_double_moment(1, 0) == mpq_class(1, 4));
    CHECK(gaussian_double_moment(1, 2) == mpq_class(3, 16));
    CHECK(gaussian_double_moment(3, 3) == mpq_class(225, 128));
    CHECK(gaussian_double_moment(2, 1) == gaussian_double_moment(1, 2));
  }

  TEST_CASE("constant-kernel part is half the kernel") {
    auto s = int_sing_series(6);
    Mono m{};
    CHECK(s.coeff(m) == GR::frac(1, 2));
    m[0] = 1;
    m[1] = -1;
    CHECK(s.coeff(m) == -1);
  }

  TEST_CASE("I_p relation for p in [-2, 3]") {
    for (int N : {2, 3})
      for (int a : {1, 2}) {
        auto r = verify_Ip_relation(a, -2, 3, Params(N), 5);
        CHECK_MESSAGE(r.pass, r.to_json().dump());
      }
  }

  TEST_CASE("I_p leading coefficient for a = 2") {
    // integral of exp(lambda (h+1) x^2 ...) x^{2p}: leading (2p-1)!!/(2(h+1))^p lambda^{-p-1/2}
    Params par(2);
    auto s = ip_series(2, 2, par, 11);
    CHECK(s.coeff(mono_unit(0, 5)) == GR(mpq_class(3, 36)));
  }

  TEST_CASE("argument errors") {
    CHECK_THROWS(expand_2d(2, 1, Params(2), 4));
  }
}
