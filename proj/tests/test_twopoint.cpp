#include "test_util.hpp"

#include "dntau/twopoint.hpp"

using namespace dntau;

namespace {
Mono uzw(int a, int b) {
  Mono m{};
  m[0] = static_cast<int16_t>(a);
  m[1] = static_cast<int16_t>(b);
  return m;
}
}  // namespace

TEST_SUITE("twopoint") {
  TEST_CASE("kernel series coefficients") {
    auto sp = twopoint_region_space(3);
    auto K = kernel_series(sp);
    CHECK(K.coeff(uzw(0, 0)) == 1);
    CHECK(K.coeff(uzw(1, -1)) == -2);
    CHECK(K.coeff(uzw(2, -2)) == 2);
    CHECK(K.coeff(uzw(3, -3)) == -2);
  }

  TEST_CASE("kernel times its inverse") {
    auto sp = twopoint_region_space(8);
    auto K = kernel_series(sp);
    CHECK(K * invert_unit(K) == SparseSeries::constant(sp, 1));
    // (1 + w/z) K = 1 - w/z in the region ring
    auto r = SparseSeries::monomial(sp, uzw(1, -1), GR(1));
    auto one = SparseSeries::constant(sp, 1);
    CHECK((one + r) * K == one - r);
  }

  TEST_CASE("kernel identity (computed sign)") {
    for (long T : {4, 8, 12}) CHECK(kernel_identity_holds(T));
  }

  TEST_CASE("phi22 equals the closed form, h in {2,4}") {
    for (int N : {2, 3}) {
      Params p(N);
      long T = 2 * (2 * p.h + 2);
      auto B = build_basis(p, T, T);
      auto tp = build_twopoint(B, 2, 2, T, T);
      auto cf = closed_form_phi22(p, tp.window);
      CHECK(tp.window == T);
      CHECK(tp.kernel_multiple == GR::frac(1, 2));
      CHECK(tp.regular == cf.regular);
      CHECK(tp.regular.constant_term().is_zero());
    }
  }

  TEST_CASE("phi11 and phi12 regular parts") {
    Params p(2);
    auto B = build_basis(p, 6, 6);
    auto t11 = build_twopoint(B, 1, 1, 6, 6);
    auto t12 = build_twopoint(B, 1, 2, 6, 6);
    CHECK(t11.kernel_multiple == GR::frac(1, 2));
    CHECK(t12.kernel_multiple == GR());
    CHECK(t11.regular.constant_term().is_zero());
    CHECK_FALSE(t11.regular.is_zero());
    CHECK_FALSE(t12.regular.is_zero());
  }

  TEST_CASE("phi22 regular part: swap and parity") {
    Params p(2);
    auto cf = closed_form_phi22(p, 12);
    // (1/2) e^{g_z+g_w} K(z,w) - (1/2) K(z,w) is antisymmetric under z <-> w
    CHECK(swap_arguments(cf.regular) == -cf.regular);
    // only even powers of 1/z occur in Psi^(2), so the regular part is even
    CHECK(negate_arguments(cf.regular) == cf.regular);
  }

  TEST_CASE("a perturbed basis breaks the cross-check") {
    Params p(2);
    long T = 12;
    auto B = build_basis(p, T, T);
    auto bad = B;
    bad.psis[0].c2.add(-3, GR(1));
    auto tp = build_twopoint(bad, 2, 2, T, T);
    CHECK_FALSE(tp.regular == closed_form_phi22(p, T).regular);
    // off the diagonal the mismatch shows up as uncancelled mixed powers
    bad = B;
    bad.psis[1].c2.add(-3, GR(1));
    CHECK_THROWS_AS(build_twopoint(bad, 2, 2, T, T), SeriesError);
  }

  TEST_CASE("label and size errors") {
    Params p(2);
    auto B = build_basis(p, 3, 6);
    CHECK_THROWS(build_twopoint(B, 2, 1, 3, 6));
    CHECK_THROWS(build_twopoint(B, 1, 1, 5, 6));
    CHECK(twopoint_window(4, 9) == 4);
  }
}
