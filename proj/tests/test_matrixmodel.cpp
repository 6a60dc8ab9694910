#include "test_util.hpp"

#include <cmath>

#include "dntau/asymptotics.hpp"
#include "dntau/matrixmodel.hpp"

using namespace dntau;

namespace {

// Composite Simpson for (z/sqrt(pi)) int_0^inf exp(-z^2 y - y^3/3) y^{-1/2} dy after y = s^2.
double watson_h2_k0_simpson(double z) {
  const int n = 20000;
  const double L = 8.0, hs = L / n;
  auto f = [&](double s) { return 2.0 * std::exp(-z * z * s * s - std::pow(s, 6) / 3.0); };
  double acc = f(0) + f(L);
  for (int i = 1; i < n; ++i) acc += (i % 2 ? 4.0 : 2.0) * f(i * hs);
  return z / std::sqrt(M_PI) * acc * hs / 3.0;
}

}  // namespace

TEST_SUITE("matrixmodel") {
  TEST_CASE("Kronecker determinant identities") {
    for (int N = 1; N <= 3; ++N) {
      auto r = verify_det_identities(N);
      CHECK_MESSAGE(r.pass, r.to_json().dump());
    }
  }

  TEST_CASE("HCIZ: N = 1 is an exponential") {
    CHECK(hciz_quadrature({0.7}, {1.3}) == doctest::Approx(std::exp(-0.91)).epsilon(1e-14));
  }

  TEST_CASE("HCIZ: scalar B gives exp(-b Tr A)") {
    double q = hciz_quadrature({0.3, 1.1}, {0.7, 0.7});
    CHECK(std::abs(q - std::exp(-0.7 * 1.4)) < 1e-12);
  }

  TEST_CASE("HCIZ: N = 2 against the determinant formula") {
    auto r = verify_hciz(2, {0.2, 0.9}, {0.4, 1.7});
    CHECK_MESSAGE(r.pass, r.to_json().dump());
    auto r2 = verify_hciz(2, {1.5, -0.3}, {0.25, 2.0});
    CHECK(r2.pass);
    // swapping the roles of A and B leaves the integral unchanged
    CHECK(std::abs(hciz_quadrature({0.2, 0.9}, {0.4, 1.7}) - hciz_quadrature({0.4, 1.7}, {0.2, 0.9})) < 1e-13);
  }

  TEST_CASE("Watson quadrature against an independent Simpson rule") {
    for (double z : {2.0, 3.0}) {
      auto q = watson_quadrature({2, 0, z, 128});
      CHECK(std::abs(q.re().convert_to<double>() - watson_h2_k0_simpson(z)) < 1e-10);
      CHECK(std::abs(q.im().convert_to<double>()) < 1e-30);
    }
  }

  TEST_CASE("Watson quadrature within twice the first omitted term") {
    for (long k : {0L, 1L, 2L}) {
      auto r = quadrature_vs_asymptotics({2, k, 3.0, 256}, 2);
      CHECK_MESSAGE(r.pass, r.to_json().dump());
    }
    CHECK(quadrature_vs_asymptotics({6, 0, 3.0, 256}, 2).pass);
  }

  TEST_CASE("Watson partial sums at h = 2") {
    auto [s, next] = watson_partial_sum({2, 0, 3.0, 256}, 2);
    double want = 1.0 - 5.0 / 8.0 / std::pow(3.0, 6);
    CHECK(std::abs(s.re().convert_to<double>() - want) < 1e-15);
    CHECK(std::abs(next.re().convert_to<double>() - 1155.0 / 128.0 / std::pow(3.0, 12)) < 1e-15);
  }

  TEST_CASE("Watson quadrature refuses h = 0 mod 4") {
    CHECK_THROWS(watson_quadrature({4, 0, 3.0, 128}));
  }

  TEST_CASE("singular double integral") {
    CHECK(std::abs(int_sing_quadrature(2, 1) - 1.0 / 6.0) < 1e-10);
    CHECK(std::abs(int_sing_quadrature(1.5, 1.5)) < 1e-12);
    CHECK(std::abs(int_sing_quadrature(1, 3) - (1.0 - 3.0) / (2.0 * 4.0)) < 1e-10);
    CHECK(verify_int_sing(2, 1).pass);
  }

  TEST_CASE("numeric Gaussian moments agree with the exact ones") {
    for (long k = 0; k <= 3; ++k)
      for (long l = 0; l <= 2; ++l)
        CHECK(gaussian_double_moment_quadrature(k, l) ==
              doctest::Approx(gaussian_double_moment(k, l).get_d()).epsilon(1e-10));
  }

  TEST_CASE("normalization prefactor") {
    Params p(3);
    auto one = normalization_report(p, MiwaConfig{1, 1, 4});
    CHECK(one["numerator"] == "(1)");
    CHECK(one["degree"] == -(p.h / 2 + 1));
    CHECK(one["degree_check"] == true);
    auto two = normalization_report(Params(2), MiwaConfig{2, 2, 4});
    CHECK(two["degree_check"] == true);
    auto zero = normalization_report(p, MiwaConfig{0, 0, 0});
    CHECK(zero["numerator"] == "(1)");
    CHECK(zero["denominator"] == "(1)");
    CHECK(zero["degree"] == 0);
  }
}
