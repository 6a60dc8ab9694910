#include "test_util.hpp"

#include <random>

#include "dntau/parallel.hpp"
#include "dntau/pfaffian.hpp"

using namespace dntau;

namespace {

SkewMatrix<GR> random_skew(size_t n, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> d(-9, 9);
  SkewMatrix<GR> M(n, GR());
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j) M.set(i, j, GR(mpq_class(d(rng), 1 + (d(rng) & 3)), d(rng)));
  return M;
}

std::vector<std::vector<GR>> dense(const SkewMatrix<GR>& M) {
  std::vector<std::vector<GR>> A(M.size(), std::vector<GR>(M.size()));
  for (size_t i = 0; i < M.size(); ++i)
    for (size_t j = 0; j < M.size(); ++j) A[i][j] = M.at(i, j);
  return A;
}

}  // namespace

TEST_SUITE("pfaffian") {
  TEST_CASE("small Pfaffians by hand") {
    SkewMatrix<GR> M2(2, GR());
    M2.set(0, 1, GR(7));
    CHECK(pfaffian(M2, GR(1)) == 7);
    SkewMatrix<GR> M4(4, GR());
    GR a12 = 2, a13 = GR(0, 1), a14 = 3, a23 = 5, a24 = GR(1, 1), a34 = -4;
    M4.set(0, 1, a12);
    M4.set(0, 2, a13);
    M4.set(0, 3, a14);
    M4.set(1, 2, a23);
    M4.set(1, 3, a24);
    M4.set(2, 3, a34);
    GR want = a12 * a34 - a13 * a24 + a14 * a23;
    CHECK(pfaffian(M4, GR(1)) == want);
    CHECK(pfaffian_recursive(M4, GR(1)) == want);
    CHECK(pfaffian(SkewMatrix<GR>(0, GR()), GR(1)) == 1);
  }

  TEST_CASE("memoized and plain recursion agree") {
    for (unsigned s = 1; s <= 4; ++s)
      for (size_t n : {2u, 4u, 6u, 8u}) {
        auto M = random_skew(n, s * 31 + n);
        CHECK(pfaffian(M, GR(1)) == pfaffian_recursive(M, GR(1)));
      }
  }

  TEST_CASE("Pf^2 = det for sizes up to 6") {
    for (int n : {2, 4, 6}) {
      auto r = verify_pf_squared(n, 7u + n);
      CHECK_MESSAGE(r.pass, r.detail);
    }
    for (unsigned s = 0; s < 3; ++s) {
      auto M = random_skew(6, 100 + s);
      GR pf = pfaffian(M, GR(1));
      CHECK(pf * pf == det_gauss(dense(M)));
      CHECK(det_laplace(dense(M), GR(), GR(1)) == det_gauss(dense(M)));
    }
  }

  TEST_CASE("odd skew determinants vanish") {
    auto A = dense(random_skew(5, 3));
    CHECK(det_gauss(A).is_zero());
    CHECK(det_laplace(A, GR(), GR(1)).is_zero());
  }

  TEST_CASE("scaling a row and column scales the Pfaffian once") {
    auto M = random_skew(6, 17);
    GR pf = pfaffian(M, GR(1));
    SkewMatrix<GR> S = M;
    for (size_t j = 0; j < 6; ++j)
      if (j != 2) S.set(2, j, GR(3) * M.at(2, j));
    CHECK(pfaffian(S, GR(1)) == GR(3) * pf);
  }

  TEST_CASE("Schur Pfaffian for n <= 3") {
    for (int n = 1; n <= 3; ++n) {
      auto r = verify_schur_pfaffian(n);
      CHECK_MESSAGE(r.pass, r.detail);
    }
    CHECK_THROWS(verify_schur_pfaffian(4));
  }

  TEST_CASE("de Bruijn with antisymmetric kernels") {
    // x - y and x y^2 - x^2 y
    std::vector<std::vector<GR>> k1{{0, -1}, {1}};
    std::vector<std::vector<GR>> k2{{0, 0, 0}, {0, 0, 1}, {0, -1}};
    for (int two_n : {2, 4}) {
      auto r1 = verify_de_bruijn(de_bruijn_example(two_n, k1));
      CHECK_MESSAGE(r1.pass, r1.detail);
      auto r2 = verify_de_bruijn(de_bruijn_example(two_n, k2));
      CHECK_MESSAGE(r2.pass, r2.detail);
    }
    CHECK_THROWS(verify_de_bruijn(de_bruijn_example(3, k1)));
  }

  TEST_CASE("errors") {
    CHECK_THROWS_AS(pfaffian(SkewMatrix<GR>(3, GR()), GR(1)), PfaffianError);
    CHECK_THROWS_AS(pfaffian_recursive(random_skew(14, 1), GR(1)), PfaffianError);
    SkewMatrix<GR> M(2, GR());
    CHECK_THROWS(M.set(1, 1, GR(1)));
  }

  TEST_CASE("result does not depend on the worker count") {
    auto M = random_skew(10, 5);
    set_worker_count(1);
    GR one = pfaffian(M, GR(1));
    set_worker_count(4);
    GR four = pfaffian(M, GR(1));
    set_worker_count(0);
    CHECK(one == four);
  }
}
