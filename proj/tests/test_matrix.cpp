#include <catch_amalgamated.hpp>

#include "tnorms/matrix.hpp"

using namespace tnorms;

TEST_CASE("kron identity and matrix units", "[matrix]") {
  CMatrix i2 = CMatrix::Identity(2, 2);
  REQUIRE(approx_equal(kron(i2, i2), CMatrix::Identity(4, 4)));

  // kron(e_12, e_21) has its single 1 at row (1,2) -> 2, col (2,1) -> 3
  CMatrix k = kron(matrix_unit(2, 0, 1), matrix_unit(2, 1, 0));
  CMatrix expect = CMatrix::Zero(4, 4);
  expect(1, 2) = 1.0;
  REQUIRE(approx_equal(k, expect));
}

TEST_CASE("op_norm basics", "[matrix]") {
  CMatrix d = CMatrix::Zero(2, 2);
  d(0, 0) = 3.0;
  d(1, 1) = 1.0;
  REQUIRE(op_norm(d) == Catch::Approx(3.0).margin(1e-12));

  const int n = 7;
  REQUIRE(op_norm(CMatrix::Ones(n, 1)) ==
          Catch::Approx(std::sqrt((double)n)).margin(1e-12));
  REQUIRE(op_norm(CMatrix::Zero(3, 3)) == 0.0);
}

TEST_CASE("op_norm of kron is multiplicative", "[matrix]") {
  for (int trial = 0; trial < 20; ++trial) {
    Rng rng(100 + trial);
    CMatrix a = gaussian_matrix(3, 3, rng);
    CMatrix b = gaussian_matrix(2, 2, rng);
    // oracle: SVD of the assembled dense product
    Eigen::JacobiSVD<CMatrix> svd(kron(a, b));
    REQUIRE(svd.singularValues()(0) ==
            Catch::Approx(op_norm(a) * op_norm(b)).margin(1e-9));
  }
}

TEST_CASE("direct_sum norm is the max", "[matrix]") {
  for (int trial = 0; trial < 20; ++trial) {
    Rng rng(300 + trial);
    CMatrix a = gaussian_matrix(3, 2, rng);
    CMatrix b = gaussian_matrix(2, 4, rng);
    Eigen::JacobiSVD<CMatrix> svd(direct_sum(a, b));
    REQUIRE(svd.singularValues()(0) ==
            Catch::Approx(std::max(op_norm(a), op_norm(b))).margin(1e-9));
    REQUIRE(approx_equal(direct_sum(a, b).adjoint(),
                         direct_sum(CMatrix(a.adjoint()),
                                    CMatrix(b.adjoint()))));
  }
  Rng rng(77);
  CMatrix a = gaussian_matrix(3, 3, rng);
  REQUIRE(op_norm(direct_sum(CMatrix(CMatrix::Zero(2, 2)), a)) ==
          Catch::Approx(op_norm(a)).margin(1e-12));
}

TEST_CASE("schur multiplier contractivity at scalar level", "[matrix]") {
  for (int trial = 0; trial < 100; ++trial) {
    Rng rng(500 + trial);
    CMatrix a = gaussian_matrix(4, 4, rng);
    CMatrix b = gaussian_matrix(4, 4, rng);
    REQUIRE(op_norm(hadamard(a, b)) <= op_norm(a) * op_norm(b) + 1e-9);
  }
}

TEST_CASE("op_norm is submultiplicative and unitarily invariant", "[matrix]") {
  for (int trial = 0; trial < 25; ++trial) {
    Rng rng(900 + trial);
    CMatrix a = gaussian_matrix(4, 4, rng);
    CMatrix b = gaussian_matrix(4, 4, rng);
    REQUIRE(op_norm(a * b) <= op_norm(a) * op_norm(b) + 1e-9);
    CMatrix q = haar_unitary(4, rng), w = haar_unitary(4, rng);
    REQUIRE(op_norm(q * a * w) == Catch::Approx(op_norm(a)).margin(1e-9));
  }
}

TEST_CASE("adjoint is an involution", "[matrix]") {
  Rng rng(42);
  CMatrix a = gaussian_matrix(3, 5, rng);
  REQUIRE(approx_equal(CMatrix(a.adjoint().adjoint()), a));
}

TEST_CASE("clamp_to_unit_ball projects onto the spectral ball", "[matrix]") {
  Rng rng(11);
  CMatrix g = 3.0 * gaussian_matrix(4, 3, rng);
  CMatrix c = clamp_to_unit_ball(g);
  REQUIRE(op_norm(c) <= 1.0 + 1e-12);
  CMatrix small = 0.1 * gaussian_matrix(3, 3, rng);
  REQUIRE(approx_equal(clamp_to_unit_ball(small), small));
}

TEST_CASE("power-iteration estimate matches exact norm", "[matrix]") {
  Rng rng(13);
  CMatrix a = gaussian_matrix(20, 20, rng);
  CVector warm;
  REQUIRE(op_norm_estimate(a, warm, 200) ==
          Catch::Approx(op_norm(a)).epsilon(1e-8));
}

TEST_CASE("deterministic rng streams", "[matrix]") {
  Rng a = Rng::derived(7, 3), b = Rng::derived(7, 3);
  for (int i = 0; i < 10; ++i) REQUIRE(a.next_u64() == b.next_u64());
  Rng c = Rng::derived(7, 4);
  REQUIRE(Rng::derived(7, 3).next_u64() != c.next_u64());
}
