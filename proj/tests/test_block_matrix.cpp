#include <catch_amalgamated.hpp>

#include "tnorms/block_matrix.hpp"

using namespace tnorms;

namespace {
BlockMatrix random_block(int p, int dim, Rng& rng) {
  BlockMatrix b(p, p, dim, dim);
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < p; ++j) b.at(i, j) = gaussian_matrix(dim, dim, rng);
  return b;
}
}  // namespace

TEST_CASE("schur_block at grid size one is kron", "[block]") {
  Rng rng(1);
  BlockMatrix x = random_block(1, 2, rng), y = random_block(1, 3, rng);
  REQUIRE(approx_equal(schur_block(x, y).flatten(),
                       kron(x.at(0, 0), y.at(0, 0))));
}

TEST_CASE("schur_block of block-diagonal inputs is the diagonal of parts",
          "[block]") {
  Rng rng(2);
  BlockMatrix x1 = random_block(2, 2, rng), x2 = random_block(2, 2, rng);
  BlockMatrix y1 = random_block(2, 2, rng), y2 = random_block(2, 2, rng);
  CMatrix lhs = schur_block(direct_sum(x1, x2), direct_sum(y1, y2)).flatten();
  CMatrix rhs = direct_sum(schur_block(x1, y1), schur_block(x2, y2)).flatten();
  REQUIRE(approx_equal(lhs, rhs, 1e-12));
}

TEST_CASE("compression identity against the diagonal selector", "[block]") {
  for (int trial = 0; trial < 10; ++trial) {
    Rng rng(50 + trial);
    const int p = 1 + trial % 4, a = 2 + trial % 2, b = 3 - trial % 2;
    BlockMatrix x = random_block(p, a, rng), y = random_block(p, b, rng);
    CMatrix e = diagonal_selector(p);
    CMatrix lhs = schur_block(x, y).flatten();
    CMatrix mid = kron_block(x, y).flatten();
    CMatrix rhs = scalar_times_flat(e, mid, a * b) *
                  kron(e.transpose(), CMatrix::Identity(a * b, a * b));
    REQUIRE(approx_equal(lhs, rhs, 1e-12));
  }
}

TEST_CASE("grid size mismatch is rejected", "[block]") {
  Rng rng(3);
  BlockMatrix x = random_block(2, 2, rng), y = random_block(3, 2, rng);
  REQUIRE_THROWS_AS(schur_block(x, y), std::invalid_argument);
}

TEST_CASE("flatten round-trips and adjoint is blockwise", "[block]") {
  Rng rng(4);
  BlockMatrix x = random_block(3, 2, rng);
  BlockMatrix back = BlockMatrix::from_flat(x.flatten(), 3, 3, 2, 2);
  REQUIRE(approx_equal(back.flatten(), x.flatten()));
  REQUIRE(approx_equal(x.adjoint().flatten(), CMatrix(x.flatten().adjoint())));
}
