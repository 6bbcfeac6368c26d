#include <catch_amalgamated.hpp>

#include "tnorms/combinators.hpp"
#include "tnorms/terms.hpp"

using namespace tnorms;

namespace {
SchurDecomposition random_schur_witness(int m, int a, int b, int p,
                                        std::uint64_t seed) {
  Rng rng(seed);
  SchurDecomposition d;
  d.alpha = gaussian_matrix(m, p, rng);
  d.beta = gaussian_matrix(p, m, rng);
  d.x = BlockMatrix(p, p, a, a);
  d.y = BlockMatrix(p, p, b, b);
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < p; ++j) {
      d.x.at(i, j) = gaussian_matrix(a, a, rng);
      d.y.at(i, j) = gaussian_matrix(b, b, rng);
    }
  d.target = d.reconstruct();
  return d;
}
}  // namespace

TEST_CASE("lemma witness evaluates to sqrt(n) exactly", "[witness]") {
  for (int n = 2; n <= 8; ++n) {
    SchurDecomposition d = lemma_witness(n);
    REQUIRE(std::abs(d.evaluate() - std::sqrt((double)n)) <= 1e-12);
    REQUIRE(frob(d.reconstruct().dense() - d.target.dense()) <= 1e-12);
  }
  // explicit factor norms at n = 2: ||alpha|| = 1, ||beta|| = sqrt(2),
  // ||x|| = ||y|| = 1, value 1 * 1 * 1 * sqrt(2)
  SchurDecomposition d = lemma_witness(2);
  REQUIRE(op_norm(d.alpha) == Catch::Approx(1.0).margin(1e-14));
  REQUIRE(op_norm(d.beta) == Catch::Approx(std::sqrt(2.0)).margin(1e-14));
  REQUIRE(d.x.norm() == Catch::Approx(1.0).margin(1e-12));
}

TEST_CASE("rank-one schur witness is the cross norm", "[witness]") {
  Rng rng(5);
  CMatrix a = gaussian_matrix(2, 2, rng), b = gaussian_matrix(3, 3, rng);
  SchurDecomposition d;
  d.alpha = CMatrix::Identity(1, 1);
  d.beta = CMatrix::Identity(1, 1);
  d.x = BlockMatrix(1, 1, 2, 2);
  d.x.at(0, 0) = a;
  d.y = BlockMatrix(1, 1, 3, 3);
  d.y.at(0, 0) = b;
  d.target = TensorElement::elementary(a, b);
  REQUIRE(approx_equal(d.reconstruct().dense(), d.target.dense(), 1e-12));
  REQUIRE(d.evaluate() == Catch::Approx(op_norm(a) * op_norm(b)).margin(1e-12));

  // scaling alpha by c and x by 1/c changes nothing
  SchurDecomposition e = d;
  e.alpha *= 4.0;
  e.x = e.x.scaled(0.25);
  REQUIRE(approx_equal(e.reconstruct().dense(), d.reconstruct().dense(),
                       1e-12));
  REQUIRE(e.evaluate() == Catch::Approx(d.evaluate()).margin(1e-12));
}

TEST_CASE("witness dimension checks", "[witness]") {
  SchurDecomposition d = random_schur_witness(1, 2, 2, 2, 3);
  d.beta = CMatrix::Zero(3, 1);
  REQUIRE_THROWS_AS(d.check_dims(), std::invalid_argument);
}

TEST_CASE("haagerup and gamma witnesses from terms", "[witness]") {
  TensorElement u = make_table_element(13, 3);
  TermList ts = terms_of(u);
  HaagerupDecomposition h = haagerup_from_terms(ts, u);
  REQUIRE(approx_equal(h.reconstruct().dense(), u.dense(), 1e-12));
  REQUIRE(h.evaluate() == Catch::Approx(1.0).margin(1e-12));

  GammaDecomposition g = gamma_from_terms(ts, u);
  REQUIRE(approx_equal(g.reconstruct().dense(), u.dense(), 1e-12));
  REQUIRE(g.evaluate() == Catch::Approx(3.0).margin(1e-12));
}

TEST_CASE("tb witness evaluation and reconstruction", "[witness]") {
  // single group of size one reduces to a rank-one pair with no averaging
  Rng rng(8);
  TbDecomposition t;
  TbDecomposition::Group g;
  g.agrid = BlockMatrix(1, 1, 2, 2);
  g.bgrid = BlockMatrix(1, 1, 2, 2);
  g.agrid.at(0, 0) = gaussian_matrix(2, 2, rng);
  g.bgrid.at(0, 0) = gaussian_matrix(2, 2, rng);
  t.groups.push_back(g);
  t.target = TensorElement::elementary(g.agrid.at(0, 0), g.bgrid.at(0, 0));
  REQUIRE(approx_equal(t.reconstruct().dense(), t.target.dense(), 1e-12));
  REQUIRE(t.evaluate() == Catch::Approx(op_norm(g.agrid.at(0, 0)) *
                                        op_norm(g.bgrid.at(0, 0)))
                              .margin(1e-12));
}

TEST_CASE("witness JSON round trip", "[witness]") {
  SchurDecomposition d = random_schur_witness(1, 2, 2, 2, 11);
  WitnessVariant w = d;
  WitnessVariant back = witness_from_json(witness_to_json(w));
  REQUIRE(witness_value(back) == witness_value(w));  // lossless
  REQUIRE(witness_residual(back) <= 1e-12);

  TensorElement u = make_table_element(3, 2);
  WitnessVariant g = gamma_from_terms(terms_of(u), u);
  WitnessVariant gback = witness_from_json(witness_to_json(g));
  REQUIRE(witness_value(gback) == witness_value(g));
}

TEST_CASE("term representations reconstruct the element", "[witness]") {
  for (int id : {1, 4, 5, 8, 10, 13})
    for (int n : {2, 3}) {
      TensorElement u = make_table_element(id, n);
      for (const TermList& ts : seed_term_reps(u)) {
        CMatrix acc = CMatrix::Zero(u.dense().rows(), u.dense().cols());
        for (const auto& [A, B] : ts) acc += kron(A, B);
        INFO("id=" << id << " n=" << n << " terms=" << ts.size());
        REQUIRE(frob(acc - u.dense()) <= 1e-9 * std::max(1.0, frob(u.dense())));
      }
    }
}

TEST_CASE("schmidt terms of random elements", "[witness]") {
  for (int trial = 0; trial < 10; ++trial) {
    TensorElement u = TensorElement::random(1, 2, 3, 2, 40 + trial);
    TermList ts = schmidt_terms(u);
    CMatrix acc = CMatrix::Zero(u.dense().rows(), u.dense().cols());
    for (const auto& [A, B] : ts) acc += kron(A, B);
    REQUIRE(frob(acc - u.dense()) <= 1e-10 * std::max(1.0, frob(u.dense())));
  }
}
