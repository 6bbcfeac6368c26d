#include <catch_amalgamated.hpp>

#include "tnorms/element.hpp"
#include "tnorms/table_data.hpp"

using namespace tnorms;

TEST_CASE("table element construction and bounds", "[element]") {
  REQUIRE_THROWS_AS(make_table_element(0, 2), std::invalid_argument);
  REQUIRE_THROWS_AS(make_table_element(14, 2), std::invalid_argument);

  // id 4 at n = 2: ones exactly at rows (j,j), cols (1,1)
  TensorElement u = make_table_element(4, 2);
  CMatrix expect = CMatrix::Zero(4, 4);
  expect(0, 0) = 1.0;  // (r,t) = (1,1)
  expect(3, 0) = 1.0;  // (r,t) = (2,2)
  REQUIRE(approx_equal(u.dense(), expect));

  // id 13 is the diagonal-left element sum_j e_j (x) e_{jj}
  TensorElement d = make_table_element(13, 2);
  REQUIRE(d.subspace() == Subspace::diagonal_left);
  CMatrix diag = CMatrix::Zero(4, 4);
  diag(0, 0) = 1.0;
  diag(3, 3) = 1.0;
  REQUIRE(approx_equal(d.dense(), diag));
}

TEST_CASE("min norm of catalog elements matches the reference table",
          "[element]") {
  auto table = load_reference_table(default_table_path());
  for (int n : {2, 3, 4})
    for (int id = 1; id <= 13; ++id) {
      const double got = make_table_element(id, n).min_norm();
      const double want = reference_value(table, id, NormKind::min, n);
      INFO("id=" << id << " n=" << n);
      REQUIRE(got == Catch::Approx(want).margin(1e-9));
    }
}

TEST_CASE("min norm spot values", "[element]") {
  REQUIRE(TensorElement::elementary(matrix_unit(2, 0, 0),
                                    matrix_unit(2, 0, 0))
              .min_norm() == Catch::Approx(1.0).margin(1e-12));
  REQUIRE(make_table_element(8, 3).min_norm() ==
          Catch::Approx(1.0).margin(1e-9));
  REQUIRE(make_table_element(5, 3).min_norm() ==
          Catch::Approx(3.0).margin(1e-9));
  // dense form of sum_{j<=2} e_{j1} (x) e_{j1} has operator norm sqrt(2)
  REQUIRE(make_table_element(4, 2).min_norm() ==
          Catch::Approx(std::sqrt(2.0)).margin(1e-12));
}

TEST_CASE("swap is an isometric involution for min", "[element]") {
  for (int trial = 0; trial < 20; ++trial) {
    TensorElement u = TensorElement::random(1, 2, 3, 2, 600 + trial);
    TensorElement s = u.swap();
    REQUIRE(s.a() == u.b());
    REQUIRE(s.b() == u.a());
    REQUIRE(s.min_norm() == Catch::Approx(u.min_norm()).margin(1e-9));
    REQUIRE(approx_equal(s.swap().dense(), u.dense(), 1e-12));
  }
  // swap(a (x) b) = b (x) a
  Rng rng(9);
  CMatrix a = gaussian_matrix(2, 2, rng), b = gaussian_matrix(3, 3, rng);
  REQUIRE(approx_equal(TensorElement::elementary(a, b).swap().dense(),
                       TensorElement::elementary(b, a).dense(), 1e-12));
}

TEST_CASE("algebra operations", "[element]") {
  // adjoint(e_12 (x) e_12) = e_21 (x) e_21
  TensorElement e12 = TensorElement::elementary(matrix_unit(2, 0, 1),
                                                matrix_unit(2, 0, 1));
  TensorElement e21 = TensorElement::elementary(matrix_unit(2, 1, 0),
                                                matrix_unit(2, 1, 0));
  REQUIRE(approx_equal(e12.adjoint().dense(), e21.dense()));

  TensorElement id2 = TensorElement::elementary(CMatrix::Identity(2, 2),
                                                CMatrix::Identity(2, 2));
  TensorElement u = TensorElement::random(1, 2, 2, 2, 7);
  REQUIRE(approx_equal(TensorElement::multiply(id2, u).dense(), u.dense(),
                       1e-12));

  TensorElement e11 = TensorElement::elementary(matrix_unit(2, 0, 0),
                                                matrix_unit(2, 0, 0));
  REQUIRE(approx_equal(TensorElement::multiply(e11, e12).dense(),
                       e12.dense()));

  TensorElement v = TensorElement::random(1, 2, 2, 2, 8);
  TensorElement w = TensorElement::random(1, 2, 2, 2, 9);
  // associativity and submultiplicativity for min
  REQUIRE(approx_equal(
      TensorElement::multiply(TensorElement::multiply(u, v), w).dense(),
      TensorElement::multiply(u, TensorElement::multiply(v, w)).dense(),
      1e-9));
  REQUIRE(TensorElement::multiply(u, v).min_norm() <=
          u.min_norm() * v.min_norm() + 1e-9);

  TensorElement m2 = TensorElement::random(2, 2, 2, 2, 10);
  REQUIRE_THROWS_AS(TensorElement::multiply(m2, m2), std::invalid_argument);
}

TEST_CASE("adjoint is isometric for min", "[element]") {
  for (int trial = 0; trial < 100; ++trial) {
    TensorElement u = TensorElement::random(1 + trial % 2, 2, 2, 2,
                                            1000 + trial);
    REQUIRE(u.adjoint().min_norm() ==
            Catch::Approx(u.min_norm()).margin(1e-9));
  }
}

TEST_CASE("random elements are deterministic and validated", "[element]") {
  TensorElement a = TensorElement::random(1, 2, 3, 4, 55);
  TensorElement b = TensorElement::random(1, 2, 3, 4, 55);
  REQUIRE(approx_equal(a.dense(), b.dense()));
  REQUIRE_THROWS_AS(TensorElement::random(1, 2, 2, 0, 1),
                    std::invalid_argument);

  // rank-1 element with trivial coefficient: min is the cross norm
  Rng rng(3);
  CMatrix A = gaussian_matrix(2, 2, rng), B = gaussian_matrix(3, 3, rng);
  REQUIRE(TensorElement::elementary(A, B).min_norm() ==
          Catch::Approx(op_norm(A) * op_norm(B)).margin(1e-9));
}

TEST_CASE("element JSON round trip and diagnostics", "[element]") {
  TensorElement u = TensorElement::random(2, 2, 3, 2, 77);
  TensorElement back = TensorElement::from_json(u.to_json());
  REQUIRE(approx_equal(back.dense(), u.dense(), 0.0));  // lossless

  Json bad = u.to_json();
  bad["terms"][0].erase("A");
  REQUIRE_THROWS_WITH(TensorElement::from_json(bad),
                      Catch::Matchers::ContainsSubstring("terms[0]"));

  TensorElement d13 = make_table_element(13, 3);
  TensorElement d13b = TensorElement::from_json(d13.to_json());
  REQUIRE(d13b.subspace() == Subspace::diagonal_left);

  // a non-diagonal first factor is rejected for diagonal-left elements
  Json j = d13.to_json();
  j["terms"][0]["A"][0][1] = Json::array({1.0, 0.0});
  REQUIRE_THROWS_AS(TensorElement::from_json(j), std::invalid_argument);
}

TEST_CASE("table expression evaluation", "[element]") {
  REQUIRE(eval_table_expr("1", 5) == 1.0);
  REQUIRE(eval_table_expr("sqrt(n)", 4) == Catch::Approx(2.0));
  REQUIRE(eval_table_expr("n", 4) == 4.0);
  REQUIRE(eval_table_expr("n^{3/2}", 4) == Catch::Approx(8.0));
  REQUIRE_THROWS_AS(eval_table_expr("n^2", 2), std::invalid_argument);
}
