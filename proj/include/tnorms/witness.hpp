#pragma once

#include <utility>
#include <variant>
#include <vector>

#include "tnorms/block_matrix.hpp"
#include "tnorms/element.hpp"
#include "tnorms/norms.hpp"

namespace tnorms {

namespace detail {
inline TensorElement sandwich(const CMatrix& alpha, const CMatrix& flat,
                              const CMatrix& beta, int m, int a, int b) {
  const int ab = a * b;
  if (alpha.cols() == 0) return TensorElement::zero(m, a, b);
  CMatrix d = kron(alpha, CMatrix::Identity(ab, ab)) * flat *
              kron(beta, CMatrix::Identity(ab, ab));
  return TensorElement::from_dense(m, a, b, std::move(d));
}
}  // namespace detail

// Witness u = alpha (x o y) beta for the schur norm; its value
// ||alpha|| ||x|| ||y|| ||beta|| is a certified upper bound as soon as
// the reconstruction matches the target.
struct SchurDecomposition {
  CMatrix alpha;  // m x p
  BlockMatrix x;  // p x p over M_a
  BlockMatrix y;  // p x p over M_b
  CMatrix beta;   // p x m
  TensorElement target;

  int p() const { return static_cast<int>(alpha.cols()); }

  static SchurDecomposition zero(const TensorElement& u) {
    SchurDecomposition d;
    d.alpha = CMatrix::Zero(u.m(), 0);
    d.x = BlockMatrix(0, 0, u.a(), u.a());
    d.y = BlockMatrix(0, 0, u.b(), u.b());
    d.beta = CMatrix::Zero(0, u.m());
    d.target = u;
    return d;
  }

  double evaluate() const {
    if (p() == 0) return 0.0;
    return op_norm(alpha) * x.norm() * y.norm() * op_norm(beta);
  }

  TensorElement reconstruct() const {
    if (p() == 0)
      return TensorElement::zero(target.m(), target.a(), target.b());
    return detail::sandwich(alpha, schur_block(x, y).flatten(), beta,
                            static_cast<int>(alpha.rows()), x.block_rows(),
                            y.block_rows());
  }

  void check_dims() const {
    const int pp = p();
    if (alpha.rows() != target.m() || beta.cols() != target.m() ||
        beta.rows() != pp || x.grid_rows() != pp || x.grid_cols() != pp ||
        y.grid_rows() != pp || y.grid_cols() != pp ||
        x.block_rows() != target.a() || y.block_rows() != target.b())
      throw std::invalid_argument("schur witness: inconsistent dimensions");
  }
};

// u = sum_k A_k (x) B_k with value ||sum A A*||^{1/2} ||sum B* B||^{1/2}.
struct HaagerupDecomposition {
  std::vector<CMatrix> A;
  std::vector<CMatrix> B;
  TensorElement target;  // m = 1

  static HaagerupDecomposition zero(const TensorElement& u) {
    return {{}, {}, u};
  }

  double evaluate() const {
    if (A.empty()) return 0.0;
    CMatrix P = CMatrix::Zero(target.a(), target.a());
    CMatrix Q = CMatrix::Zero(target.b(), target.b());
    for (const CMatrix& a : A) P += a * a.adjoint();
    for (const CMatrix& b : B) Q += b.adjoint() * b;
    return std::sqrt(op_norm(P) * op_norm(Q));
  }

  TensorElement reconstruct() const {
    const int a = A.empty() ? target.a() : static_cast<int>(A[0].rows());
    const int b = B.empty() ? target.b() : static_cast<int>(B[0].rows());
    CMatrix d = CMatrix::Zero(a * b, a * b);
    for (size_t k = 0; k < A.size(); ++k) d += kron(A[k], B[k]);
    return TensorElement::from_dense(1, a, b, std::move(d));
  }

  void check_dims() const {
    if (target.m() != 1)
      throw std::invalid_argument("haagerup witness requires m = 1");
    if (A.size() != B.size())
      throw std::invalid_argument("haagerup witness: list length mismatch");
    for (const CMatrix& a : A)
      if (a.rows() != target.a() || a.cols() != target.a())
        throw std::invalid_argument("haagerup witness: bad A dimensions");
    for (const CMatrix& b : B)
      if (b.rows() != target.b() || b.cols() != target.b())
        throw std::invalid_argument("haagerup witness: bad B dimensions");
  }
};

// u = alpha (x (x) y) beta with the full blockwise Kronecker product.
struct ProjectiveDecomposition {
  CMatrix alpha;  // m x (p q)
  BlockMatrix x;  // p x p over M_a
  BlockMatrix y;  // q x q over M_b
  CMatrix beta;   // (p q) x m
  TensorElement target;

  int p() const { return x.grid_rows(); }
  int q() const { return y.grid_rows(); }

  static ProjectiveDecomposition zero(const TensorElement& u) {
    ProjectiveDecomposition d;
    d.alpha = CMatrix::Zero(u.m(), 0);
    d.x = BlockMatrix(0, 0, u.a(), u.a());
    d.y = BlockMatrix(0, 0, u.b(), u.b());
    d.beta = CMatrix::Zero(0, u.m());
    d.target = u;
    return d;
  }

  double evaluate() const {
    if (alpha.cols() == 0) return 0.0;
    return op_norm(alpha) * x.norm() * y.norm() * op_norm(beta);
  }

  TensorElement reconstruct() const {
    if (alpha.cols() == 0)
      return TensorElement::zero(target.m(), target.a(), target.b());
    return detail::sandwich(alpha, kron_block(x, y).flatten(), beta,
                            static_cast<int>(alpha.rows()), x.block_rows(),
                            y.block_rows());
  }

  void check_dims() const {
    if (alpha.rows() != target.m() || beta.cols() != target.m() ||
        alpha.cols() != static_cast<Eigen::Index>(p()) * q() ||
        beta.rows() != alpha.cols() || x.grid_rows() != x.grid_cols() ||
        y.grid_rows() != y.grid_cols() || x.block_rows() != target.a() ||
        y.block_rows() != target.b())
      throw std::invalid_argument(
          "projective witness: inconsistent dimensions");
  }
};

// u = sum_k a_k (x) b_k with value sum ||a_k|| ||b_k||.
struct GammaDecomposition {
  std::vector<std::pair<CMatrix, CMatrix>> pairs;
  TensorElement target;  // m = 1

  static GammaDecomposition zero(const TensorElement& u) { return {{}, u}; }

  double evaluate() const {
    double s = 0.0;
    for (const auto& [a, b] : pairs) s += op_norm(a) * op_norm(b);
    return s;
  }

  TensorElement reconstruct() const {
    const int a =
        pairs.empty() ? target.a() : static_cast<int>(pairs[0].first.rows());
    const int b =
        pairs.empty() ? target.b() : static_cast<int>(pairs[0].second.rows());
    CMatrix d = CMatrix::Zero(a * b, a * b);
    for (const auto& [pa, pb] : pairs) d += kron(pa, pb);
    return TensorElement::from_dense(1, a, b, std::move(d));
  }

  void check_dims() const {
    if (target.m() != 1)
      throw std::invalid_argument("gamma witness requires m = 1");
    for (const auto& [a, b] : pairs)
      if (a.rows() != target.a() || a.cols() != target.a() ||
          b.rows() != target.b() || b.cols() != target.b())
        throw std::invalid_argument("gamma witness: bad pair dimensions");
  }
};

// Averaged grid representation u = sum_k n_k^{-1} sum_{ij} a^k_{ij} (x)
// b^k_{ji}. Each group stores two n_k x n_k block grids; by convention
// bgrid(i, j) holds b_{ji}, so both grid norms enter the value directly.
struct TbDecomposition {
  struct Group {
    BlockMatrix agrid;  // (i,j) -> a_ij, blocks in M_a
    BlockMatrix bgrid;  // (i,j) -> b_ji, blocks in M_b
    int size() const { return agrid.grid_rows(); }
  };
  std::vector<Group> groups;
  TensorElement target;  // m = 1

  static TbDecomposition zero(const TensorElement& u) { return {{}, u}; }

  double evaluate() const {
    double s = 0.0;
    for (const Group& g : groups) s += g.agrid.norm() * g.bgrid.norm();
    return s;
  }

  TensorElement reconstruct() const {
    const int a = groups.empty() ? target.a() : groups[0].agrid.block_rows();
    const int b = groups.empty() ? target.b() : groups[0].bgrid.block_rows();
    CMatrix d = CMatrix::Zero(a * b, a * b);
    for (const Group& g : groups) {
      const double inv = 1.0 / g.size();
      for (int i = 0; i < g.size(); ++i)
        for (int j = 0; j < g.size(); ++j)
          d += inv * kron(g.agrid.at(i, j), g.bgrid.at(i, j));
    }
    return TensorElement::from_dense(1, a, b, std::move(d));
  }

  void check_dims() const {
    if (target.m() != 1)
      throw std::invalid_argument("tb witness requires m = 1");
    for (const Group& g : groups) {
      if (g.agrid.grid_rows() != g.agrid.grid_cols() ||
          g.bgrid.grid_rows() != g.bgrid.grid_cols() ||
          g.agrid.grid_rows() != g.bgrid.grid_rows() || g.size() < 1)
        throw std::invalid_argument("tb witness: bad group grid");
      if (g.agrid.block_rows() != target.a() ||
          g.bgrid.block_rows() != target.b())
        throw std::invalid_argument("tb witness: bad block dimensions");
    }
  }
};

using WitnessVariant =
    std::variant<SchurDecomposition, HaagerupDecomposition,
                 ProjectiveDecomposition, GammaDecomposition, TbDecomposition>;

inline double witness_value(const WitnessVariant& w) {
  return std::visit([](const auto& d) { return d.evaluate(); }, w);
}

inline TensorElement witness_reconstruct(const WitnessVariant& w) {
  return std::visit([](const auto& d) { return d.reconstruct(); }, w);
}

inline const TensorElement& witness_target(const WitnessVariant& w) {
  return std::visit(
      [](const auto& d) -> const TensorElement& { return d.target; }, w);
}

// Relative Frobenius reconstruction error against the stored target.
inline double witness_residual(const WitnessVariant& w) {
  const TensorElement& t = witness_target(w);
  double denom = std::max(1e-30, frob(t.dense()));
  return frob(witness_reconstruct(w).dense() - t.dense()) / denom;
}

inline NormKind witness_kind(const WitnessVariant& w) {
  struct V {
    NormKind operator()(const SchurDecomposition&) { return NormKind::schur; }
    NormKind operator()(const HaagerupDecomposition&) { return NormKind::h; }
    NormKind operator()(const ProjectiveDecomposition&) {
      return NormKind::proj;
    }
    NormKind operator()(const GammaDecomposition&) { return NormKind::gamma; }
    NormKind operator()(const TbDecomposition&) { return NormKind::tb; }
  };
  return std::visit(V{}, w);
}

// --- JSON (kind tag + shared matrix format; lossless round-trip) ---

inline Json witness_to_json(const WitnessVariant& w) {
  Json j;
  j["kind"] = to_string(witness_kind(w));
  j["target"] = witness_target(w).to_json();
  if (const auto* d = std::get_if<SchurDecomposition>(&w)) {
    j["alpha"] = matrix_to_json(d->alpha);
    j["x"] = block_matrix_to_json(d->x);
    j["y"] = block_matrix_to_json(d->y);
    j["beta"] = matrix_to_json(d->beta);
  } else if (const auto* d = std::get_if<HaagerupDecomposition>(&w)) {
    Json as = Json::array(), bs = Json::array();
    for (const CMatrix& m : d->A) as.push_back(matrix_to_json(m));
    for (const CMatrix& m : d->B) bs.push_back(matrix_to_json(m));
    j["A"] = std::move(as);
    j["B"] = std::move(bs);
  } else if (const auto* d = std::get_if<ProjectiveDecomposition>(&w)) {
    j["alpha"] = matrix_to_json(d->alpha);
    j["x"] = block_matrix_to_json(d->x);
    j["y"] = block_matrix_to_json(d->y);
    j["beta"] = matrix_to_json(d->beta);
  } else if (const auto* d = std::get_if<GammaDecomposition>(&w)) {
    Json ps = Json::array();
    for (const auto& [a, b] : d->pairs)
      ps.push_back(Json{{"a", matrix_to_json(a)}, {"b", matrix_to_json(b)}});
    j["pairs"] = std::move(ps);
  } else if (const auto* d = std::get_if<TbDecomposition>(&w)) {
    Json gs = Json::array();
    for (const auto& g : d->groups)
      gs.push_back(Json{{"size", g.size()},
                        {"a", block_matrix_to_json(g.agrid)},
                        {"b", block_matrix_to_json(g.bgrid)}});
    j["groups"] = std::move(gs);
  }
  return j;
}

inline WitnessVariant witness_from_json(const Json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  TensorElement target = TensorElement::from_json(j.at("target"));
  if (kind == "schur") {
    SchurDecomposition d;
    d.alpha = matrix_from_json(j.at("alpha"), "alpha");
    d.x = block_matrix_from_json(j.at("x"), "x");
    d.y = block_matrix_from_json(j.at("y"), "y");
    d.beta = matrix_from_json(j.at("beta"), "beta");
    d.target = std::move(target);
    d.check_dims();
    return d;
  }
  if (kind == "h") {
    HaagerupDecomposition d;
    for (const Json& m : j.at("A")) d.A.push_back(matrix_from_json(m, "A"));
    for (const Json& m : j.at("B")) d.B.push_back(matrix_from_json(m, "B"));
    d.target = std::move(target);
    d.check_dims();
    return d;
  }
  if (kind == "proj") {
    ProjectiveDecomposition d;
    d.alpha = matrix_from_json(j.at("alpha"), "alpha");
    d.x = block_matrix_from_json(j.at("x"), "x");
    d.y = block_matrix_from_json(j.at("y"), "y");
    d.beta = matrix_from_json(j.at("beta"), "beta");
    d.target = std::move(target);
    d.check_dims();
    return d;
  }
  if (kind == "gamma") {
    GammaDecomposition d;
    for (const Json& p : j.at("pairs"))
      d.pairs.emplace_back(matrix_from_json(p.at("a"), "pairs.a"),
                           matrix_from_json(p.at("b"), "pairs.b"));
    d.target = std::move(target);
    d.check_dims();
    return d;
  }
  if (kind == "tb") {
    TbDecomposition d;
    for (const Json& g : j.at("groups"))
      d.groups.push_back({block_matrix_from_json(g.at("a"), "groups.a"),
                          block_matrix_from_json(g.at("b"), "groups.b")});
    d.target = std::move(target);
    d.check_dims();
    return d;
  }
  throw std::invalid_argument("unknown witness kind '" + kind + "'");
}

}  // namespace tnorms
