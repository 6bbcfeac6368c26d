#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tnorms/json_io.hpp"
#include "tnorms/matrix.hpp"
#include "tnorms/rng.hpp"

namespace tnorms {

// First tensor factor restricted to the diagonal subalgebra of M_a
// (models l_a^inf) or unrestricted.
enum class Subspace { full, diagonal_left };

inline std::string to_string(Subspace s) {
  return s == Subspace::full ? "full" : "diagonal-left";
}

inline Subspace subspace_from_string(const std::string& s) {
  if (s == "full") return Subspace::full;
  if (s == "diagonal-left") return Subspace::diagonal_left;
  throw std::invalid_argument("unknown subspace '" + s + "'");
}

// One elementary summand coeff (x) A (x) B with coeff in M_m, A in M_a,
// B in M_b.
struct Term {
  CMatrix coeff;
  CMatrix A;
  CMatrix B;
};

// Element of M_m(M_a (x) M_b), stored densely as an (m a b) x (m a b)
// matrix under the fixed index grouping ((i,r,t),(j,s,u)): outer level i,
// first factor r, second factor t. An optional list of elementary terms
// is kept alongside when available.
class TensorElement {
 public:
  TensorElement() = default;

  static TensorElement from_dense(int m, int a, int b, CMatrix dense,
                                  Subspace sub = Subspace::full) {
    check_dims(m, a, b);
    if (dense.rows() != static_cast<Eigen::Index>(m) * a * b ||
        dense.cols() != dense.rows())
      throw std::invalid_argument("dense matrix has wrong size");
    TensorElement u;
    u.m_ = m;
    u.a_ = a;
    u.b_ = b;
    u.dense_ = std::move(dense);
    u.subspace_ = sub;
    u.check_subspace_support();
    return u;
  }

  static TensorElement from_terms(int m, int a, int b, std::vector<Term> terms,
                                  Subspace sub = Subspace::full) {
    check_dims(m, a, b);
    CMatrix dense = CMatrix::Zero(static_cast<Eigen::Index>(m) * a * b,
                                  static_cast<Eigen::Index>(m) * a * b);
    for (const Term& t : terms) {
      if (t.coeff.rows() != m || t.coeff.cols() != m || t.A.rows() != a ||
          t.A.cols() != a || t.B.rows() != b || t.B.cols() != b)
        throw std::invalid_argument("term has wrong factor dimensions");
      if (sub == Subspace::diagonal_left && !is_diagonal(t.A))
        throw std::invalid_argument(
            "diagonal-left element requires diagonal first factors");
      dense += kron(t.coeff, kron(t.A, t.B));
    }
    TensorElement u = from_dense(m, a, b, std::move(dense), sub);
    u.terms_ = std::move(terms);
    return u;
  }

  int m() const { return m_; }
  int a() const { return a_; }
  int b() const { return b_; }
  Subspace subspace() const { return subspace_; }
  const CMatrix& dense() const { return dense_; }
  const std::optional<std::vector<Term>>& terms() const { return terms_; }

  double min_norm() const { return op_norm(dense_); }

  bool is_zero(double tol = 1e-14) const {
    return dense_.cwiseAbs().maxCoeff() <= tol;
  }

  bool is_self_adjoint(double tol = 1e-10) const {
    return (dense_ - dense_.adjoint()).cwiseAbs().maxCoeff() <=
           tol * std::max(1.0, dense_.cwiseAbs().maxCoeff());
  }

  TensorElement adjoint() const {
    TensorElement out = from_dense(m_, a_, b_, dense_.adjoint(), subspace_);
    if (terms_) {
      std::vector<Term> ts;
      ts.reserve(terms_->size());
      for (const Term& t : *terms_)
        ts.push_back({t.coeff.adjoint(), t.A.adjoint(), t.B.adjoint()});
      out.terms_ = std::move(ts);
    }
    return out;
  }

  // Exchange the factor roles: result lives in M_m(M_b (x) M_a).
  TensorElement swap() const {
    CMatrix d(dense_.rows(), dense_.cols());
    for (int i = 0; i < m_; ++i)
      for (int j = 0; j < m_; ++j)
        for (int r = 0; r < a_; ++r)
          for (int s = 0; s < a_; ++s)
            for (int t = 0; t < b_; ++t)
              for (int w = 0; w < b_; ++w)
                d(((Eigen::Index)i * b_ + t) * a_ + r,
                  ((Eigen::Index)j * b_ + w) * a_ + s) =
                    dense_(((Eigen::Index)i * a_ + r) * b_ + t,
                           ((Eigen::Index)j * a_ + s) * b_ + w);
    TensorElement out = from_dense(m_, b_, a_, std::move(d), Subspace::full);
    if (terms_) {
      std::vector<Term> ts;
      for (const Term& t : *terms_) ts.push_back({t.coeff, t.B, t.A});
      out.terms_ = std::move(ts);
    }
    return out;
  }

  TensorElement add(const TensorElement& o) const {
    require_same_shape(o);
    Subspace sub = (subspace_ == o.subspace_) ? subspace_ : Subspace::full;
    TensorElement out = from_dense(m_, a_, b_, dense_ + o.dense_, sub);
    if (terms_ && o.terms_) {
      std::vector<Term> ts = *terms_;
      ts.insert(ts.end(), o.terms_->begin(), o.terms_->end());
      out.terms_ = std::move(ts);
    }
    return out;
  }

  TensorElement scaled(Complex c) const {
    TensorElement out = from_dense(m_, a_, b_, c * dense_, subspace_);
    if (terms_) {
      std::vector<Term> ts = *terms_;
      for (Term& t : ts) t.coeff *= c;
      out.terms_ = std::move(ts);
    }
    return out;
  }

  // Product in M_a (x) M_b, realized densely in M_{ab}; outer level m = 1.
  static TensorElement multiply(const TensorElement& u,
                                const TensorElement& v) {
    if (u.m_ != 1 || v.m_ != 1)
      throw std::invalid_argument("multiply requires outer level m = 1");
    if (u.a_ != v.a_ || u.b_ != v.b_)
      throw std::invalid_argument("multiply requires matching (a, b)");
    TensorElement out =
        from_dense(1, u.a_, u.b_, u.dense_ * v.dense_, Subspace::full);
    if (u.terms_ && v.terms_) {
      std::vector<Term> ts;
      for (const Term& s : *u.terms_)
        for (const Term& t : *v.terms_)
          ts.push_back({s.coeff * t.coeff, s.A * t.A, s.B * t.B});
      out.terms_ = std::move(ts);
    }
    return out;
  }

  // Outer-level direct sum: element of M_{m1+m2}(M_a (x) M_b).
  static TensorElement outer_direct_sum(const TensorElement& u,
                                        const TensorElement& v) {
    if (u.a_ != v.a_ || u.b_ != v.b_)
      throw std::invalid_argument("direct sum requires matching (a, b)");
    const int m = u.m_ + v.m_, a = u.a_, b = u.b_, ab = a * b;
    CMatrix d = CMatrix::Zero((Eigen::Index)m * ab, (Eigen::Index)m * ab);
    d.topLeftCorner((Eigen::Index)u.m_ * ab, (Eigen::Index)u.m_ * ab) =
        u.dense_;
    d.bottomRightCorner((Eigen::Index)v.m_ * ab, (Eigen::Index)v.m_ * ab) =
        v.dense_;
    return from_dense(m, a, b, std::move(d), Subspace::full);
  }

  // gamma u delta at the outer level, for scalar gamma (p x m), delta (m x p).
  TensorElement outer_compress(const CMatrix& gamma,
                               const CMatrix& delta) const {
    if (gamma.cols() != m_ || delta.rows() != m_)
      throw std::invalid_argument("outer_compress: shape mismatch");
    const int ab = a_ * b_;
    CMatrix g = kron(gamma, CMatrix::Identity(ab, ab));
    CMatrix d = kron(delta, CMatrix::Identity(ab, ab));
    return from_dense(static_cast<int>(gamma.rows()), a_, b_,
                      g * dense_ * d, Subspace::full);
  }

  static TensorElement zero(int m, int a, int b) {
    return from_dense(m, a, b,
                      CMatrix::Zero((Eigen::Index)m * a * b,
                                    (Eigen::Index)m * a * b));
  }

  static TensorElement elementary(const CMatrix& A, const CMatrix& B) {
    return from_terms(static_cast<int>(1), static_cast<int>(A.rows()),
                      static_cast<int>(B.rows()),
                      {Term{CMatrix::Identity(1, 1), A, B}});
  }

  static TensorElement random(int m, int a, int b, int rank,
                              std::uint64_t seed) {
    if (rank < 1) throw std::invalid_argument("random element needs rank >= 1");
    check_dims(m, a, b);
    Rng rng(seed * 0x9e3779b97f4a7c15ULL + 0x2545f4914f6cdd1dULL);
    std::vector<Term> ts;
    ts.reserve(rank);
    for (int k = 0; k < rank; ++k) {
      CMatrix c = (m == 1) ? CMatrix::Identity(1, 1)
                           : gaussian_matrix(m, m, rng);
      ts.push_back({c, gaussian_matrix(a, a, rng), gaussian_matrix(b, b, rng)});
    }
    return from_terms(m, a, b, std::move(ts));
  }

  // Elements with a term list serialize through it; dense-only elements
  // carry the dense matrix verbatim instead.
  Json to_json() const {
    Json j{{"m", m_},
           {"a", a_},
           {"b", b_},
           {"subspace", tnorms::to_string(subspace_)}};
    if (terms_) {
      Json ts = Json::array();
      for (const Term& t : *terms_)
        ts.push_back(Json{{"coeff", matrix_to_json(t.coeff)},
                          {"A", matrix_to_json(t.A)},
                          {"B", matrix_to_json(t.B)}});
      j["terms"] = std::move(ts);
    } else {
      j["dense"] = matrix_to_json(dense_);
    }
    return j;
  }

  static TensorElement from_json(const Json& j) {
    for (const char* key : {"m", "a", "b"})
      if (!j.contains(key))
        throw std::invalid_argument(std::string("element JSON: missing '") +
                                    key + "'");
    const int m = j["m"].get<int>(), a = j["a"].get<int>(),
              b = j["b"].get<int>();
    Subspace sub = Subspace::full;
    if (j.contains("subspace"))
      sub = subspace_from_string(j["subspace"].get<std::string>());
    if (!j.contains("terms")) {
      if (!j.contains("dense"))
        throw std::invalid_argument(
            "element JSON: needs 'terms' or 'dense'");
      return from_dense(m, a, b, matrix_from_json(j["dense"], "dense"), sub);
    }
    std::vector<Term> ts;
    const Json& jt = j["terms"];
    if (!jt.is_array())
      throw std::invalid_argument("element JSON: 'terms' must be an array");
    for (size_t k = 0; k < jt.size(); ++k) {
      const Json& t = jt[k];
      const std::string where = "terms[" + std::to_string(k) + "]";
      for (const char* key : {"coeff", "A", "B"})
        if (!t.contains(key))
          throw std::invalid_argument("element JSON: " + where +
                                      " missing '" + key + "'");
      ts.push_back({matrix_from_json(t["coeff"], where + ".coeff"),
                    matrix_from_json(t["A"], where + ".A"),
                    matrix_from_json(t["B"], where + ".B")});
    }
    return from_terms(m, a, b, std::move(ts), sub);
  }

 private:
  static void check_dims(int m, int a, int b) {
    if (m < 1 || a < 1 || b < 1)
      throw std::invalid_argument("dimensions must be positive");
  }

  void require_same_shape(const TensorElement& o) const {
    if (m_ != o.m_ || a_ != o.a_ || b_ != o.b_)
      throw std::invalid_argument("shape mismatch");
  }

  // diagonal-left elements are supported on r = s in the first factor
  void check_subspace_support() const {
    if (subspace_ != Subspace::diagonal_left) return;
    for (int i = 0; i < m_; ++i)
      for (int j = 0; j < m_; ++j)
        for (int r = 0; r < a_; ++r)
          for (int s = 0; s < a_; ++s) {
            if (r == s) continue;
            for (int t = 0; t < b_; ++t)
              for (int w = 0; w < b_; ++w)
                if (std::abs(dense_(((Eigen::Index)i * a_ + r) * b_ + t,
                                    ((Eigen::Index)j * a_ + s) * b_ + w)) >
                    1e-12)
                  throw std::invalid_argument(
                      "diagonal-left element has off-diagonal first-factor "
                      "support");
          }
  }

  int m_ = 1, a_ = 1, b_ = 1;
  CMatrix dense_ = CMatrix::Zero(1, 1);
  std::optional<std::vector<Term>> terms_;
  Subspace subspace_ = Subspace::full;
};

// The 13 catalog elements of M_n (x) M_n (the last one sits in
// l_n^inf (x) M_n). Sums written with a second visibly free index run it
// over 1..n as well; this reading reproduces the min-norm column of the
// reference table exactly, which is checked in tests.
inline TensorElement make_table_element(int id, int n) {
  if (id < 1 || id > 13) throw std::invalid_argument("table id out of range");
  if (n < 1) throw std::invalid_argument("table element needs n >= 1");
  auto E = [n](int i, int j) { return matrix_unit(n, i, j); };
  std::vector<Term> ts;
  const CMatrix one = CMatrix::Identity(1, 1);
  auto push = [&](const CMatrix& A, const CMatrix& B) {
    ts.push_back({one, A, B});
  };
  switch (id) {
    case 1:
      for (int j = 0; j < n; ++j) push(E(0, j), E(j, j));
      break;
    case 2:
      for (int j = 0; j < n; ++j) push(E(j, 0), E(j, j));
      break;
    case 3:
      for (int j = 0; j < n; ++j) push(E(0, j), E(0, j));
      break;
    case 4:
      for (int j = 0; j < n; ++j) push(E(j, 0), E(j, 0));
      break;
    case 5:
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) push(E(i, j), E(i, j));
      break;
    case 6:
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) push(E(i, 0), E(i, j));
      break;
    case 7:
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) push(E(i, i), E(i, j));
      break;
    case 8:
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) push(E(j, i), E(i, j));
      break;
    case 9:
      for (int j = 0; j < n; ++j) push(E(0, j), E(j, 0));
      break;
    case 10:
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) push(E(j, j), E(i, j));
      break;
    case 11:
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) push(E(0, j), E(i, j));
      break;
    case 12:
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) push(E(0, j), E(j, i));
      break;
    case 13:
      for (int j = 0; j < n; ++j) push(E(j, j), E(j, j));
      return TensorElement::from_terms(1, n, n, std::move(ts),
                                       Subspace::diagonal_left);
  }
  return TensorElement::from_terms(1, n, n, std::move(ts));
}

inline std::string table_element_formula(int id) {
  switch (id) {
    case 1: return "sum_j e_{1j} (x) e_{jj}";
    case 2: return "sum_j e_{j1} (x) e_{jj}";
    case 3: return "sum_j e_{1j} (x) e_{1j}";
    case 4: return "sum_j e_{j1} (x) e_{j1}";
    case 5: return "sum_{ij} e_{ij} (x) e_{ij}";
    case 6: return "sum_{ij} e_{i1} (x) e_{ij}";
    case 7: return "sum_{ij} e_{ii} (x) e_{ij}";
    case 8: return "sum_{ij} e_{ji} (x) e_{ij}";
    case 9: return "sum_j e_{1j} (x) e_{j1}";
    case 10: return "sum_{ij} e_{jj} (x) e_{ij}";
    case 11: return "sum_{ij} e_{1j} (x) e_{ij}";
    case 12: return "sum_{ij} e_{1j} (x) e_{ji}";
    case 13: return "sum_j e_j (x) e_{jj} in l_n^inf (x) M_n";
  }
  throw std::invalid_argument("table id out of range");
}

}  // namespace tnorms
