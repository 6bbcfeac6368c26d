#pragma once

#include "tnorms/element.hpp"
#include "tnorms/json_io.hpp"
#include "tnorms/terms.hpp"

namespace tnorms {

// Complete contraction M_a -> M_p in factorized form f(v) = V*(v (x) I_k)W
// with ||V||, ||W|| <= 1 enforced by spectral projection at construction.
// The factorization makes feasibility a certificate: every value obtained
// by pairing such maps is a valid lower bound in the s' supremum.
class FactoredCompleteContraction {
 public:
  FactoredCompleteContraction(int a, int k, int p, const CMatrix& V,
                              const CMatrix& W)
      : a_(a), k_(k), p_(p), V_(clamp_to_unit_ball(V)),
        W_(clamp_to_unit_ball(W)) {
    if (V.rows() != (Eigen::Index)a * k || V.cols() != p ||
        W.rows() != (Eigen::Index)a * k || W.cols() != p)
      throw std::invalid_argument("contraction factors have wrong shape");
  }

  static FactoredCompleteContraction identity(int a) {
    return FactoredCompleteContraction(a, 1, a, CMatrix::Identity(a, a),
                                       CMatrix::Identity(a, a));
  }

  // rank-one functional v -> eta^* v xi as a map into M_1
  static FactoredCompleteContraction functional(const CVector& eta,
                                                const CVector& xi) {
    const int a = (int)eta.size();
    return FactoredCompleteContraction(a, 1, 1, eta, xi);
  }

  int a() const { return a_; }
  int k() const { return k_; }
  int p() const { return p_; }
  const CMatrix& V() const { return V_; }
  const CMatrix& W() const { return W_; }

  CMatrix apply(const CMatrix& v) const {
    return V_.adjoint() * kron(v, CMatrix::Identity(k_, k_)) * W_;
  }

  Json to_json() const {
    return Json{{"a", a_}, {"k", k_}, {"p", p_},
                {"V", matrix_to_json(V_)}, {"W", matrix_to_json(W_)}};
  }

  static FactoredCompleteContraction from_json(const Json& j) {
    return FactoredCompleteContraction(
        j.at("a").get<int>(), j.at("k").get<int>(), j.at("p").get<int>(),
        matrix_from_json(j.at("V"), "V"), matrix_from_json(j.at("W"), "W"));
  }

 private:
  int a_, k_, p_;
  CMatrix V_, W_;
};

// (f o- g)_m(u): apply x (x) y -> f(x) o g(y) entrywise at the outer
// level; the result lives in M_m(M_p).
inline CMatrix apply_pair(const FactoredCompleteContraction& f,
                          const FactoredCompleteContraction& g,
                          const TensorElement& u) {
  if (f.p() != g.p())
    throw std::invalid_argument("apply_pair: output sizes differ");
  const int m = u.m(), p = f.p();
  CMatrix out = CMatrix::Zero((Eigen::Index)m * p, (Eigen::Index)m * p);
  if (u.terms()) {
    for (const Term& t : *u.terms())
      out += kron(t.coeff, hadamard(f.apply(t.A), g.apply(t.B)));
    return out;
  }
  if (m == 1) {
    for (const auto& [A, B] : schmidt_terms(u))
      out += kron(CMatrix::Identity(1, 1), hadamard(f.apply(A), g.apply(B)));
    return out;
  }
  // generic dense fallback: expand on matrix units of the outer level
  const int ab = u.a() * u.b();
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      CMatrix blk = u.dense().block((Eigen::Index)i * ab,
                                    (Eigen::Index)j * ab, ab, ab);
      TensorElement uij = TensorElement::from_dense(1, u.a(), u.b(), blk);
      for (const auto& [A, B] : schmidt_terms(uij))
        out += kron(matrix_unit(m, i, j),
                    hadamard(f.apply(A), g.apply(B)));
    }
  return out;
}

}  // namespace tnorms
