#pragma once

#include "tnorms/contraction.hpp"
#include "tnorms/element.hpp"
#include "tnorms/terms.hpp"

namespace tnorms {

namespace detail {

// terms (coeff, A, B) covering u even when no explicit list is stored
inline std::vector<Term> effective_terms(const TensorElement& u) {
  if (u.terms()) return *u.terms();
  std::vector<Term> out;
  const int m = u.m(), ab = u.a() * u.b();
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      CMatrix blk = u.dense().block((Eigen::Index)i * ab,
                                    (Eigen::Index)j * ab, ab, ab);
      if (blk.cwiseAbs().maxCoeff() <= 1e-15) continue;
      TensorElement uij = TensorElement::from_dense(1, u.a(), u.b(), blk);
      for (const auto& [A, B] : schmidt_terms(uij))
        out.push_back({matrix_unit(m, i, j), A, B});
    }
  return out;
}

}  // namespace detail

// ---------------------------------------------------------------------
// lambda: the injective norm, sup over unit product functionals.
// ---------------------------------------------------------------------

struct LambdaWitness {
  CVector eta1, eta2, xi1, xi2;
  double value = 0.0;

  Json to_json() const {
    return Json{{"kind", "lambda"},
                {"eta1", matrix_to_json(eta1)},
                {"eta2", matrix_to_json(eta2)},
                {"xi1", matrix_to_json(xi1)},
                {"xi2", matrix_to_json(xi2)},
                {"value", value}};
  }
};

struct LambdaResult {
  double value = 0.0;
  LambdaWitness witness;
  bool converged = false;
  int restarts_used = 0;
};

// Alternating rank-one maximization of |<eta1 (x) eta2, D (xi1 (x) xi2)>|
// over unit vectors. Every iterate is feasible, so the running maximum is
// a certified lower bound.
inline LambdaResult lambda_norm(const TensorElement& u, int restarts = 32,
                                int max_iters = 300, std::uint64_t seed = 0) {
  if (u.m() != 1)
    throw std::invalid_argument("lambda_norm requires outer level m = 1");
  const int a = u.a(), b = u.b();
  const CMatrix& D = u.dense();
  LambdaResult out;
  if (u.is_zero()) {
    out.converged = true;
    return out;
  }

  auto reshape = [&](const CVector& w) {
    CMatrix W(a, b);
    for (int r = 0; r < a; ++r)
      for (int t = 0; t < b; ++t) W(r, t) = w((Eigen::Index)r * b + t);
    return W;
  };

  std::vector<double> finals;
  for (int rs = 0; rs < restarts; ++rs) {
    Rng rng = Rng::derived(seed, rs);
    CVector eta1, eta2, xi1, xi2;
    if (rs == 0) {
      // top singular pair of the dense form, split by partial traces
      double sg;
      CVector l, r;
      detail::top_singular_triplet(D, sg, l, r);
      CMatrix L = reshape(l), R = reshape(r);
      Eigen::JacobiSVD<CMatrix> sl(L, Eigen::ComputeThinU |
                                          Eigen::ComputeThinV);
      Eigen::JacobiSVD<CMatrix> sr(R, Eigen::ComputeThinU |
                                          Eigen::ComputeThinV);
      eta1 = sl.matrixU().col(0);
      eta2 = sl.matrixV().col(0).conjugate();
      xi1 = sr.matrixU().col(0);
      xi2 = sr.matrixV().col(0).conjugate();
    } else {
      eta1 = gaussian_vector(a, rng).normalized();
      eta2 = gaussian_vector(b, rng).normalized();
      xi1 = gaussian_vector(a, rng).normalized();
      xi2 = gaussian_vector(b, rng).normalized();
    }
    double val = 0.0, prev = -1.0;
    for (int it = 0; it < max_iters; ++it) {
      // optimal eta given xi: w = D (xi1 (x) xi2)
      CMatrix W = reshape(D * kron(xi1, xi2));
      CVector t1 = W * eta2.conjugate();
      if (t1.norm() > 1e-300) eta1 = t1.normalized();
      CVector t2 = (eta1.adjoint() * W).transpose();
      if (t2.norm() > 1e-300) eta2 = t2.normalized();
      // optimal xi given eta: z = D* (eta1 (x) eta2)
      CMatrix Z = reshape(D.adjoint() * kron(eta1, eta2)).conjugate();
      CVector s1 = (Z * xi2).conjugate();
      if (s1.norm() > 1e-300) xi1 = s1.normalized();
      // value = xi1^T Z xi2; maximize over xi2
      CVector s2 = (xi1.transpose() * Z).transpose();
      if (s2.norm() > 1e-300) xi2 = s2.conjugate().normalized();
      val = std::abs((kron(eta1, eta2).adjoint() * D * kron(xi1, xi2))(0, 0));
      if (std::abs(val - prev) <= 1e-12 * std::max(1.0, val)) break;
      prev = val;
    }
    finals.push_back(val);
    if (val > out.value) {
      out.value = val;
      out.witness = {eta1, eta2, xi1, xi2, val};
    }
    ++out.restarts_used;
  }
  int agree = 0;
  for (double v : finals)
    if (std::abs(v - out.value) <= 1e-7 * std::max(1.0, out.value)) ++agree;
  out.converged = agree >= std::max(2, restarts / 4);
  return out;
}

// ---------------------------------------------------------------------
// s': sup ||(f o- g)_m(u)|| over factorization-certified complete
// contractions into a common M_p.
// ---------------------------------------------------------------------

struct SPrimeWitness {
  FactoredCompleteContraction f, g;
  double value = 0.0;

  Json to_json() const {
    return Json{{"kind", "s_prime"},
                {"f", f.to_json()},
                {"g", g.to_json()},
                {"value", value}};
  }
};

struct SPrimeResult {
  double value = 0.0;
  std::optional<SPrimeWitness> witness;
  int restarts_used = 0;
};

namespace detail {

struct SPrimeGrads {
  double value = 0.0;
  CMatrix gVf, gWf, gVg, gWg;
};

inline SPrimeGrads sprime_value_and_grads(
    const std::vector<Term>& terms, int m, const CMatrix& Vf,
    const CMatrix& Wf, const CMatrix& Vg, const CMatrix& Wg, int a, int b,
    int kf, int kg, int p) {
  const CMatrix Ikf = CMatrix::Identity(kf, kf);
  const CMatrix Ikg = CMatrix::Identity(kg, kg);
  std::vector<CMatrix> F, G;
  F.reserve(terms.size());
  G.reserve(terms.size());
  CMatrix R = CMatrix::Zero((Eigen::Index)m * p, (Eigen::Index)m * p);
  for (const Term& t : terms) {
    F.push_back(Vf.adjoint() * kron(t.A, Ikf) * Wf);
    G.push_back(Vg.adjoint() * kron(t.B, Ikg) * Wg);
    R += kron(t.coeff, hadamard(F.back(), G.back()));
  }
  SPrimeGrads out;
  out.gVf = CMatrix::Zero(Vf.rows(), Vf.cols());
  out.gWf = CMatrix::Zero(Wf.rows(), Wf.cols());
  out.gVg = CMatrix::Zero(Vg.rows(), Vg.cols());
  out.gWg = CMatrix::Zero(Wg.rows(), Wg.cols());
  if (R.cwiseAbs().maxCoeff() <= 1e-300) return out;
  double sigma;
  CVector l, r;
  top_singular_triplet(R, sigma, l, r);
  out.value = sigma;
  CMatrix S = l * r.adjoint();
  for (size_t k = 0; k < terms.size(); ++k) {
    const Term& t = terms[k];
    // collapse the outer level: St = sum_ij conj(coeff_ij) S^(ij)
    CMatrix St = CMatrix::Zero(p, p);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        St += std::conj(t.coeff(i, j)) *
              S.block((Eigen::Index)i * p, (Eigen::Index)j * p, p, p);
    CMatrix P = hadamard(St, G[k].conjugate());
    CMatrix Q = hadamard(St, F[k].conjugate());
    CMatrix AI = kron(t.A, Ikf);
    CMatrix BI = kron(t.B, Ikg);
    out.gVf += AI * Wf * P.adjoint();
    out.gWf += AI.adjoint() * Vf * P;
    out.gVg += BI * Wg * Q.adjoint();
    out.gWg += BI.adjoint() * Vg * Q;
  }
  return out;
}

}  // namespace detail

// Projected gradient ascent; factors stay inside the spectral unit ball,
// so every evaluated objective is a certified lower bound of ||u||_{s'}.
inline SPrimeResult s_prime_lower(const TensorElement& u, int restarts = 24,
                                  int max_iters = 150, std::uint64_t seed = 0,
                                  int p_cap = 4) {
  const int a = u.a(), b = u.b(), m = u.m();
  SPrimeResult out;
  if (u.is_zero()) return out;
  const std::vector<Term> terms = detail::effective_terms(u);

  LambdaResult lam;
  if (m == 1) lam = lambda_norm(u, std::max(8, restarts / 2), 200, seed);

  for (int rs = 0; rs < restarts; ++rs) {
    Rng rng = Rng::derived(seed, 40000 + rs);
    int p, kf = 1, kg = 1;
    CMatrix Vf, Wf, Vg, Wg;
    if (rs == 0 && a == b) {
      p = a;
      Vf = Wf = Vg = Wg = CMatrix::Identity(a, a);
    } else if (rs == 1 && m == 1 && lam.value > 0) {
      p = 1;
      Vf = lam.witness.eta1;
      Wf = lam.witness.xi1;
      Vg = lam.witness.eta2;
      Wg = lam.witness.xi2;
    } else {
      p = 1 + (rs % std::max(1, p_cap));
      kf = 1 + (rs % 2);
      kg = kf;
      Vf = clamp_to_unit_ball(gaussian_matrix(a * kf, p, rng));
      Wf = clamp_to_unit_ball(gaussian_matrix(a * kf, p, rng));
      Vg = clamp_to_unit_ball(gaussian_matrix(b * kg, p, rng));
      Wg = clamp_to_unit_ball(gaussian_matrix(b * kg, p, rng));
    }
    double step = 0.5;
    double cur = 0.0;
    for (int it = 0; it < max_iters; ++it) {
      detail::SPrimeGrads gr = detail::sprime_value_and_grads(
          terms, m, Vf, Wf, Vg, Wg, a, b, kf, kg, p);
      cur = std::max(cur, gr.value);
      if (gr.value > out.value) {
        out.value = gr.value;
        out.witness = SPrimeWitness{
            FactoredCompleteContraction(a, kf, p, Vf, Wf),
            FactoredCompleteContraction(b, kg, p, Vg, Wg), gr.value};
      }
      double gn = gr.gVf.norm() + gr.gWf.norm() + gr.gVg.norm() +
                  gr.gWg.norm();
      if (gn <= 1e-13) break;
      bool improved = false;
      for (int bt = 0; bt < 6; ++bt) {
        CMatrix Vf2 = clamp_to_unit_ball(Vf + step * gr.gVf);
        CMatrix Wf2 = clamp_to_unit_ball(Wf + step * gr.gWf);
        CMatrix Vg2 = clamp_to_unit_ball(Vg + step * gr.gVg);
        CMatrix Wg2 = clamp_to_unit_ball(Wg + step * gr.gWg);
        detail::SPrimeGrads trial = detail::sprime_value_and_grads(
            terms, m, Vf2, Wf2, Vg2, Wg2, a, b, kf, kg, p);
        if (trial.value > gr.value + 1e-14) {
          Vf = std::move(Vf2);
          Wf = std::move(Wf2);
          Vg = std::move(Vg2);
          Wg = std::move(Wg2);
          improved = true;
          step *= 1.3;
          break;
        }
        step *= 0.35;
      }
      if (!improved) break;
    }
    ++out.restarts_used;
  }
  // the p = 1 functional pairs already realize the injective norm
  if (m == 1 && lam.value > out.value) {
    out.value = lam.value;
    out.witness = SPrimeWitness{
        FactoredCompleteContraction::functional(lam.witness.eta1,
                                                lam.witness.xi1),
        FactoredCompleteContraction::functional(lam.witness.eta2,
                                                lam.witness.xi2),
        lam.value};
  }
  return out;
}

}  // namespace tnorms
