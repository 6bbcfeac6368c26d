#pragma once

#include <vector>

#include "tnorms/witness.hpp"

namespace tnorms {

// A term list {(A_k, B_k)} with sum_k A_k (x) B_k equal to a fixed m = 1
// element. All upper-bound seeds are built from such lists.
using TermList = std::vector<std::pair<CMatrix, CMatrix>>;

inline TermList terms_of(const TensorElement& u) {
  TermList out;
  if (u.m() != 1 || !u.terms()) return out;
  for (const Term& t : *u.terms()) {
    Complex c = t.coeff(0, 0);
    if (std::abs(c) < 1e-15) continue;
    out.emplace_back(c * t.A, t.B);
  }
  return out;
}

inline CMatrix realign(const TensorElement& u) {
  const int a = u.a(), b = u.b();
  CMatrix r(a * a, b * b);
  for (int rr = 0; rr < a; ++rr)
    for (int s = 0; s < a; ++s)
      for (int t = 0; t < b; ++t)
        for (int w = 0; w < b; ++w)
          r(rr * a + s, t * b + w) =
              u.dense()((Eigen::Index)rr * b + t, (Eigen::Index)s * b + w);
  return r;
}

inline CMatrix unvec(const CVector& v, int n) {
  CMatrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = v(i * n + j);
  return m;
}

// Operator-Schmidt decomposition via SVD of the realigned dense form.
inline TermList schmidt_terms(const TensorElement& u) {
  const int a = u.a(), b = u.b();
  CMatrix r = svd_sanitized(realign(u));
  Eigen::JacobiSVD<CMatrix> svd(r, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  TermList out;
  const double cutoff = 1e-13 * std::max(1.0, sv.size() ? sv(0) : 0.0);
  for (Eigen::Index k = 0; k < sv.size(); ++k) {
    if (sv(k) <= cutoff) break;
    const double s = std::sqrt(sv(k));
    out.emplace_back(s * unvec(svd.matrixU().col(k), a),
                     s * unvec(svd.matrixV().col(k).conjugate(), b));
  }
  return out;
}

// Discrete Weyl (generalized Pauli) expansion; square factors only.
inline TermList weyl_terms(const TensorElement& u) {
  const int n = u.a();
  if (u.b() != n) return {};
  const Complex w = std::exp(Complex(0.0, 2.0 * M_PI / n));
  std::vector<CMatrix> basis;
  CMatrix X = CMatrix::Zero(n, n), Z = CMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    X((i + 1) % n, i) = 1.0;
    Z(i, i) = std::pow(w, i);
  }
  CMatrix Xp = CMatrix::Identity(n, n);
  for (int s = 0; s < n; ++s) {
    CMatrix Zp = CMatrix::Identity(n, n);
    for (int t = 0; t < n; ++t) {
      basis.push_back(Xp * Zp);
      Zp = Zp * Z;
    }
    Xp = Xp * X;
  }
  TermList out;
  const double scale = u.dense().cwiseAbs().maxCoeff();
  for (const CMatrix& U : basis)
    for (const CMatrix& V : basis) {
      Complex c = (kron(U, V).adjoint() * u.dense()).trace() /
                  Complex(n * n, 0.0);
      if (std::abs(c) > 1e-12 * std::max(1.0, scale))
        out.emplace_back(c * U, V);
    }
  return out;
}

inline TermList group_by_first(const TermList& ts) {
  TermList out;
  for (const auto& [a, b] : ts) {
    bool hit = false;
    for (auto& [a2, b2] : out)
      if (approx_equal(a, a2, 1e-13)) {
        b2 += b;
        hit = true;
        break;
      }
    if (!hit) out.emplace_back(a, b);
  }
  return out;
}

inline TermList group_by_second(const TermList& ts) {
  TermList out;
  for (const auto& [a, b] : ts) {
    bool hit = false;
    for (auto& [a2, b2] : out)
      if (approx_equal(b, b2, 1e-13)) {
        a2 += a;
        hit = true;
        break;
      }
    if (!hit) out.emplace_back(a, b);
  }
  return out;
}

// Mix a term list by a unitary: A'_j = sum_k M_{jk} A_k and
// B'_j = sum_k conj(M_{jk}) B_k leave the represented element unchanged.
inline TermList mix_unitary(const TermList& ts, const CMatrix& M) {
  const int K = static_cast<int>(ts.size());
  TermList out;
  out.reserve(K);
  for (int j = 0; j < K; ++j) {
    CMatrix A = CMatrix::Zero(ts[0].first.rows(), ts[0].first.cols());
    CMatrix B = CMatrix::Zero(ts[0].second.rows(), ts[0].second.cols());
    for (int k = 0; k < K; ++k) {
      A += M(j, k) * ts[k].first;
      B += std::conj(M(j, k)) * ts[k].second;
    }
    out.emplace_back(std::move(A), std::move(B));
  }
  return out;
}

inline CMatrix dft_unitary(int K) {
  CMatrix M(K, K);
  const double s = 1.0 / std::sqrt((double)K);
  for (int j = 0; j < K; ++j)
    for (int k = 0; k < K; ++k)
      M(j, k) = s * std::exp(Complex(0.0, 2.0 * M_PI * j * k / K));
  return M;
}

// Scale each pair so ||A_k|| = ||B_k||; drops numerically zero terms.
inline TermList balance_terms(const TermList& ts) {
  TermList out;
  for (const auto& [a, b] : ts) {
    const double na = op_norm(a), nb = op_norm(b);
    if (na * nb <= 1e-28) continue;
    const double c = std::sqrt(nb / na);
    out.emplace_back(c * a, b / c);
  }
  return out;
}

// --- witness builders (construction-exact against the given target) ---

inline HaagerupDecomposition haagerup_from_terms(const TermList& ts,
                                                 const TensorElement& u) {
  HaagerupDecomposition d;
  for (const auto& [a, b] : ts) {
    d.A.push_back(a);
    d.B.push_back(b);
  }
  d.target = u;
  return d;
}

inline GammaDecomposition gamma_from_terms(const TermList& ts,
                                           const TensorElement& u) {
  GammaDecomposition d;
  d.pairs = ts;
  d.target = u;
  return d;
}

inline TbDecomposition tb_from_terms(const TermList& ts,
                                     const TensorElement& u) {
  TbDecomposition d;
  for (const auto& [a, b] : ts) {
    TbDecomposition::Group g;
    g.agrid = BlockMatrix(1, 1, u.a(), u.a());
    g.bgrid = BlockMatrix(1, 1, u.b(), u.b());
    g.agrid.at(0, 0) = a;
    g.bgrid.at(0, 0) = b;
    d.groups.push_back(std::move(g));
  }
  d.target = u;
  return d;
}

// Diagonal stacking: value = sum_k ||A_k|| ||B_k||.
inline SchurDecomposition schur_diag_stack(const TermList& ts,
                                           const TensorElement& u) {
  TermList kept;
  for (const auto& t : ts)
    if (op_norm(t.first) * op_norm(t.second) > 1e-28) kept.push_back(t);
  const int K = static_cast<int>(kept.size());
  if (K == 0) return SchurDecomposition::zero(u);
  SchurDecomposition d;
  d.alpha = CMatrix::Zero(1, K);
  d.beta = CMatrix::Zero(K, 1);
  d.x = BlockMatrix(K, K, u.a(), u.a());
  d.y = BlockMatrix(K, K, u.b(), u.b());
  for (int k = 0; k < K; ++k) {
    const double na = op_norm(kept[k].first), nb = op_norm(kept[k].second);
    const double w = std::sqrt(na * nb);
    d.alpha(0, k) = w;
    d.beta(k, 0) = w;
    d.x.at(k, k) = kept[k].first / na;
    d.y.at(k, k) = kept[k].second / nb;
  }
  d.target = u;
  return d;
}

// Single-row stacking: value = ||[A_1 ... A_K]|| ||[B_1 ... B_K]|| sqrt(K).
inline SchurDecomposition schur_row_stack(const TermList& ts,
                                          const TensorElement& u) {
  const int K = static_cast<int>(ts.size());
  if (K == 0) return SchurDecomposition::zero(u);
  SchurDecomposition d;
  d.alpha = CMatrix::Zero(1, K);
  d.alpha(0, 0) = 1.0;
  d.beta = CMatrix::Ones(K, 1);
  d.x = BlockMatrix(K, K, u.a(), u.a());
  d.y = BlockMatrix(K, K, u.b(), u.b());
  for (int k = 0; k < K; ++k) {
    d.x.at(0, k) = ts[k].first;
    d.y.at(0, k) = ts[k].second;
  }
  d.target = u;
  return d;
}

// Single-column stacking: the transposed arrangement.
inline SchurDecomposition schur_col_stack(const TermList& ts,
                                          const TensorElement& u) {
  const int K = static_cast<int>(ts.size());
  if (K == 0) return SchurDecomposition::zero(u);
  SchurDecomposition d;
  d.alpha = CMatrix::Ones(1, K);
  d.beta = CMatrix::Zero(K, 1);
  d.beta(0, 0) = 1.0;
  d.x = BlockMatrix(K, K, u.a(), u.a());
  d.y = BlockMatrix(K, K, u.b(), u.b());
  for (int k = 0; k < K; ++k) {
    d.x.at(k, 0) = ts[k].first;
    d.y.at(k, 0) = ts[k].second;
  }
  d.target = u;
  return d;
}

inline bool terms_first_factor_diagonal(const TermList& ts) {
  for (const auto& [a, b] : ts)
    if (!is_diagonal(a, 1e-12)) return false;
  return true;
}

// Candidate term representations of u: natural terms, grouped merges,
// Schmidt and Weyl expansions, plus DFT mixes of each. Diagonal-left
// elements keep only representations with diagonal first factors (the
// Schmidt factors are automatically diagonal there).
inline std::vector<TermList> seed_term_reps(const TensorElement& u) {
  const bool diag = u.subspace() == Subspace::diagonal_left;
  std::vector<TermList> base;
  TermList nat = terms_of(u);
  if (!nat.empty()) {
    base.push_back(nat);
    TermList g1 = group_by_first(nat);
    if (g1.size() < nat.size()) base.push_back(g1);
    TermList g2 = group_by_second(nat);
    if (g2.size() < nat.size()) base.push_back(g2);
  }
  TermList sch = schmidt_terms(u);
  if (!sch.empty()) base.push_back(sch);
  if (!diag && u.a() == u.b() && u.a() <= 4) {
    TermList wy = weyl_terms(u);
    if (!wy.empty() && wy.size() <= 64) base.push_back(wy);
  }
  std::vector<TermList> out;
  for (TermList& t : base) {
    if (diag && !terms_first_factor_diagonal(t)) continue;
    if (t.size() > 1 && t.size() <= 64)
      out.push_back(mix_unitary(t, dft_unitary((int)t.size())));
    out.push_back(std::move(t));
  }
  return out;
}

}  // namespace tnorms
