#pragma once

#include "tnorms/witness.hpp"

namespace tnorms {

// Rebalance a schur witness so that ||x|| = ||y|| = 1 and
// ||alpha|| = ||beta|| (geometric-mean split); reconstruction and value
// are unchanged. A vanishing witness collapses to the canonical empty one.
inline SchurDecomposition rebalance(const SchurDecomposition& d) {
  if (d.p() == 0) return d;
  const double na = op_norm(d.alpha), nb = op_norm(d.beta);
  const double nx = d.x.norm(), ny = d.y.norm();
  const double value = na * nb * nx * ny;
  if (value <= 0.0) return SchurDecomposition::zero(d.target);
  const double t = std::sqrt(value);
  SchurDecomposition out;
  out.alpha = d.alpha * (t / na);
  out.beta = d.beta * (t / nb);
  out.x = d.x.scaled(1.0 / nx);
  out.y = d.y.scaled(1.0 / ny);
  out.target = d.target;
  return out;
}

// Subadditivity construction: alpha = [alpha_1 alpha_2], x = x_1 + x_2
// block-diagonally. Inputs are rebalanced first, so the value is at most
// the sum of the input values.
inline SchurDecomposition combine_sum(const SchurDecomposition& d1_in,
                                      const SchurDecomposition& d2_in) {
  const SchurDecomposition d1 = rebalance(d1_in);
  const SchurDecomposition d2 = rebalance(d2_in);
  const TensorElement& u1 = d1.target;
  const TensorElement& u2 = d2.target;
  if (u1.m() != u2.m() || u1.a() != u2.a() || u1.b() != u2.b())
    throw std::invalid_argument("combine_sum: target shape mismatch");
  if (d1.p() == 0 && d2.p() == 0)
    return SchurDecomposition::zero(u1.add(u2));
  if (d1.p() == 0) {
    SchurDecomposition out = d2;
    out.target = u1.add(u2);
    return out;
  }
  if (d2.p() == 0) {
    SchurDecomposition out = d1;
    out.target = u1.add(u2);
    return out;
  }
  SchurDecomposition out;
  out.alpha = CMatrix(u1.m(), d1.p() + d2.p());
  out.alpha << d1.alpha, d2.alpha;
  out.beta = CMatrix(d1.p() + d2.p(), u1.m());
  out.beta << d1.beta, d2.beta;
  out.x = direct_sum(d1.x, d2.x);
  out.y = direct_sum(d1.y, d2.y);
  out.target = u1.add(u2);
  return out;
}

// Direct-sum construction at the outer level; after rebalancing the value
// is max(value_1, value_2).
inline SchurDecomposition combine_direct_sum(const SchurDecomposition& d1_in,
                                             const SchurDecomposition& d2_in) {
  const SchurDecomposition d1 = rebalance(d1_in);
  const SchurDecomposition d2 = rebalance(d2_in);
  const TensorElement& u1 = d1.target;
  const TensorElement& u2 = d2.target;
  if (u1.a() != u2.a() || u1.b() != u2.b())
    throw std::invalid_argument("combine_direct_sum: factor shape mismatch");
  SchurDecomposition out;
  out.alpha = direct_sum(d1.alpha, d2.alpha);
  out.beta = direct_sum(d1.beta, d2.beta);
  out.x = direct_sum(d1.x, d2.x);
  out.y = direct_sum(d1.y, d2.y);
  out.target = TensorElement::outer_direct_sum(u1, u2);
  return out;
}

// gamma u delta = (gamma alpha)(x o y)(beta delta).
inline SchurDecomposition compress(const CMatrix& gamma,
                                   const SchurDecomposition& d,
                                   const CMatrix& delta) {
  if (gamma.cols() != d.target.m() || delta.rows() != d.target.m())
    throw std::invalid_argument("compress: scalar shape mismatch");
  SchurDecomposition out;
  out.alpha = gamma * d.alpha;
  out.beta = d.beta * delta;
  out.x = d.x;
  out.y = d.y;
  out.target = d.target.outer_compress(gamma, delta);
  return out;
}

// Product witness (m = 1): alpha'' = alpha (x) gamma and blocks
// x''_{(ik),(jl)} = x_{ij} z_{kl} multiplied inside M_a.
inline SchurDecomposition combine_product(const SchurDecomposition& d1,
                                          const SchurDecomposition& d2) {
  const TensorElement& u1 = d1.target;
  const TensorElement& u2 = d2.target;
  if (u1.m() != 1 || u2.m() != 1)
    throw std::invalid_argument("combine_product requires m = 1");
  if (u1.a() != u2.a() || u1.b() != u2.b())
    throw std::invalid_argument("combine_product: factor shape mismatch");
  TensorElement prod = TensorElement::multiply(u1, u2);
  if (d1.p() == 0 || d2.p() == 0) return SchurDecomposition::zero(prod);
  const int p = d1.p(), q = d2.p();
  SchurDecomposition out;
  out.alpha = kron(d1.alpha, d2.alpha);
  out.beta = kron(d1.beta, d2.beta);
  out.x = BlockMatrix(p * q, p * q, u1.a(), u1.a());
  out.y = BlockMatrix(p * q, p * q, u1.b(), u1.b());
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < p; ++j)
      for (int k = 0; k < q; ++k)
        for (int l = 0; l < q; ++l) {
          out.x.at(i * q + k, j * q + l) = d1.x.at(i, j) * d2.x.at(k, l);
          out.y.at(i * q + k, j * q + l) = d1.y.at(i, j) * d2.y.at(k, l);
        }
  out.target = std::move(prod);
  return out;
}

// u* = beta* (x* o y*) alpha*; value is preserved exactly.
inline SchurDecomposition adjoint_decomposition(const SchurDecomposition& d) {
  SchurDecomposition out;
  out.alpha = d.beta.adjoint();
  out.beta = d.alpha.adjoint();
  out.x = d.x.adjoint();
  out.y = d.y.adjoint();
  out.target = d.target.adjoint();
  return out;
}

// Witness for the swapped element: exchange the roles of x and y.
inline SchurDecomposition swap_witness(const SchurDecomposition& d) {
  SchurDecomposition out;
  out.alpha = d.alpha;
  out.beta = d.beta;
  out.x = d.y;
  out.y = d.x;
  out.target = d.target.swap();
  return out;
}

// Self-adjoint representation u = alpha~ (v o w) alpha~* with v, w
// self-adjoint antidiagonal 2x2 block extensions and the optimal scale
// lambda_0 = sqrt(||alpha|| / ||beta||).
inline SchurDecomposition symmetrize(const SchurDecomposition& d) {
  if (!d.target.is_self_adjoint(1e-10))
    throw std::invalid_argument("symmetrize requires a self-adjoint target");
  if (d.p() == 0) return d;
  const double na = op_norm(d.alpha), nb = op_norm(d.beta);
  if (na <= 0.0 || nb <= 0.0) return SchurDecomposition::zero(d.target);
  const double lambda0 = std::sqrt(na / nb);
  const int p = d.p(), m = d.target.m();
  const double s = 1.0 / std::sqrt(2.0);
  SchurDecomposition out;
  out.alpha = CMatrix(m, 2 * p);
  out.alpha << (lambda0 * s) * d.beta.adjoint(), (s / lambda0) * d.alpha;
  out.beta = out.alpha.adjoint();
  auto antidiag = [p](const BlockMatrix& z) {
    BlockMatrix v(2 * p, 2 * p, z.block_rows(), z.block_cols());
    for (int i = 0; i < p; ++i)
      for (int j = 0; j < p; ++j) {
        v.at(i, p + j) = z.at(j, i).adjoint();  // (z*)_{ij}
        v.at(p + i, j) = z.at(i, j);
      }
    return v;
  };
  out.x = antidiag(d.x);
  out.y = antidiag(d.y);
  out.target = d.target;
  return out;
}

// Interleaved zero-padding turning a schur witness into a projective one
// of the same value: alpha spreads onto the (i,i) columns of the (p,p)
// double index, which preserves row and column norms exactly.
inline ProjectiveDecomposition spread_to_projective(
    const SchurDecomposition& d) {
  ProjectiveDecomposition out;
  const int p = d.p(), m = d.target.m();
  out.alpha = CMatrix::Zero(m, static_cast<Eigen::Index>(p) * p);
  out.beta = CMatrix::Zero(static_cast<Eigen::Index>(p) * p, m);
  for (int i = 0; i < p; ++i) {
    out.alpha.col(static_cast<Eigen::Index>(i) * p + i) = d.alpha.col(i);
    out.beta.row(static_cast<Eigen::Index>(i) * p + i) = d.beta.row(i);
  }
  out.x = d.x;
  out.y = d.y;
  out.target = d.target;
  return out;
}

// All-ones compression of an averaged grid representation: each group
// contributes its grids as a block-diagonal summand, with the 1/n_k
// prefactor absorbed by all-ones scalar rows of norm sqrt(n_k).
inline SchurDecomposition schur_from_tb(const TbDecomposition& t) {
  int total = 0;
  for (const auto& g : t.groups) total += g.size();
  if (total == 0) return SchurDecomposition::zero(t.target);
  const int a = t.target.a(), b = t.target.b();
  SchurDecomposition out;
  out.alpha = CMatrix::Zero(1, total);
  out.beta = CMatrix::Zero(total, 1);
  out.x = BlockMatrix(total, total, a, a);
  out.y = BlockMatrix(total, total, b, b);
  int off = 0;
  for (const auto& g : t.groups) {
    const int nk = g.size();
    const double wa = g.agrid.norm(), wb = g.bgrid.norm();
    if (wa > 0.0 && wb > 0.0) {
      const double c = std::sqrt(wa * wb / nk);
      for (int i = 0; i < nk; ++i) {
        out.alpha(0, off + i) = c;
        out.beta(off + i, 0) = c;
        for (int j = 0; j < nk; ++j) {
          out.x.at(off + i, off + j) = g.agrid.at(i, j) / wa;
          out.y.at(off + i, off + j) = g.bgrid.at(i, j) / wb;
        }
      }
    }
    off += nk;
  }
  out.target = t.target;
  return out;
}

// The explicit witness for sum_j e_{j1} (x) e_{j1}: alpha = e_1^t,
// beta all-ones, x = y with first row e_{11}, e_{21}, ..., e_{n1};
// evaluates to exactly sqrt(n).
inline SchurDecomposition lemma_witness(int n) {
  SchurDecomposition d;
  d.target = make_table_element(4, n);
  d.alpha = CMatrix::Zero(1, n);
  d.alpha(0, 0) = 1.0;
  d.beta = CMatrix::Ones(n, 1);
  d.x = BlockMatrix(n, n, n, n);
  for (int j = 0; j < n; ++j) d.x.at(0, j) = matrix_unit(n, j, 0);
  d.y = d.x;
  return d;
}

}  // namespace tnorms
