#pragma once

#include <stdexcept>
#include <vector>

#include "tnorms/matrix.hpp"

namespace tnorms {

// Rectangular grid of equally sized dense blocks; models elements of
// M_{p,q}(M_a) etc. The norm of a block matrix is always the operator
// norm of its flattened scalar form.
class BlockMatrix {
 public:
  BlockMatrix() = default;

  BlockMatrix(int grid_rows, int grid_cols, int block_rows, int block_cols)
      : grid_rows_(grid_rows),
        grid_cols_(grid_cols),
        block_rows_(block_rows),
        block_cols_(block_cols),
        blocks_(static_cast<size_t>(grid_rows) * grid_cols,
                CMatrix::Zero(block_rows, block_cols)) {}

  static BlockMatrix zero(int p, int block_dim) {
    return BlockMatrix(p, p, block_dim, block_dim);
  }

  int grid_rows() const { return grid_rows_; }
  int grid_cols() const { return grid_cols_; }
  int block_rows() const { return block_rows_; }
  int block_cols() const { return block_cols_; }
  bool empty() const { return grid_rows_ == 0 || grid_cols_ == 0; }

  const CMatrix& at(int i, int j) const {
    return blocks_[static_cast<size_t>(i) * grid_cols_ + j];
  }
  CMatrix& at(int i, int j) {
    return blocks_[static_cast<size_t>(i) * grid_cols_ + j];
  }

  void set(int i, int j, const CMatrix& m) {
    if (m.rows() != block_rows_ || m.cols() != block_cols_)
      throw std::invalid_argument("block has wrong inner dimensions");
    at(i, j) = m;
  }

  CMatrix flatten() const {
    CMatrix out =
        CMatrix::Zero(static_cast<Eigen::Index>(grid_rows_) * block_rows_,
                      static_cast<Eigen::Index>(grid_cols_) * block_cols_);
    for (int i = 0; i < grid_rows_; ++i)
      for (int j = 0; j < grid_cols_; ++j)
        out.block(static_cast<Eigen::Index>(i) * block_rows_,
                  static_cast<Eigen::Index>(j) * block_cols_, block_rows_,
                  block_cols_) = at(i, j);
    return out;
  }

  static BlockMatrix from_flat(const CMatrix& m, int grid_rows, int grid_cols,
                               int block_rows, int block_cols) {
    if (m.rows() != static_cast<Eigen::Index>(grid_rows) * block_rows ||
        m.cols() != static_cast<Eigen::Index>(grid_cols) * block_cols)
      throw std::invalid_argument("flat matrix does not match grid shape");
    BlockMatrix b(grid_rows, grid_cols, block_rows, block_cols);
    for (int i = 0; i < grid_rows; ++i)
      for (int j = 0; j < grid_cols; ++j)
        b.at(i, j) = m.block(static_cast<Eigen::Index>(i) * block_rows,
                             static_cast<Eigen::Index>(j) * block_cols,
                             block_rows, block_cols);
    return b;
  }

  BlockMatrix adjoint() const {
    BlockMatrix out(grid_cols_, grid_rows_, block_cols_, block_rows_);
    for (int i = 0; i < grid_rows_; ++i)
      for (int j = 0; j < grid_cols_; ++j) out.at(j, i) = at(i, j).adjoint();
    return out;
  }

  BlockMatrix scaled(Complex c) const {
    BlockMatrix out = *this;
    for (auto& b : out.blocks_) b *= c;
    return out;
  }

  double norm() const { return op_norm(flatten()); }

 private:
  int grid_rows_ = 0, grid_cols_ = 0;
  int block_rows_ = 0, block_cols_ = 0;
  std::vector<CMatrix> blocks_;
};

// Blockwise Schur product: (x o y)_{ij} = x_{ij} (x) y_{ij}.
inline BlockMatrix schur_block(const BlockMatrix& x, const BlockMatrix& y) {
  if (x.grid_rows() != y.grid_rows() || x.grid_cols() != y.grid_cols())
    throw std::invalid_argument("schur_block: grid size mismatch");
  BlockMatrix out(x.grid_rows(), x.grid_cols(),
                  x.block_rows() * y.block_rows(),
                  x.block_cols() * y.block_cols());
  for (int i = 0; i < x.grid_rows(); ++i)
    for (int j = 0; j < x.grid_cols(); ++j)
      out.at(i, j) = kron(x.at(i, j), y.at(i, j));
  return out;
}

// Full blockwise Kronecker product: block ((i,k),(j,l)) = x_{ij} (x) y_{kl}.
inline BlockMatrix kron_block(const BlockMatrix& x, const BlockMatrix& y) {
  BlockMatrix out(x.grid_rows() * y.grid_rows(),
                  x.grid_cols() * y.grid_cols(),
                  x.block_rows() * y.block_rows(),
                  x.block_cols() * y.block_cols());
  for (int i = 0; i < x.grid_rows(); ++i)
    for (int j = 0; j < x.grid_cols(); ++j)
      for (int k = 0; k < y.grid_rows(); ++k)
        for (int l = 0; l < y.grid_cols(); ++l)
          out.at(i * y.grid_rows() + k, j * y.grid_cols() + l) =
              kron(x.at(i, j), y.at(k, l));
  return out;
}

inline BlockMatrix direct_sum(const BlockMatrix& x, const BlockMatrix& y) {
  if (x.block_rows() != y.block_rows() || x.block_cols() != y.block_cols())
    throw std::invalid_argument("direct_sum: inner dimensions differ");
  BlockMatrix out(x.grid_rows() + y.grid_rows(), x.grid_cols() + y.grid_cols(),
                  x.block_rows(), x.block_cols());
  for (int i = 0; i < x.grid_rows(); ++i)
    for (int j = 0; j < x.grid_cols(); ++j) out.at(i, j) = x.at(i, j);
  for (int i = 0; i < y.grid_rows(); ++i)
    for (int j = 0; j < y.grid_cols(); ++j)
      out.at(x.grid_rows() + i, x.grid_cols() + j) = y.at(i, j);
  return out;
}

// Scalar compression E = [e_11, e_22, ..., e_pp] as a p x p^2 matrix;
// flatten(x o y) = (E (x) I)(flatten(x (x) y))(E^t (x) I).
inline CMatrix diagonal_selector(int p) {
  CMatrix e = CMatrix::Zero(p, static_cast<Eigen::Index>(p) * p);
  for (int i = 0; i < p; ++i) e(i, static_cast<Eigen::Index>(i) * p + i) = 1.0;
  return e;
}

// (gamma (x) I_inner) . flatten(x), for scalar gamma acting at grid level
inline CMatrix scalar_times_flat(const CMatrix& gamma, const CMatrix& flat,
                                 int inner) {
  return kron(gamma, CMatrix::Identity(inner, inner)) * flat;
}

inline bool blocks_all_diagonal(const BlockMatrix& x, double tol = 1e-12) {
  for (int i = 0; i < x.grid_rows(); ++i)
    for (int j = 0; j < x.grid_cols(); ++j)
      if (!is_diagonal(x.at(i, j), tol)) return false;
  return true;
}

}  // namespace tnorms
