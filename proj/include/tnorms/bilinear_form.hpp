#pragma once

#include "tnorms/element.hpp"
#include "tnorms/matrix.hpp"
#include "tnorms/rng.hpp"

namespace tnorms {

// Bilinear form on M_a x M_b given by a coefficient tensor:
// phi(x, y) = sum_{r,s,t,u} C[(r,s),(t,u)] x_{rs} y_{tu}.
class BilinearForm {
 public:
  BilinearForm(int a, int b, CMatrix coeff) : a_(a), b_(b), coeff_(std::move(coeff)) {
    if (coeff_.rows() != (Eigen::Index)a_ * a_ ||
        coeff_.cols() != (Eigen::Index)b_ * b_)
      throw std::invalid_argument("bilinear form: coefficient tensor shape");
  }

  static BilinearForm random(int a, int b, Rng& rng) {
    return BilinearForm(a, b, gaussian_matrix(a * a, b * b, rng));
  }

  // phi = f (x) g for functionals with coefficient matrices F, G:
  // phi(x, y) = (sum F_{rs} x_{rs}) (sum G_{tu} y_{tu}).
  static BilinearForm rank_one(const CMatrix& F, const CMatrix& G) {
    const int a = (int)F.rows(), b = (int)G.rows();
    CMatrix c((Eigen::Index)a * a, (Eigen::Index)b * b);
    for (int r = 0; r < a; ++r)
      for (int s = 0; s < a; ++s)
        for (int t = 0; t < b; ++t)
          for (int u = 0; u < b; ++u)
            c(r * a + s, t * b + u) = F(r, s) * G(t, u);
    return BilinearForm(a, b, std::move(c));
  }

  int a() const { return a_; }
  int b() const { return b_; }
  const CMatrix& coeff() const { return coeff_; }

  Complex apply(const CMatrix& x, const CMatrix& y) const {
    Complex acc = 0.0;
    for (int r = 0; r < a_; ++r)
      for (int s = 0; s < a_; ++s) {
        const Complex xs = x(r, s);
        if (xs == Complex(0.0, 0.0)) continue;
        for (int t = 0; t < b_; ++t)
          for (int u = 0; u < b_; ++u)
            acc += coeff_(r * a_ + s, t * b_ + u) * xs * y(t, u);
      }
    return acc;
  }

  // Pairing with an m = 1 element of M_a (x) M_b.
  Complex pair_element(const TensorElement& u) const {
    Complex acc = 0.0;
    for (int r = 0; r < a_; ++r)
      for (int s = 0; s < a_; ++s)
        for (int t = 0; t < b_; ++t)
          for (int u2 = 0; u2 < b_; ++u2)
            acc += coeff_(r * a_ + s, t * b_ + u2) *
                   u.dense()((Eigen::Index)r * b_ + t,
                             (Eigen::Index)s * b_ + u2);
    return acc;
  }

  // phi_L((x_ij), (y_ij)) = (phi(x_ij, y_ij)) in M_L for the schur-type
  // amplification; X and Y are L x L block matrices.
  CMatrix sb_matrix(const CMatrix& X, const CMatrix& Y, int L) const {
    CMatrix m(L, L);
    for (int i = 0; i < L; ++i)
      for (int j = 0; j < L; ++j)
        m(i, j) = apply(X.block((Eigen::Index)i * a_, (Eigen::Index)j * a_,
                                a_, a_),
                        Y.block((Eigen::Index)i * b_, (Eigen::Index)j * b_,
                                b_, b_));
    return m;
  }

  // Full amplification phi_(L) in M_{L^2}, index order ((i,k),(j,l)).
  CMatrix jcb_matrix(const CMatrix& X, const CMatrix& Y, int L) const {
    CMatrix m((Eigen::Index)L * L, (Eigen::Index)L * L);
    for (int i = 0; i < L; ++i)
      for (int j = 0; j < L; ++j)
        for (int k = 0; k < L; ++k)
          for (int l = 0; l < L; ++l)
            m((Eigen::Index)i * L + k, (Eigen::Index)j * L + l) =
                apply(X.block((Eigen::Index)i * a_, (Eigen::Index)j * a_, a_,
                              a_),
                      Y.block((Eigen::Index)k * b_, (Eigen::Index)l * b_, b_,
                              b_));
    return m;
  }

 private:
  int a_, b_;
  CMatrix coeff_;
};

namespace detail {

// sum_{t,u} C[(r,s),(t,u)] Y(t, u) for each (r, s): the partial pairing
// of the coefficient tensor with a fixed second argument.
inline CMatrix pair_second(const BilinearForm& phi, const CMatrix& Y) {
  const int a = phi.a(), b = phi.b();
  CMatrix out(a, a);
  for (int r = 0; r < a; ++r)
    for (int s = 0; s < a; ++s) {
      Complex acc = 0.0;
      for (int t = 0; t < b; ++t)
        for (int u = 0; u < b; ++u)
          acc += phi.coeff()(r * a + s, t * b + u) * Y(t, u);
      out(r, s) = acc;
    }
  return out;
}

inline CMatrix pair_first(const BilinearForm& phi, const CMatrix& X) {
  const int a = phi.a(), b = phi.b();
  CMatrix out(b, b);
  for (int t = 0; t < b; ++t)
    for (int u = 0; u < b; ++u) {
      Complex acc = 0.0;
      for (int r = 0; r < a; ++r)
        for (int s = 0; s < a; ++s)
          acc += phi.coeff()(r * a + s, t * b + u) * X(r, s);
      out(t, u) = acc;
    }
  return out;
}

struct SbState {
  double value = 0.0;
  CMatrix X, Y;  // contractive arguments achieving it
};

// One alternating pass: linearize around the top singular pair of the
// current amplification matrix and jump to the polar maximizer on the
// unit ball of the free argument.
template <typename MatrixFn, typename GradXFn, typename GradYFn>
inline SbState alternate_maximize(MatrixFn&& matrix_of, GradXFn&& grad_x,
                                  GradYFn&& grad_y, CMatrix X, CMatrix Y,
                                  int max_iters, double tol) {
  SbState best;
  best.X = X;
  best.Y = Y;
  double prev = -1.0;
  for (int it = 0; it < max_iters; ++it) {
    CMatrix M = matrix_of(X, Y);
    Eigen::JacobiSVD<CMatrix> svd(svd_sanitized(M),
                                  Eigen::ComputeThinU | Eigen::ComputeThinV);
    const double val = svd.singularValues()(0);
    if (val > best.value) {
      best.value = val;
      best.X = X;
      best.Y = Y;
    }
    if (val <= 1e-15) break;
    const CVector uvec = svd.matrixU().col(0);
    const CVector vvec = svd.matrixV().col(0);
    if (it % 2 == 0) {
      X = polar_isometry(grad_x(uvec, vvec, Y));
    } else {
      Y = polar_isometry(grad_y(uvec, vvec, X));
    }
    if (it > 2 && std::abs(val - prev) <= tol * std::max(1.0, val) &&
        it % 2 == 1)
      break;
    prev = val;
  }
  return best;
}

}  // namespace detail

struct AmplificationEstimate {
  double value = 0.0;
  CMatrix X, Y;  // arguments achieving the estimate at this level
};

// Lower estimate of ||phi||_sb at matrix level L by alternating
// maximization over contractive L x L block arguments. Feasibility of
// every iterate makes the running maximum a valid lower estimate of the
// sup; seeding level L with the zero-padded level L-1 maximizer makes the
// estimates monotone in L.
inline AmplificationEstimate sb_norm_estimate_full(
    const BilinearForm& phi, int L, std::uint64_t seed = 0, int restarts = 12,
    int max_iters = 200, double tol = 1e-10,
    const AmplificationEstimate* warm = nullptr) {
  if (L < 1) throw std::invalid_argument("sb estimate needs level L >= 1");
  const int a = phi.a(), b = phi.b();
  auto matrix_of = [&](const CMatrix& X, const CMatrix& Y) {
    return phi.sb_matrix(X, Y, L);
  };
  // gradient of Re <u, phi_L(X, Y) v> with respect to conj(X):
  // G[(i,r),(j,s)] = conj( u_i conj(v_j) ... ), assembled so that the
  // polar factor of G maximizes the linearization over ||X|| <= 1.
  auto grad_x = [&](const CVector& u, const CVector& v, const CMatrix& Y) {
    CMatrix G((Eigen::Index)L * a, (Eigen::Index)L * a);
    for (int i = 0; i < L; ++i)
      for (int j = 0; j < L; ++j) {
        CMatrix w = detail::pair_second(
            phi, Y.block((Eigen::Index)i * b, (Eigen::Index)j * b, b, b));
        G.block((Eigen::Index)i * a, (Eigen::Index)j * a, a, a) =
            (std::conj(u(i)) * v(j) * w).conjugate();
      }
    return G;
  };
  auto grad_y = [&](const CVector& u, const CVector& v, const CMatrix& X) {
    CMatrix G((Eigen::Index)L * b, (Eigen::Index)L * b);
    for (int i = 0; i < L; ++i)
      for (int j = 0; j < L; ++j) {
        CMatrix w = detail::pair_first(
            phi, X.block((Eigen::Index)i * a, (Eigen::Index)j * a, a, a));
        G.block((Eigen::Index)i * b, (Eigen::Index)j * b, b, b) =
            (std::conj(u(i)) * v(j) * w).conjugate();
      }
    return G;
  };

  AmplificationEstimate best;
  best.X = CMatrix::Zero((Eigen::Index)L * a, (Eigen::Index)L * a);
  best.Y = CMatrix::Zero((Eigen::Index)L * b, (Eigen::Index)L * b);
  std::vector<std::pair<CMatrix, CMatrix>> starts;
  starts.emplace_back(CMatrix::Identity((Eigen::Index)L * a,
                                        (Eigen::Index)L * a),
                      CMatrix::Identity((Eigen::Index)L * b,
                                        (Eigen::Index)L * b));
  if (warm && warm->X.rows() > 0 && warm->X.rows() <= (Eigen::Index)L * a) {
    CMatrix Xp = CMatrix::Zero((Eigen::Index)L * a, (Eigen::Index)L * a);
    CMatrix Yp = CMatrix::Zero((Eigen::Index)L * b, (Eigen::Index)L * b);
    Xp.topLeftCorner(warm->X.rows(), warm->X.cols()) = warm->X;
    Yp.topLeftCorner(warm->Y.rows(), warm->Y.cols()) = warm->Y;
    starts.emplace_back(std::move(Xp), std::move(Yp));
  }
  for (int r = (int)starts.size(); r < restarts; ++r) {
    Rng rng = Rng::derived(seed, 1000 + r);
    starts.emplace_back(haar_unitary(L * a, rng), haar_unitary(L * b, rng));
  }
  for (const auto& [X0, Y0] : starts) {
    detail::SbState s = detail::alternate_maximize(matrix_of, grad_x, grad_y,
                                                   X0, Y0, max_iters, tol);
    if (s.value > best.value) {
      best.value = s.value;
      best.X = s.X;
      best.Y = s.Y;
    }
  }
  return best;
}

inline AmplificationEstimate jcb_norm_estimate_full(
    const BilinearForm& phi, int L, std::uint64_t seed = 0, int restarts = 12,
    int max_iters = 200, double tol = 1e-10,
    const AmplificationEstimate* sb_warm = nullptr) {
  if (L < 1) throw std::invalid_argument("jcb estimate needs level L >= 1");
  const int a = phi.a(), b = phi.b();
  auto matrix_of = [&](const CMatrix& X, const CMatrix& Y) {
    return phi.jcb_matrix(X, Y, L);
  };
  auto grad_x = [&](const CVector& u, const CVector& v, const CMatrix& Y) {
    CMatrix G = CMatrix::Zero((Eigen::Index)L * a, (Eigen::Index)L * a);
    for (int i = 0; i < L; ++i)
      for (int j = 0; j < L; ++j) {
        CMatrix w = CMatrix::Zero(a, a);
        for (int k = 0; k < L; ++k)
          for (int l = 0; l < L; ++l) {
            Complex c = std::conj(u((Eigen::Index)i * L + k)) *
                        v((Eigen::Index)j * L + l);
            if (c == Complex(0.0, 0.0)) continue;
            w += c * detail::pair_second(
                         phi, Y.block((Eigen::Index)k * b,
                                      (Eigen::Index)l * b, b, b));
          }
        G.block((Eigen::Index)i * a, (Eigen::Index)j * a, a, a) =
            w.conjugate();
      }
    return G;
  };
  auto grad_y = [&](const CVector& u, const CVector& v, const CMatrix& X) {
    CMatrix G = CMatrix::Zero((Eigen::Index)L * b, (Eigen::Index)L * b);
    for (int k = 0; k < L; ++k)
      for (int l = 0; l < L; ++l) {
        CMatrix w = CMatrix::Zero(b, b);
        for (int i = 0; i < L; ++i)
          for (int j = 0; j < L; ++j) {
            Complex c = std::conj(u((Eigen::Index)i * L + k)) *
                        v((Eigen::Index)j * L + l);
            if (c == Complex(0.0, 0.0)) continue;
            w += c * detail::pair_first(
                         phi, X.block((Eigen::Index)i * a,
                                      (Eigen::Index)j * a, a, a));
          }
        G.block((Eigen::Index)k * b, (Eigen::Index)l * b, b, b) =
            w.conjugate();
      }
    return G;
  };

  AmplificationEstimate best;
  std::vector<std::pair<CMatrix, CMatrix>> starts;
  starts.emplace_back(CMatrix::Identity((Eigen::Index)L * a,
                                        (Eigen::Index)L * a),
                      CMatrix::Identity((Eigen::Index)L * b,
                                        (Eigen::Index)L * b));
  if (sb_warm && sb_warm->X.rows() == (Eigen::Index)L * a)
    starts.emplace_back(sb_warm->X, sb_warm->Y);
  for (int r = (int)starts.size(); r < restarts; ++r) {
    Rng rng = Rng::derived(seed, 2000 + r);
    starts.emplace_back(haar_unitary(L * a, rng), haar_unitary(L * b, rng));
  }
  for (const auto& [X0, Y0] : starts) {
    detail::SbState s = detail::alternate_maximize(matrix_of, grad_x, grad_y,
                                                   X0, Y0, max_iters, tol);
    if (s.value > best.value) {
      best.value = s.value;
      best.X = s.X;
      best.Y = s.Y;
    }
  }
  return best;
}

// Monotone-by-construction level-L estimates: each level is seeded with
// the previous level's maximizer, zero padded.
inline double sb_norm_estimate(const BilinearForm& phi, int L,
                               std::uint64_t seed = 0, int restarts = 12) {
  AmplificationEstimate cur;
  for (int l = 1; l <= L; ++l)
    cur = sb_norm_estimate_full(phi, l, seed, restarts, 200, 1e-10,
                                l > 1 ? &cur : nullptr);
  return cur.value;
}

inline double jcb_norm_estimate(const BilinearForm& phi, int L,
                                std::uint64_t seed = 0, int restarts = 12) {
  // the schur-type maximizer compresses into the full amplification, so
  // seeding with it keeps sb_estimate(L) <= jcb_estimate(L)
  AmplificationEstimate sb;
  for (int l = 1; l <= L; ++l)
    sb = sb_norm_estimate_full(phi, l, seed, restarts, 200, 1e-10,
                               l > 1 ? &sb : nullptr);
  AmplificationEstimate jc =
      jcb_norm_estimate_full(phi, L, seed, restarts, 200, 1e-10, &sb);
  return std::max(jc.value, sb.value);
}

}  // namespace tnorms
