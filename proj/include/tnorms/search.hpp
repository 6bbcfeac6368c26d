#pragma once

#include <algorithm>

#include "tnorms/combinators.hpp"
#include "tnorms/terms.hpp"

namespace tnorms {

struct SearchConfig {
  int restarts = 64;
  int rank_cap = 0;  // 0 means 2ab
  int max_iters = 500;
  double tol = 1e-8;
  std::uint64_t seed = 0;
  int level = 4;  // matrix level for sb/jcb estimates

  int effective_rank_cap(int a, int b) const {
    return rank_cap > 0 ? rank_cap : 2 * a * b;
  }

  Json to_json() const {
    return Json{{"restarts", restarts}, {"rank_cap", rank_cap},
                {"max_iters", max_iters}, {"tol", tol},
                {"seed", seed},         {"level", level}};
  }
};

struct SearchDiagnostics {
  int restarts_used = 0;
  bool cap_saturated = false;
  double best_residual = 0.0;
  double dispersion = 0.0;  // spread of the best restart values
  int witness_rank = 0;

  Json to_json() const {
    return Json{{"restarts_used", restarts_used},
                {"cap_saturated", cap_saturated},
                {"best_residual", best_residual},
                {"dispersion", dispersion},
                {"witness_rank", witness_rank}};
  }
};

struct UpperEstimate {
  double value = 0.0;
  WitnessVariant witness;
  SearchDiagnostics diag;
};

namespace detail {

// --- mixing engine -----------------------------------------------------
// All inf-type searches work on term lists {(A_k, B_k)} acted on by
// GL(K): A' = M A, B' = (M^{-1})^T B. Multiplicative updates
// M <- (I + E) M keep the represented element exact while descending a
// kind-specific cost.

enum class MixCost { gamma, haagerup, rowstack, colstack };

inline double mix_cost(const TermList& ts, MixCost c) {
  switch (c) {
    case MixCost::gamma: {
      double s = 0.0;
      for (const auto& [a, b] : ts) s += op_norm(a) * op_norm(b);
      return s;
    }
    case MixCost::haagerup: {
      if (ts.empty()) return 0.0;
      CMatrix P = CMatrix::Zero(ts[0].first.rows(), ts[0].first.rows());
      CMatrix Q = CMatrix::Zero(ts[0].second.cols(), ts[0].second.cols());
      for (const auto& [a, b] : ts) {
        P += a * a.adjoint();
        Q += b.adjoint() * b;
      }
      return std::sqrt(op_norm(P) * op_norm(Q));
    }
    case MixCost::rowstack: {
      if (ts.empty()) return 0.0;
      CMatrix P = CMatrix::Zero(ts[0].first.rows(), ts[0].first.rows());
      CMatrix R = CMatrix::Zero(ts[0].second.rows(), ts[0].second.rows());
      for (const auto& [a, b] : ts) {
        P += a * a.adjoint();
        R += b * b.adjoint();
      }
      return std::sqrt((double)ts.size()) * std::sqrt(op_norm(P)) *
             std::sqrt(op_norm(R));
    }
    case MixCost::colstack: {
      if (ts.empty()) return 0.0;
      CMatrix P = CMatrix::Zero(ts[0].first.cols(), ts[0].first.cols());
      CMatrix R = CMatrix::Zero(ts[0].second.cols(), ts[0].second.cols());
      for (const auto& [a, b] : ts) {
        P += a.adjoint() * a;
        R += b.adjoint() * b;
      }
      return std::sqrt((double)ts.size()) * std::sqrt(op_norm(P)) *
             std::sqrt(op_norm(R));
    }
  }
  return 0.0;
}

// Gradient of the cost under the multiplicative update; returns G with
// d cost = Re sum_{jk} E_{jk} G_{jk}, so -conj(G) is the descent direction.
inline CMatrix mix_grad(const TermList& ts, MixCost c) {
  const int K = (int)ts.size();
  CMatrix G = CMatrix::Zero(K, K);
  auto top_vec = [](const CMatrix& h) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
    return CVector(es.eigenvectors().col(h.rows() - 1));
  };
  switch (c) {
    case MixCost::gamma: {
      std::vector<CMatrix> UA(K), UB(K);
      std::vector<double> na(K), nb(K);
      for (int k = 0; k < K; ++k) {
        double s;
        CVector l, r;
        top_singular_triplet(ts[k].first, s, l, r);
        na[k] = s;
        UA[k] = l * r.adjoint();
        top_singular_triplet(ts[k].second, s, l, r);
        nb[k] = s;
        UB[k] = l * r.adjoint();
      }
      for (int j = 0; j < K; ++j)
        for (int k = 0; k < K; ++k)
          G(j, k) = nb[j] * (UA[j].adjoint() * ts[k].first).trace() -
                    na[k] * (UB[k].adjoint() * ts[j].second).trace();
      return G;
    }
    case MixCost::haagerup: {
      CMatrix P = CMatrix::Zero(ts[0].first.rows(), ts[0].first.rows());
      CMatrix Q = CMatrix::Zero(ts[0].second.cols(), ts[0].second.cols());
      for (const auto& [a, b] : ts) {
        P += a * a.adjoint();
        Q += b.adjoint() * b;
      }
      const double np = op_norm(P), nq = op_norm(Q);
      if (np <= 0 || nq <= 0) return G;
      const double cost = std::sqrt(np * nq);
      CVector w = top_vec(P), z = top_vec(Q);
      CMatrix W = w * w.adjoint(), Z = z * z.adjoint();
      for (int j = 0; j < K; ++j)
        for (int k = 0; k < K; ++k) {
          Complex hp = ((W * ts[j].first).adjoint() * ts[k].first).trace();
          Complex hq =
              -((ts[k].second * Z).adjoint() * ts[j].second).trace();
          G(j, k) = cost * (hp / np + hq / nq);
        }
      return G;
    }
    case MixCost::rowstack:
    case MixCost::colstack: {
      const bool row = (c == MixCost::rowstack);
      CMatrix P, R;
      if (row) {
        P = CMatrix::Zero(ts[0].first.rows(), ts[0].first.rows());
        R = CMatrix::Zero(ts[0].second.rows(), ts[0].second.rows());
        for (const auto& [a, b] : ts) {
          P += a * a.adjoint();
          R += b * b.adjoint();
        }
      } else {
        P = CMatrix::Zero(ts[0].first.cols(), ts[0].first.cols());
        R = CMatrix::Zero(ts[0].second.cols(), ts[0].second.cols());
        for (const auto& [a, b] : ts) {
          P += a.adjoint() * a;
          R += b.adjoint() * b;
        }
      }
      const double np = op_norm(P), nr = op_norm(R);
      if (np <= 0 || nr <= 0) return G;
      const double pref = std::sqrt((double)K);
      const double cost = pref * std::sqrt(np) * std::sqrt(nr);
      CVector w = top_vec(P), z = top_vec(R);
      CMatrix W = w * w.adjoint(), Z = z * z.adjoint();
      for (int j = 0; j < K; ++j)
        for (int k = 0; k < K; ++k) {
          Complex hp, hr;
          if (row) {
            hp = ((W * ts[j].first).adjoint() * ts[k].first).trace();
            hr = -((Z * ts[k].second).adjoint() * ts[j].second).trace();
          } else {
            hp = ((ts[j].first * W).adjoint() * ts[k].first).trace();
            hr = -((ts[k].second * Z).adjoint() * ts[j].second).trace();
          }
          G(j, k) = 0.5 * cost * (hp / np + hr / nr);
        }
      return G;
    }
  }
  return G;
}

inline TermList apply_mix_step(const TermList& ts, const CMatrix& E) {
  const int K = (int)ts.size();
  CMatrix T = CMatrix::Identity(K, K) + E;
  Eigen::PartialPivLU<CMatrix> lu(T);
  CMatrix Tinv = lu.inverse();
  TermList out(K);
  for (int j = 0; j < K; ++j) {
    CMatrix A = CMatrix::Zero(ts[0].first.rows(), ts[0].first.cols());
    CMatrix B = CMatrix::Zero(ts[0].second.rows(), ts[0].second.cols());
    for (int k = 0; k < K; ++k) {
      A += T(j, k) * ts[k].first;
      B += std::conj(Tinv(k, j)) * ts[k].second;  // ((T^{-1})^T)_{jk}
    }
    out[j] = {std::move(A), std::move(B)};
  }
  return out;
}

struct MixOutcome {
  TermList terms;
  double cost = 0.0;
  int iters = 0;
};

inline MixOutcome mix_descend(TermList ts, MixCost c, Rng& rng, int max_iters,
                              double tol, bool random_kick) {
  MixOutcome out;
  if (ts.size() <= 0) {
    out.terms = ts;
    return out;
  }
  const int K = (int)ts.size();
  if (random_kick && K > 1) {
    CMatrix E = 0.2 * gaussian_matrix(K, K, rng);
    ts = apply_mix_step(ts, E);
  }
  double cost = mix_cost(ts, c);
  double step = 0.15;
  int stall = 0;
  for (int it = 0; it < max_iters && K > 1; ++it) {
    CMatrix G = mix_grad(ts, c);
    double gn = G.norm();
    if (gn <= 1e-14 * std::max(1.0, cost)) break;
    CMatrix dir = -G.conjugate() / gn;
    bool ok = false;
    double s = step;
    for (int bt = 0; bt < 8; ++bt) {
      CMatrix E = s * dir;
      if (E.norm() > 0.45) E *= 0.45 / E.norm();
      TermList trial = apply_mix_step(ts, E);
      double tc = mix_cost(trial, c);
      if (tc < cost - 1e-15) {
        ts = std::move(trial);
        if (cost - tc <= tol * std::max(1.0, cost))
          ++stall;
        else
          stall = 0;
        cost = tc;
        step = std::min(0.45, s * 1.4);
        ok = true;
        break;
      }
      s *= 0.3;
    }
    out.iters = it + 1;
    if (!ok || stall > 8) break;
  }
  out.terms = std::move(ts);
  out.cost = cost;
  return out;
}

// canceling pairs (C, D), (C, -D) enlarge the reachable span at zero
// reconstruction change
inline TermList with_canceling_pad(const TermList& ts, int extra, Rng& rng,
                                   bool diag_first, double scale) {
  TermList out = ts;
  if (ts.empty()) return out;
  const int a = (int)ts[0].first.rows();
  const int brows = (int)ts[0].second.rows();
  for (int e = 0; e < extra; ++e) {
    CMatrix C = gaussian_matrix(a, a, rng);
    if (diag_first) C = diagonal_part(C);
    CMatrix D = scale * gaussian_matrix(brows, brows, rng);
    out.emplace_back(C, D);
    out.emplace_back(C, -D);
  }
  return out;
}

// rewrite (alpha, beta) against fixed (x, y) by least squares so the
// reconstruction is exact; returns the residual.
inline double refit_scalars(SchurDecomposition& d) {
  const int p = d.p(), m = d.target.m();
  if (p == 0) return d.target.is_zero() ? 0.0 : 1.0;
  const int ab = d.target.a() * d.target.b();
  const CMatrix Z = schur_block(d.x, d.y).flatten();
  const Eigen::Index dim = (Eigen::Index)m * ab;
  auto vecof = [dim](const CMatrix& M) {
    CVector v(dim * dim);
    for (Eigen::Index j = 0; j < dim; ++j) v.segment(j * dim, dim) = M.col(j);
    return v;
  };
  const CVector uvec = vecof(d.target.dense());
  for (int sweep = 0; sweep < 3; ++sweep) {
    {  // alpha entries
      CMatrix design(dim * dim, (Eigen::Index)m * p);
      for (int r = 0; r < m; ++r)
        for (int i = 0; i < p; ++i) {
          CMatrix basis = CMatrix::Zero(m, p);
          basis(r, i) = 1.0;
          design.col((Eigen::Index)r * p + i) = vecof(
              kron(basis, CMatrix::Identity(ab, ab)) * Z *
              kron(d.beta, CMatrix::Identity(ab, ab)));
        }
      CVector sol = design.colPivHouseholderQr().solve(uvec);
      for (int r = 0; r < m; ++r)
        for (int i = 0; i < p; ++i)
          d.alpha(r, i) = sol((Eigen::Index)r * p + i);
    }
    {  // beta entries
      CMatrix design(dim * dim, (Eigen::Index)p * m);
      for (int i = 0; i < p; ++i)
        for (int r = 0; r < m; ++r) {
          CMatrix basis = CMatrix::Zero(p, m);
          basis(i, r) = 1.0;
          design.col((Eigen::Index)i * m + r) = vecof(
              kron(d.alpha, CMatrix::Identity(ab, ab)) * Z *
              kron(basis, CMatrix::Identity(ab, ab)));
        }
      CVector sol = design.colPivHouseholderQr().solve(uvec);
      for (int i = 0; i < p; ++i)
        for (int r = 0; r < m; ++r) d.beta(i, r) = sol((Eigen::Index)i * m + r);
    }
    double res = frob(d.reconstruct().dense() - d.target.dense()) /
                 std::max(1e-30, frob(d.target.dense()));
    if (res <= 1e-11) return res;
  }
  return frob(d.reconstruct().dense() - d.target.dense()) /
         std::max(1e-30, frob(d.target.dense()));
}

// accept-if-better random perturbations of the grids with scalar refits
inline SchurDecomposition refine_schur_local(SchurDecomposition d, Rng& rng,
                                             int iters, bool diag_first) {
  d = rebalance(d);
  if (d.p() == 0) return d;
  double best = d.evaluate();
  double step = 0.08;
  for (int it = 0; it < iters; ++it) {
    SchurDecomposition trial = d;
    for (int i = 0; i < trial.p(); ++i)
      for (int j = 0; j < trial.p(); ++j) {
        if (rng.uniform() < 0.5) continue;
        CMatrix ka = step * gaussian_matrix(trial.x.block_rows(),
                                            trial.x.block_cols(), rng);
        if (diag_first) ka = diagonal_part(ka);
        trial.x.at(i, j) += ka;
        trial.y.at(i, j) += step * gaussian_matrix(trial.y.block_rows(),
                                                   trial.y.block_cols(), rng);
      }
    double res = refit_scalars(trial);
    if (res > 1e-9) {
      step *= 0.6;
      continue;
    }
    trial = rebalance(trial);
    double v = trial.evaluate();
    if (v < best - 1e-14) {
      d = std::move(trial);
      best = v;
      step = std::min(0.3, step * 1.25);
    } else {
      step *= 0.75;
    }
    if (step < 1e-6) break;
  }
  return d;
}

// expand outer coefficients into rank-one pieces so terms can be stacked
inline TermList rank_one_expanded_terms(const TensorElement& u,
                                        std::vector<CVector>* left = nullptr,
                                        std::vector<CVector>* right = nullptr) {
  TermList out;
  for (const Term& t : effective_terms(u)) {
    Eigen::JacobiSVD<CMatrix> svd(t.coeff,
                                  Eigen::ComputeThinU | Eigen::ComputeThinV);
    for (Eigen::Index k = 0; k < svd.singularValues().size(); ++k) {
      const double s = svd.singularValues()(k);
      if (s <= 1e-14) break;
      out.emplace_back(t.A, t.B);
      if (left) left->push_back(std::sqrt(s) * svd.matrixU().col(k));
      if (right)
        right->push_back(std::sqrt(s) * svd.matrixV().col(k).conjugate());
    }
  }
  return out;
}

// diagonal stack valid for any outer level: term k enters slot (k, k)
// with alpha column (coeff left factor) and beta row (right factor).
inline SchurDecomposition schur_diag_stack_outer(const TensorElement& u) {
  std::vector<CVector> L, R;
  TermList ts = rank_one_expanded_terms(u, &L, &R);
  const int K = (int)ts.size();
  if (K == 0) return SchurDecomposition::zero(u);
  SchurDecomposition d;
  d.alpha = CMatrix::Zero(u.m(), K);
  d.beta = CMatrix::Zero(K, u.m());
  d.x = BlockMatrix(K, K, u.a(), u.a());
  d.y = BlockMatrix(K, K, u.b(), u.b());
  for (int k = 0; k < K; ++k) {
    const double na = op_norm(ts[k].first), nb = op_norm(ts[k].second);
    if (na * nb <= 1e-28) {
      d.x.at(k, k) = ts[k].first;
      d.y.at(k, k) = ts[k].second;
      continue;
    }
    const double w = std::sqrt(na * nb);
    d.alpha.col(k) = w * L[k];
    d.beta.row(k) = (w * R[k]).transpose();
    d.x.at(k, k) = ts[k].first / na;
    d.y.at(k, k) = ts[k].second / nb;
  }
  d.target = u;
  return d;
}

struct Candidate {
  double value = 0.0;
  int rank = 0;
  int order = 0;
  WitnessVariant witness;
};

inline bool candidate_better(const Candidate& a, const Candidate& b) {
  if (a.value < b.value - 1e-12) return true;
  if (b.value < a.value - 1e-12) return false;
  if (a.rank != b.rank) return a.rank < b.rank;
  return a.order < b.order;
}

}  // namespace detail

// Best decomposition-backed upper bound found by seeded multi-restart
// local search. The returned value is certified: the witness reconstructs
// the element (residual checked) and its evaluation is the bound.
inline UpperEstimate estimate_upper(const TensorElement& u, NormKind kind,
                                    const SearchConfig& cfg) {
  using namespace detail;
  if (!is_upper_search_kind(kind))
    throw std::invalid_argument("estimate_upper: kind is not an inf-type norm");
  if (u.m() != 1 && kind != NormKind::schur && kind != NormKind::proj)
    throw std::invalid_argument(
        "estimate_upper: this norm kind requires outer level m = 1");

  UpperEstimate out;
  if (u.is_zero()) {
    switch (kind) {
      case NormKind::h: out.witness = HaagerupDecomposition::zero(u); break;
      case NormKind::proj: out.witness = ProjectiveDecomposition::zero(u); break;
      case NormKind::schur: out.witness = SchurDecomposition::zero(u); break;
      case NormKind::tb: out.witness = TbDecomposition::zero(u); break;
      case NormKind::gamma: out.witness = GammaDecomposition::zero(u); break;
      default: break;
    }
    return out;
  }

  const bool diag = u.subspace() == Subspace::diagonal_left;
  const int cap = cfg.effective_rank_cap(u.a(), u.b());
  std::vector<Candidate> pool;
  int order = 0;
  std::vector<double> restart_values;

  auto push = [&](WitnessVariant w, int rank) {
    const double res = witness_residual(w);
    if (res > 1e-8) return;  // reject: not a certificate
    Candidate c;
    c.value = witness_value(w);
    c.rank = rank;
    c.order = order++;
    c.witness = std::move(w);
    restart_values.push_back(c.value);
    if (c.rank >= cap) out.diag.cap_saturated = true;
    pool.push_back(std::move(c));
  };

  const std::vector<TermList> reps = seed_term_reps(u);

  auto push_from_terms = [&](const TermList& ts) {
    if (ts.empty()) return;
    const int K = (int)ts.size();
    switch (kind) {
      case NormKind::h:
        push(haagerup_from_terms(ts, u), K);
        break;
      case NormKind::gamma:
        push(gamma_from_terms(ts, u), K);
        break;
      case NormKind::tb:
        push(tb_from_terms(ts, u), K);
        break;
      case NormKind::schur: {
        TermList bal = balance_terms(ts);
        push(schur_diag_stack(ts, u), K);
        if (!bal.empty()) {
          push(schur_row_stack(bal, u), (int)bal.size());
          push(schur_col_stack(bal, u), (int)bal.size());
        }
        break;
      }
      case NormKind::proj: {
        TermList bal = balance_terms(ts);
        push(spread_to_projective(schur_diag_stack(ts, u)), K);
        if (!bal.empty()) {
          push(spread_to_projective(schur_row_stack(bal, u)), (int)bal.size());
          push(spread_to_projective(schur_col_stack(bal, u)), (int)bal.size());
        }
        break;
      }
      default:
        break;
    }
  };

  // seed candidates straight from every representation
  for (const TermList& ts : reps) push_from_terms(ts);
  if (kind == NormKind::schur || kind == NormKind::proj) {
    SchurDecomposition dd = schur_diag_stack_outer(u);
    if (dd.p() > 0) {
      if (kind == NormKind::schur)
        push(dd, dd.p());
      else
        push(spread_to_projective(dd), dd.p());
    }
  }

  // mixing-engine restarts over the representations
  const std::vector<MixCost> costs =
      (kind == NormKind::h) ? std::vector<MixCost>{MixCost::haagerup}
      : (kind == NormKind::gamma || kind == NormKind::tb)
          ? std::vector<MixCost>{MixCost::gamma}
          : std::vector<MixCost>{MixCost::gamma, MixCost::rowstack,
                                 MixCost::colstack};

  for (int r = 0; r < cfg.restarts && !reps.empty(); ++r) {
    Rng rng = Rng::derived(cfg.seed, 7000 + r);
    const TermList& base = reps[r % reps.size()];
    if (base.empty()) continue;
    MixCost c = costs[(r / (int)reps.size()) % costs.size()];
    TermList start = base;
    if (r >= 2 * (int)reps.size() && (r % 3) == 2 &&
        (int)base.size() + 2 <= cap) {
      start = with_canceling_pad(base, 1, rng, diag, 0.05);
    }
    MixOutcome mo = mix_descend(std::move(start), c, rng, cfg.max_iters,
                                cfg.tol, r >= (int)reps.size());
    ++out.diag.restarts_used;
    switch (kind) {
      case NormKind::h:
        push(haagerup_from_terms(mo.terms, u), (int)mo.terms.size());
        break;
      case NormKind::gamma:
        push(gamma_from_terms(mo.terms, u), (int)mo.terms.size());
        break;
      case NormKind::tb:
        push(tb_from_terms(mo.terms, u), (int)mo.terms.size());
        break;
      case NormKind::schur:
      case NormKind::proj: {
        TermList bal = balance_terms(mo.terms);
        SchurDecomposition s;
        if (c == MixCost::rowstack)
          s = schur_row_stack(bal.empty() ? mo.terms : bal, u);
        else if (c == MixCost::colstack)
          s = schur_col_stack(bal.empty() ? mo.terms : bal, u);
        else
          s = schur_diag_stack(mo.terms, u);
        if (kind == NormKind::schur)
          push(s, s.p());
        else
          push(spread_to_projective(s), s.p());
        break;
      }
      default:
        break;
    }
  }

  // local polish of the best schur candidates
  if (kind == NormKind::schur && !pool.empty()) {
    std::sort(pool.begin(), pool.end(), candidate_better);
    const int polish = std::min<int>(3, (int)pool.size());
    for (int i = 0; i < polish; ++i) {
      if (auto* sd = std::get_if<SchurDecomposition>(&pool[i].witness)) {
        Rng rng = Rng::derived(cfg.seed, 90000 + i);
        SchurDecomposition ref = refine_schur_local(
            *sd, rng, std::min(cfg.max_iters, 120), diag);
        push(ref, ref.p());
      }
    }
  }

  if (pool.empty()) {
    // last-resort certified witness straight from the Schmidt expansion
    TermList sch = schmidt_terms(u);
    push_from_terms(sch);
  }
  if (pool.empty())
    throw std::runtime_error("estimate_upper: no certified witness found");

  std::sort(pool.begin(), pool.end(), candidate_better);
  const Candidate& best = pool.front();
  out.value = best.value;
  out.witness = best.witness;
  out.diag.best_residual = witness_residual(best.witness);
  out.diag.witness_rank = best.rank;
  std::sort(restart_values.begin(), restart_values.end());
  const int topn = std::min<size_t>(10, restart_values.size());
  out.diag.dispersion = restart_values[topn - 1] - restart_values[0];
  return out;
}

}  // namespace tnorms
