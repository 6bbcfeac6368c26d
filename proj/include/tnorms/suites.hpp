#pragma once

#include <sstream>

#include "tnorms/bilinear_form.hpp"
#include "tnorms/bracket.hpp"
#include "tnorms/table_data.hpp"

namespace tnorms {

struct SuiteResult {
  std::string suite;
  bool pass = true;
  int trials = 0;
  int violations = 0;
  Json details = Json::array();
  std::optional<Json> reproducer;  // minimal failing instance

  Json to_json() const {
    Json j{{"suite", suite},
           {"pass", pass},
           {"trials", trials},
           {"violations", violations},
           {"details", details}};
    if (reproducer) j["reproducer"] = *reproducer;
    return j;
  }
};

namespace detail {

inline SchurDecomposition random_suite_witness(int m, int a, int b, int p,
                                               Rng& rng) {
  SchurDecomposition d;
  d.alpha = gaussian_matrix(m, p, rng);
  d.beta = gaussian_matrix(p, m, rng);
  d.x = BlockMatrix(p, p, a, a);
  d.y = BlockMatrix(p, p, b, b);
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < p; ++j) {
      d.x.at(i, j) = gaussian_matrix(a, a, rng);
      d.y.at(i, j) = gaussian_matrix(b, b, rng);
    }
  d.target = d.reconstruct();
  return d;
}

inline void record_violation(SuiteResult& res, const std::string& what,
                             std::uint64_t seed, int trial,
                             const Json& extra = {}) {
  res.pass = false;
  ++res.violations;
  if (!res.reproducer) {
    Json r{{"what", what}, {"seed", seed}, {"trial", trial}};
    if (!extra.is_null()) r["instance"] = extra;
    res.reproducer = r;
  }
}

inline double recon_err(const SchurDecomposition& d) {
  return frob(d.reconstruct().dense() - d.target.dense()) /
         std::max(1e-30, frob(d.target.dense()));
}

}  // namespace detail

// Dimension-axiom checks driven through the proof combinators:
// subadditivity, direct-sum max bound, scalar compression.
inline SuiteResult run_ruan_suite(int trials, std::uint64_t seed) {
  SuiteResult res;
  res.suite = "ruan";
  res.trials = trials;
  for (int t = 0; t < trials; ++t) {
    Rng rng = Rng::derived(seed, t);
    const int m = 1 + rng.uniform_int(2);
    SchurDecomposition d1 = detail::random_suite_witness(m, 2, 2, 2, rng);
    SchurDecomposition d2 = detail::random_suite_witness(m, 2, 2, 3, rng);

    SchurDecomposition s = combine_sum(d1, d2);
    if (detail::recon_err(s) > 1e-8 ||
        s.evaluate() > d1.evaluate() + d2.evaluate() + 1e-9)
      detail::record_violation(res, "combine_sum subadditivity", seed, t,
                               witness_to_json(WitnessVariant(d1)));

    SchurDecomposition ds = combine_direct_sum(d1, d2);
    if (detail::recon_err(ds) > 1e-8 ||
        ds.evaluate() > std::max(d1.evaluate(), d2.evaluate()) + 1e-9)
      detail::record_violation(res, "direct sum max bound", seed, t,
                               witness_to_json(WitnessVariant(d1)));

    CMatrix g = gaussian_matrix(m, m, rng);
    CMatrix del = gaussian_matrix(m, m, rng);
    SchurDecomposition c = compress(g, d1, del);
    if (detail::recon_err(c) > 1e-8 ||
        c.evaluate() > op_norm(g) * d1.evaluate() * op_norm(del) + 1e-9)
      detail::record_violation(res, "scalar compression bound", seed, t,
                               witness_to_json(WitnessVariant(d1)));

    SchurDecomposition rb = rebalance(d1);
    if (std::abs(rb.evaluate() - d1.evaluate()) >
        1e-9 * std::max(1.0, d1.evaluate()))
      detail::record_violation(res, "rebalance value drift", seed, t);
  }
  return res;
}

// Banach-algebra checks: product submultiplicativity, adjoint value
// equality, the self-adjoint representation.
inline SuiteResult run_algebra_suite(int trials, std::uint64_t seed) {
  SuiteResult res;
  res.suite = "algebra";
  res.trials = trials;
  for (int t = 0; t < trials; ++t) {
    Rng rng = Rng::derived(seed, 1000 + t);
    SchurDecomposition d1 = detail::random_suite_witness(1, 2, 2, 2, rng);
    SchurDecomposition d2 = detail::random_suite_witness(1, 2, 2, 2, rng);

    SchurDecomposition pr = combine_product(d1, d2);
    if (detail::recon_err(pr) > 1e-8 ||
        pr.evaluate() > d1.evaluate() * d2.evaluate() + 1e-9)
      detail::record_violation(res, "product submultiplicativity", seed, t,
                               witness_to_json(WitnessVariant(d1)));

    SchurDecomposition ad = adjoint_decomposition(d1);
    if (std::abs(ad.evaluate() - d1.evaluate()) >
        1e-9 * std::max(1.0, d1.evaluate()))
      detail::record_violation(res, "adjoint value equality", seed, t);

    SchurDecomposition half = combine_sum(d1, adjoint_decomposition(d1));
    half.alpha *= 0.5;
    half.target = half.reconstruct();
    SchurDecomposition sym = symmetrize(half);
    const double bound = op_norm(half.alpha) * op_norm(half.beta) *
                         half.x.norm() * half.y.norm();
    if (detail::recon_err(sym) > 1e-7 || sym.evaluate() > bound + 1e-9)
      detail::record_violation(res, "symmetrize bound", seed, t,
                               half.target.to_json());
  }
  return res;
}

// Bracket-level chain consistency on random elements.
inline SuiteResult run_chain_suite(int trials, std::uint64_t seed,
                                   SearchConfig cfg = {}) {
  SuiteResult res;
  res.suite = "chain";
  res.trials = trials;
  cfg.restarts = std::min(cfg.restarts, 12);
  cfg.max_iters = std::min(cfg.max_iters, 100);
  for (int t = 0; t < trials; ++t) {
    Rng rng = Rng::derived(seed, 2000 + t);
    TensorElement u =
        TensorElement::random(1, 2, 2, 1 + rng.uniform_int(3),
                              seed * 1315423911ULL + t);
    cfg.seed = seed + t;
    std::map<NormKind, NormBracket> brs;
    for (NormKind k : all_norm_kinds) brs[k] = bracket(u, k, cfg);
    for (NormKind k1 : all_norm_kinds)
      for (NormKind k2 : all_norm_kinds) {
        if (!chain_leq(k1, k2)) continue;
        if (brs[k1].lower > brs[k2].upper + 1e-9) {
          detail::record_violation(
              res,
              "chain crossing " + to_string(k1) + " over " + to_string(k2),
              seed, t, u.to_json());
        }
      }
    if (brs[NormKind::s_prime].lower > u.min_norm() + 1e-9)
      detail::record_violation(res, "s_prime exceeds min", seed, t,
                               u.to_json());
  }
  return res;
}

// Estimate-level duality checks: level monotonicity, sb below jcb, and
// the pairing diagnostic against the reference schur column.
inline SuiteResult run_duality_suite(int trials, std::uint64_t seed,
                                     int level = 3) {
  SuiteResult res;
  res.suite = "duality";
  res.trials = trials;
  std::vector<TableRow> table;
  try {
    table = load_reference_table(default_table_path());
  } catch (const std::exception&) {
    // pairing diagnostics are skipped without the data file
  }
  double worst_gap = 0.0;
  int flagged = 0;
  for (int t = 0; t < trials; ++t) {
    Rng rng = Rng::derived(seed, 3000 + t);
    BilinearForm phi = BilinearForm::random(2, 2, rng);
    std::vector<double> ests;
    for (int L = 1; L <= level; ++L)
      ests.push_back(sb_norm_estimate(phi, L, seed + t, 6));
    for (int L = 1; L < level; ++L)
      if (ests[L - 1] > ests[L] + 1e-9)
        detail::record_violation(res, "sb level monotonicity", seed, t);
    const double jcb = jcb_norm_estimate(phi, level, seed + t, 6);
    if (ests[level - 1] > jcb + 1e-9)
      detail::record_violation(res, "sb above jcb", seed, t);

    // swapping the arguments preserves the schur norm; log the estimate
    // discrepancy as an empirical observation
    CMatrix cs(4, 4);
    for (int r = 0; r < 2; ++r)
      for (int s = 0; s < 2; ++s)
        for (int w = 0; w < 2; ++w)
          for (int v = 0; v < 2; ++v)
            cs(w * 2 + v, r * 2 + s) = phi.coeff()(r * 2 + s, w * 2 + v);
    BilinearForm phi_swapped(2, 2, cs);
    const double swapped = sb_norm_estimate(phi_swapped, level, seed + t, 6);

    if (!table.empty() && ests[level - 1] > 1e-9) {
      for (int id = 1; id <= 12; ++id) {
        const TensorElement u = make_table_element(id, 2);
        const double sref = reference_value(table, id, NormKind::schur, 2);
        const double ratio =
            std::abs(phi.pair_element(u)) / ests[level - 1];
        if (ratio > sref) {
          ++flagged;
          worst_gap = std::max(worst_gap, (ratio - sref) / sref);
        }
      }
    }
    res.details.push_back(Json{{"trial", t},
                               {"sb_levels", ests},
                               {"jcb", jcb},
                               {"sb_swapped", swapped}});
  }
  res.details.push_back(Json{{"pairing_ratio_flags", flagged},
                             {"worst_estimate_gap", worst_gap}});
  return res;
}

inline std::optional<SuiteResult> run_suite(const std::string& name,
                                            int trials, std::uint64_t seed,
                                            const SearchConfig& cfg) {
  if (name == "ruan") return run_ruan_suite(trials, seed);
  if (name == "algebra") return run_algebra_suite(trials, seed);
  if (name == "chain") return run_chain_suite(trials, seed, cfg);
  if (name == "duality")
    return run_duality_suite(trials, seed, std::min(cfg.level, 3));
  return std::nullopt;
}

}  // namespace tnorms
