#pragma once

#include "tnorms/lower_bounds.hpp"
#include "tnorms/search.hpp"

namespace tnorms {

// Lower-bound witness records. min is exact (singular pair), lambda and
// s' carry their feasible maximizers, chain means the bound was inherited
// from an exactly known norm lower in the chain.
struct MinWitness {
  CVector left, right;
  double value = 0.0;

  Json to_json() const {
    return Json{{"kind", "min"},
                {"left", matrix_to_json(left)},
                {"right", matrix_to_json(right)},
                {"value", value}};
  }
};

using LowerWitness =
    std::variant<std::monostate, MinWitness, LambdaWitness, SPrimeWitness>;

inline Json lower_witness_to_json(const LowerWitness& w) {
  if (std::holds_alternative<std::monostate>(w)) return Json{{"kind", "chain"}};
  if (const auto* m = std::get_if<MinWitness>(&w)) return m->to_json();
  if (const auto* l = std::get_if<LambdaWitness>(&w)) return l->to_json();
  return std::get<SPrimeWitness>(w).to_json();
}

// Two-sided enclosure of one norm of one element: a certified lower
// bound, a certified upper bound, and the objects witnessing both.
struct NormBracket {
  NormKind kind = NormKind::min;
  double lower = 0.0;
  double upper = 0.0;
  bool exact = false;  // lower == upper by construction
  LowerWitness lower_witness;
  std::optional<WitnessVariant> upper_witness;
  SearchDiagnostics diag;

  Json to_json(bool include_witnesses = true) const {
    Json j{{"kind", to_string(kind)}, {"lower", lower}, {"upper", upper},
           {"exact", exact},          {"diagnostics", diag.to_json()}};
    if (include_witnesses) {
      j["lower_witness"] = lower_witness_to_json(lower_witness);
      if (upper_witness) j["upper_witness"] = witness_to_json(*upper_witness);
    }
    return j;
  }
};

inline MinWitness min_witness(const TensorElement& u) {
  MinWitness w;
  if (u.is_zero()) {
    w.left = CVector::Zero(u.dense().rows());
    w.right = CVector::Zero(u.dense().rows());
    return w;
  }
  detail::top_singular_triplet(u.dense(), w.value, w.left, w.right);
  return w;
}

// The certified lower bound sources are lambda, s', and the exact min;
// bounds propagate upward along the chain. Upper bounds come from
// decomposition search for the inf-type kinds and from exact values or
// chain domination otherwise.
inline NormBracket bracket(const TensorElement& u, NormKind kind,
                           const SearchConfig& cfg) {
  NormBracket out;
  out.kind = kind;
  const double minv = u.min_norm();
  switch (kind) {
    case NormKind::min: {
      MinWitness w = min_witness(u);
      out.lower = out.upper = w.value;
      out.exact = true;
      out.lower_witness = std::move(w);
      return out;
    }
    case NormKind::lambda: {
      LambdaResult lr = lambda_norm(u, std::max(8, cfg.restarts / 2),
                                    cfg.max_iters, cfg.seed);
      out.lower = lr.value;
      out.upper = lr.converged ? lr.value : minv;
      out.exact = lr.converged;
      out.diag.restarts_used = lr.restarts_used;
      out.lower_witness = lr.witness;
      return out;
    }
    case NormKind::s_prime: {
      SPrimeResult sr = s_prime_lower(u, std::max(8, cfg.restarts / 2),
                                      cfg.max_iters, cfg.seed);
      out.lower = sr.value;
      out.upper = minv;  // s' <= min, and min is exact
      out.diag.restarts_used = sr.restarts_used;
      if (sr.witness) out.lower_witness = *sr.witness;
      return out;
    }
    default: {
      // min <= max <= h <= proj <= schur <= tb <= gamma, and min is the
      // largest certified lower source below all of these
      UpperEstimate ue = estimate_upper(u, kind, cfg);
      out.lower = minv;
      out.upper = ue.value;
      out.upper_witness = std::move(ue.witness);
      out.diag = ue.diag;
      out.lower_witness = min_witness(u);
      return out;
    }
  }
}

}  // namespace tnorms
