#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>

namespace tnorms {

// The eight norms handled by the library, listed in chain order:
// lambda <= s_prime <= min <= h <= proj <= schur <= tb <= gamma.
// (min coincides with max on matrix algebra factors, so max is not a
// separate kind.)
enum class NormKind { lambda, s_prime, min, h, proj, schur, tb, gamma };

constexpr std::array<NormKind, 8> all_norm_kinds{
    NormKind::lambda, NormKind::s_prime, NormKind::min,  NormKind::h,
    NormKind::proj,   NormKind::schur,   NormKind::tb,   NormKind::gamma};

constexpr std::array<NormKind, 5> upper_search_kinds{
    NormKind::h, NormKind::proj, NormKind::schur, NormKind::tb,
    NormKind::gamma};

inline int chain_index(NormKind k) { return static_cast<int>(k); }

inline bool chain_leq(NormKind a, NormKind b) {
  return chain_index(a) <= chain_index(b);
}

inline bool is_upper_search_kind(NormKind k) {
  return k == NormKind::h || k == NormKind::proj || k == NormKind::schur ||
         k == NormKind::tb || k == NormKind::gamma;
}

inline std::string to_string(NormKind k) {
  switch (k) {
    case NormKind::lambda: return "lambda";
    case NormKind::s_prime: return "s_prime";
    case NormKind::min: return "min";
    case NormKind::h: return "h";
    case NormKind::proj: return "proj";
    case NormKind::schur: return "schur";
    case NormKind::tb: return "tb";
    case NormKind::gamma: return "gamma";
  }
  throw std::logic_error("unreachable norm kind");
}

inline std::optional<NormKind> parse_norm_kind(const std::string& s) {
  for (NormKind k : all_norm_kinds)
    if (to_string(k) == s) return k;
  return std::nullopt;
}

}  // namespace tnorms
