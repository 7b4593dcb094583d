#pragma once

#include <optional>

#include "contset/automata.hpp"
#include "contset/lasso.hpp"

namespace contset {

enum class ComplementMethod {
  /// Pick the cheapest exact construction for the input.
  automatic,
  /// Tight level rankings; works for every input.
  rank_based,
  /// Determinization to a deterministic parity automaton via trees of nested
  /// subsets; works for every input.
  /// Accepting components of the output are deterministic.
  determinization,
  /// Breakpoint construction; requires a weak automaton (every cycle is
  /// entirely accepting or entirely rejecting). Output is deterministic.
  breakpoint,
  /// Requires the transitions inside each accepting strongly connected
  /// component to be deterministic.
  deterministic_components,
};

/// Automaton for alphabet^omega minus L(a). The result is trimmed.
/// Throws PreconditionError when a forced method does not apply.
Nba complement(const Nba& a,
               ComplementMethod method = ComplementMethod::automatic);

/// Whether a forced method accepts this (trimmed) input.
bool complement_applies(const Nba& a, ComplementMethod method);

/// Outcome of a language decision with an optional counterexample.
struct Verdict {
  bool holds = true;
  std::optional<LassoWord> counterexample;

  explicit operator bool() const noexcept { return holds; }
};

/// L(a) subset of L(b); otherwise a word of L(a) \ L(b).
Verdict is_included(const Nba& a, const Nba& b);
/// L(a) == L(b); otherwise a word in the symmetric difference.
Verdict is_equivalent(const Nba& a, const Nba& b);

}  // namespace contset
