#pragma once

#include <optional>
#include <utility>

#include "contset/automata.hpp"
#include "contset/transducer.hpp"

namespace contset {

/// Synchronous function on alphabet^omega whose continuity set is L(a).
///
/// Output alphabet is the input alphabet plus one fresh letter c. The
/// function is the identity on L(a), w.c^omega on the closure minus L(a)
/// (w the longest prefix ending in an accepting state), and w.b^omega or
/// w.c^omega outside the closure depending on whether b occurs infinitely
/// often (w the longest live prefix).
///
/// `a` must be trim unless its language is empty. Over a one-letter
/// alphabet the identity is returned.
SyncTransducer pi2_witness(const Dba& a, Symbol b);

/// Splits L(m) into two disjoint deterministic Muller languages that are
/// both dense in L(m). Throws PreconditionError when L(m) is empty or has
/// isolated points.
std::pair<DetMuller, DetMuller> dense_partition(const DetMuller& m);

/// Synchronous function with domain L(d) whose continuity set is
/// L(xp) intersected with L(d). Requires every isolated point of L(d) to be
/// in that intersection. `b` defaults to the last input letter.
SyncTransducer witness_on_domain(const DetMuller& d, const Dba& xp,
                                 std::optional<Symbol> b = std::nullopt);

/// X union the complement of D; requires L(x) within L(d).
Nba globalize_pi2(const Nba& x, const Nba& d);

}  // namespace contset
