#pragma once

#include <optional>

#include "contset/automata.hpp"
#include "contset/lasso.hpp"

namespace contset {

/// Keeps the states that are reachable and can still reach an accepting
/// cycle. An empty language yields Nba::empty().
Nba trim(const Nba& a);

/// A word of L(a), or std::nullopt when L(a) is empty. The witness is the
/// lasso through the accepting state nearest to the initial state (ties by
/// state index) with the shortest cycle back to it.
std::optional<LassoWord> find_accepted_word(const Nba& a);
bool is_empty(const Nba& a);

/// Membership of an ultimately periodic word.
bool accepts(const Nba& a, const LassoWord& w);

Nba intersect(const Nba& a, const Nba& b);
Nba unite(const Nba& a, const Nba& b);

Nba to_nba(const DetMuller& m);

/// Drops unreachable states, states that cannot reach a realizable table
/// entry, and table entries that cannot be the infinity set of a run.
DetMuller trim(const DetMuller& m);

/// Deterministic complement: the completed automaton with every realizable
/// infinity set outside the table. Throws PreconditionError when a strongly
/// connected component has more than 20 states.
DetMuller complement(const DetMuller& m);

PrefixDfa prefix_dfa(const Nba& a);

/// Topological closure: the safety language of prefix_dfa(a).
Nba closure(const Nba& a);

/// True iff x is contained in the closure of L(candidate).
bool is_dense_in(const Nba& candidate, const Nba& x);

/// Points of the language isolated in the prefix topology.
Nba isolated_points(const Dba& a);
Nba isolated_points(const DetMuller& m);

}  // namespace contset
