#include "contset/continuity.hpp"

#include <tuple>

#include "contset/complement.hpp"
#include "contset/error.hpp"
#include "contset/omega.hpp"
#include "graph.hpp"

namespace contset {

namespace {

SyncTransducer checked_trim(const SyncTransducer& t) {
  auto verdict = check_functional(t);
  if (!verdict) {
    const auto& w = *verdict.witness;
    throw PreconditionError("transducer is not functional: input " + w.input.to_string() +
                            " has outputs " + w.first_output.to_string() + " and " +
                            w.second_output.to_string());
  }
  return trim(t);
}

// Pairs of runs (p, p') on the same input with a flag set once their
// outputs differ. With `first_accepting`, the first run must be accepting;
// otherwise every pair of infinite runs with different outputs counts.
Nba run_pairs(const SyncTransducer& t, bool first_accepting) {
  using Key = std::tuple<State, State, int>;
  detail::Explorer<Key> ex;
  ex.id({t.initial(), t.initial(), 0});
  std::vector<Transition> ts;
  std::vector<State> acc;
  while (ex.has_work()) {
    auto [id, key] = ex.pop();
    auto [p, q, bit] = key;
    if (bit == 1 && (!first_accepting || t.is_accepting(p))) acc.push_back(id);
    for (const auto& e1 : t.edges(p)) {
      for (const auto& e2 : t.edges(q)) {
        if (e1.input != e2.input) continue;
        int nb = bit || e1.output != e2.output;
        ts.push_back({id, e1.input, ex.id({e1.dst, e2.dst, nb})});
      }
    }
  }
  return trim(Nba(t.input_alphabet(), ex.size(), 0, std::move(acc), std::move(ts)));
}

}  // namespace

Nba discontinuity_automaton(const SyncTransducer& t) {
  return run_pairs(checked_trim(t), true);
}

Nba continuity_set(const SyncTransducer& t) {
  // A domain point is a discontinuity exactly when two infinite runs on it
  // produce different outputs; that language is recognized by a weak
  // automaton, whose complement is cheap.
  auto tt = checked_trim(t);
  return intersect(domain(tt), complement(run_pairs(tt, false)));
}

bool is_continuous(const SyncTransducer& t) { return is_empty(discontinuity_automaton(t)); }

bool is_continuous_at(const SyncTransducer& t, const LassoWord& x) {
  require_same_alphabet(t.input_alphabet(), x.alphabet(), "is_continuous_at");
  auto disc = discontinuity_automaton(t);
  if (!accepts(domain(t), x))
    throw PreconditionError("point " + x.to_string() + " is not in the domain");
  return !accepts(disc, x);
}

}  // namespace contset
