#pragma once

#include "contset/automata.hpp"
#include "contset/lasso.hpp"
#include "contset/transducer.hpp"

namespace contset {

// All operations below require a functional transducer and throw
// PreconditionError otherwise. The transducer is trimmed internally.

/// Points of the domain where f_t is discontinuous. States are triples
/// (p, p', diverged) of two runs on the same input; the first run must be
/// accepting, the second only infinite.
Nba discontinuity_automaton(const SyncTransducer& t);

/// The continuity set C(f_t): domain minus the discontinuity points.
Nba continuity_set(const SyncTransducer& t);

bool is_continuous(const SyncTransducer& t);

/// Throws PreconditionError when x is outside the domain.
bool is_continuous_at(const SyncTransducer& t, const LassoWord& x);

}  // namespace contset
