#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "contset/alphabet.hpp"

namespace contset {

using State = std::uint32_t;

struct Transition {
  State src;
  Symbol symbol;
  State dst;

  friend auto operator<=>(const Transition&, const Transition&) = default;
};

/// Nondeterministic Buchi automaton with states 0..n-1.
///
/// Transitions are kept sorted by (src, symbol, dst) and duplicate free, so
/// successors() is a contiguous range.
class Nba {
 public:
  Nba(Alphabet alphabet, std::size_t num_states, State initial,
      std::vector<State> accepting, std::vector<Transition> transitions);

  /// One initial state, no transitions, nothing accepting.
  static Nba empty(Alphabet alphabet);
  /// One accepting state looping on every letter.
  static Nba universal(Alphabet alphabet);

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  std::size_t num_states() const noexcept { return num_states_; }
  State initial() const noexcept { return initial_; }
  bool is_accepting(State q) const { return accepting_.at(q); }
  std::vector<State> accepting_states() const;

  std::span<const Transition> transitions() const noexcept {
    return transitions_;
  }
  std::span<const Transition> successors(State q) const;
  std::span<const Transition> successors(State q, Symbol a) const;

  bool is_deterministic() const;

  /// Same automaton with another initial state.
  Nba with_initial(State q) const;

 private:
  Alphabet alphabet_;
  std::size_t num_states_;
  State initial_;
  std::vector<bool> accepting_;
  std::vector<Transition> transitions_;
  std::vector<std::size_t> offsets_;
};

/// Deterministic, possibly partial, Buchi automaton. A missing transition
/// kills the run.
class Dba {
 public:
  /// Throws PreconditionError if `nba` has two transitions on the same
  /// (state, symbol).
  explicit Dba(Nba nba);
  Dba(Alphabet alphabet, std::size_t num_states, State initial,
      std::vector<State> accepting, std::vector<Transition> transitions);

  const Nba& nba() const noexcept { return nba_; }
  const Alphabet& alphabet() const noexcept { return nba_.alphabet(); }
  std::size_t num_states() const noexcept { return nba_.num_states(); }
  State initial() const noexcept { return nba_.initial(); }
  bool is_accepting(State q) const { return nba_.is_accepting(q); }

  std::optional<State> next(State q, Symbol a) const;

 private:
  Nba nba_;
};

/// Deterministic, possibly partial, Muller automaton. A run is accepting
/// when the set of states it visits infinitely often is one of the table
/// entries.
class DetMuller {
 public:
  DetMuller(Alphabet alphabet, std::size_t num_states, State initial,
            std::vector<Transition> transitions,
            std::vector<std::vector<State>> table);

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  std::size_t num_states() const noexcept { return num_states_; }
  State initial() const noexcept { return initial_; }
  std::span<const Transition> transitions() const noexcept {
    return transitions_;
  }
  /// Sorted, duplicate-free entries, each sorted and non-empty.
  const std::vector<std::vector<State>>& table() const noexcept {
    return table_;
  }

  std::optional<State> next(State q, Symbol a) const;
  std::span<const Transition> successors(State q) const;

  DetMuller with_initial(State q) const;

 private:
  Alphabet alphabet_;
  std::size_t num_states_;
  State initial_;
  std::vector<Transition> transitions_;
  std::vector<std::size_t> offsets_;
  std::vector<std::vector<State>> table_;
};

/// Complete DFA accepting the finite prefixes of an omega-language. Every
/// state except the absorbing sink is live (accepting).
class PrefixDfa {
 public:
  PrefixDfa(Alphabet alphabet, std::size_t num_states, State initial,
            State sink, std::vector<State> delta);

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  std::size_t num_states() const noexcept { return num_states_; }
  State initial() const noexcept { return initial_; }
  State sink() const noexcept { return sink_; }
  bool is_live(State q) const noexcept { return q != sink_; }
  State next(State q, Symbol a) const {
    return delta_[q * alphabet_.size() + a];
  }
  State run(std::span<const Symbol> word) const;
  bool accepts(std::span<const Symbol> word) const {
    return is_live(run(word));
  }

 private:
  Alphabet alphabet_;
  std::size_t num_states_;
  State initial_;
  State sink_;
  std::vector<State> delta_;
};

}  // namespace contset
