#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "contset/automata.hpp"
#include "contset/lasso.hpp"

namespace contset {

struct TransducerTransition {
  State src;
  Word input;
  Word output;
  State dst;

  friend auto operator<=>(const TransducerTransition&,
                          const TransducerTransition&) = default;
};

/// Buchi transducer: transitions carry an input word and an output word
/// (either may be empty). A pair (x, y) of infinite words is accepted along
/// a computation visiting an accepting state infinitely often whose input
/// and output are both infinite.
class Transducer {
 public:
  Transducer(Alphabet input, Alphabet output, std::size_t num_states,
             State initial, std::vector<State> accepting,
             std::vector<TransducerTransition> transitions);

  const Alphabet& input_alphabet() const noexcept { return input_; }
  const Alphabet& output_alphabet() const noexcept { return output_; }
  std::size_t num_states() const noexcept { return num_states_; }
  State initial() const noexcept { return initial_; }
  bool is_accepting(State q) const { return accepting_.at(q); }
  std::vector<State> accepting_states() const;
  std::span<const TransducerTransition> transitions() const noexcept {
    return transitions_;
  }
  std::span<const TransducerTransition> successors(State q) const;

  /// Every label is a single input letter and a single output letter.
  bool is_synchronous() const;

 private:
  Alphabet input_;
  Alphabet output_;
  std::size_t num_states_;
  State initial_;
  std::vector<bool> accepting_;
  std::vector<TransducerTransition> transitions_;
  std::vector<std::size_t> offsets_;
};

/// Letter-to-letter view of a synchronous transducer.
class SyncTransducer {
 public:
  struct Edge {
    Symbol input;
    Symbol output;
    State dst;
  };

  /// Throws PreconditionError if some label is not a letter pair.
  explicit SyncTransducer(Transducer t);

  const Transducer& general() const noexcept { return t_; }
  const Alphabet& input_alphabet() const noexcept {
    return t_.input_alphabet();
  }
  const Alphabet& output_alphabet() const noexcept {
    return t_.output_alphabet();
  }
  std::size_t num_states() const noexcept { return t_.num_states(); }
  State initial() const noexcept { return t_.initial(); }
  bool is_accepting(State q) const { return t_.is_accepting(q); }
  std::span<const Edge> edges(State q) const {
    return {edges_.data() + offsets_[q], edges_.data() + offsets_[q + 1]};
  }

 private:
  Transducer t_;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_;
};

/// Keeps states that are reachable and lie on an accepting computation
/// whose cycle reads and writes at least one letter.
Transducer trim(const Transducer& t);
SyncTransducer trim(const SyncTransducer& t);

Nba domain(const Transducer& t);
Nba image(const Transducer& t);
inline Nba domain(const SyncTransducer& t) { return domain(t.general()); }
inline Nba image(const SyncTransducer& t) { return image(t.general()); }

struct EvalResult {
  /// Distinct outputs, normalized, in discovery order.
  std::vector<LassoWord> outputs;
  /// More outputs exist beyond the requested bound.
  bool truncated = false;
};

/// Outputs of t on x, at most `bound` of them (bound >= 1).
EvalResult evaluate(const Transducer& t, const LassoWord& x,
                    std::size_t bound);
inline EvalResult evaluate(const SyncTransducer& t, const LassoWord& x,
                           std::size_t bound) {
  return evaluate(t.general(), x, bound);
}

struct NonFunctionalWitness {
  LassoWord input;
  LassoWord first_output;
  LassoWord second_output;
};

struct FunctionalityVerdict {
  bool functional = true;
  std::optional<NonFunctionalWitness> witness;

  explicit operator bool() const noexcept { return functional; }
};

/// Exact decision for synchronous transducers.
FunctionalityVerdict check_functional(const SyncTransducer& t);

/// Searches inputs u(v) with |u| + |v| <= max_length for two outputs. A
/// negative answer only covers the explored inputs.
std::optional<NonFunctionalWitness> find_nonfunctional_witness(
    const Transducer& t, std::size_t max_length);

}  // namespace contset
