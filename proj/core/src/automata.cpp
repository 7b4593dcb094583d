#include "contset/automata.hpp"

#include <algorithm>
#include <string>

#include "contset/error.hpp"

namespace contset {

namespace {

void check_state(State q, std::size_t n, const char* what) {
  if (q >= n) {
    throw PreconditionError(std::string(what) + " state " + std::to_string(q) +
                            " out of range");
  }
}

std::vector<std::size_t> build_offsets(std::span<const Transition> ts,
                                       std::size_t n) {
  std::vector<std::size_t> offsets(n + 1, 0);
  for (const auto& t : ts) ++offsets[t.src + 1];
  for (std::size_t i = 0; i < n; ++i) offsets[i + 1] += offsets[i];
  return offsets;
}

void normalize_transitions(std::vector<Transition>& ts, const Alphabet& alphabet,
                           std::size_t n) {
  for (const auto& t : ts) {
    check_state(t.src, n, "transition source");
    check_state(t.dst, n, "transition target");
    if (!alphabet.contains(t.symbol))
      throw PreconditionError("transition symbol outside the alphabet");
  }
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
}

std::optional<State> deterministic_next(std::span<const Transition> succ,
                                        Symbol a) {
  auto it = std::lower_bound(
      succ.begin(), succ.end(), a,
      [](const Transition& t, Symbol s) { return t.symbol < s; });
  if (it == succ.end() || it->symbol != a) return std::nullopt;
  return it->dst;
}

}  // namespace

Nba::Nba(Alphabet alphabet, std::size_t num_states, State initial,
         std::vector<State> accepting, std::vector<Transition> transitions)
    : alphabet_(std::move(alphabet)),
      num_states_(num_states),
      initial_(initial),
      accepting_(num_states, false),
      transitions_(std::move(transitions)) {
  if (num_states_ == 0) throw PreconditionError("automaton needs a state");
  check_state(initial_, num_states_, "initial");
  for (State q : accepting) {
    check_state(q, num_states_, "accepting");
    accepting_[q] = true;
  }
  normalize_transitions(transitions_, alphabet_, num_states_);
  offsets_ = build_offsets(transitions_, num_states_);
}

Nba Nba::empty(Alphabet alphabet) { return Nba(std::move(alphabet), 1, 0, {}, {}); }

Nba Nba::universal(Alphabet alphabet) {
  std::vector<Transition> ts;
  for (Symbol a = 0; a < alphabet.size(); ++a) ts.push_back({0, a, 0});
  return Nba(std::move(alphabet), 1, 0, {0}, std::move(ts));
}

std::vector<State> Nba::accepting_states() const {
  std::vector<State> out;
  for (State q = 0; q < num_states_; ++q)
    if (accepting_[q]) out.push_back(q);
  return out;
}

std::span<const Transition> Nba::successors(State q) const {
  check_state(q, num_states_, "query");
  return {transitions_.data() + offsets_[q], transitions_.data() + offsets_[q + 1]};
}

std::span<const Transition> Nba::successors(State q, Symbol a) const {
  auto all = successors(q);
  auto lo = std::lower_bound(all.begin(), all.end(), a,
                             [](const Transition& t, Symbol s) { return t.symbol < s; });
  auto hi = std::upper_bound(lo, all.end(), a,
                             [](Symbol s, const Transition& t) { return s < t.symbol; });
  return {lo, hi};
}

bool Nba::is_deterministic() const {
  for (std::size_t i = 1; i < transitions_.size(); ++i) {
    if (transitions_[i].src == transitions_[i - 1].src &&
        transitions_[i].symbol == transitions_[i - 1].symbol)
      return false;
  }
  return true;
}

Nba Nba::with_initial(State q) const {
  check_state(q, num_states_, "initial");
  Nba copy = *this;
  copy.initial_ = q;
  return copy;
}

Dba::Dba(Nba nba) : nba_(std::move(nba)) {
  if (!nba_.is_deterministic())
    throw PreconditionError("automaton is not deterministic");
}

Dba::Dba(Alphabet alphabet, std::size_t num_states, State initial,
         std::vector<State> accepting, std::vector<Transition> transitions)
    : Dba(Nba(std::move(alphabet), num_states, initial, std::move(accepting),
              std::move(transitions))) {}

std::optional<State> Dba::next(State q, Symbol a) const {
  return deterministic_next(nba_.successors(q), a);
}

DetMuller::DetMuller(Alphabet alphabet, std::size_t num_states, State initial,
                     std::vector<Transition> transitions,
                     std::vector<std::vector<State>> table)
    : alphabet_(std::move(alphabet)),
      num_states_(num_states),
      initial_(initial),
      transitions_(std::move(transitions)),
      table_(std::move(table)) {
  if (num_states_ == 0) throw PreconditionError("automaton needs a state");
  check_state(initial_, num_states_, "initial");
  normalize_transitions(transitions_, alphabet_, num_states_);
  for (std::size_t i = 1; i < transitions_.size(); ++i) {
    if (transitions_[i].src == transitions_[i - 1].src &&
        transitions_[i].symbol == transitions_[i - 1].symbol)
      throw PreconditionError("Muller automaton is not deterministic");
  }
  offsets_ = build_offsets(transitions_, num_states_);
  for (auto& set : table_) {
    if (set.empty()) throw PreconditionError("Muller table entry is empty");
    for (State q : set) check_state(q, num_states_, "table");
    std::sort(set.begin(), set.end());
    set.erase(std::unique(set.begin(), set.end()), set.end());
  }
  std::sort(table_.begin(), table_.end());
  table_.erase(std::unique(table_.begin(), table_.end()), table_.end());
}

std::optional<State> DetMuller::next(State q, Symbol a) const {
  return deterministic_next(successors(q), a);
}

std::span<const Transition> DetMuller::successors(State q) const {
  check_state(q, num_states_, "query");
  return {transitions_.data() + offsets_[q], transitions_.data() + offsets_[q + 1]};
}

DetMuller DetMuller::with_initial(State q) const {
  check_state(q, num_states_, "initial");
  DetMuller copy = *this;
  copy.initial_ = q;
  return copy;
}

PrefixDfa::PrefixDfa(Alphabet alphabet, std::size_t num_states, State initial,
                     State sink, std::vector<State> delta)
    : alphabet_(std::move(alphabet)),
      num_states_(num_states),
      initial_(initial),
      sink_(sink),
      delta_(std::move(delta)) {
  check_state(initial_, num_states_, "initial");
  check_state(sink_, num_states_, "sink");
  if (delta_.size() != num_states_ * alphabet_.size())
    throw PreconditionError("prefix DFA transition table has the wrong size");
  for (State q : delta_) check_state(q, num_states_, "transition target");
  for (Symbol a = 0; a < alphabet_.size(); ++a) {
    if (next(sink_, a) != sink_) throw PreconditionError("sink is not absorbing");
  }
}

State PrefixDfa::run(std::span<const Symbol> word) const {
  State q = initial_;
  for (Symbol a : word) {
    if (!alphabet_.contains(a))
      throw PreconditionError("letter outside the alphabet");
    q = next(q, a);
  }
  return q;
}

}  // namespace contset
