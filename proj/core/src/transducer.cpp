#include "contset/transducer.hpp"

#include <algorithm>
#include <tuple>

#include "contset/error.hpp"
#include "contset/omega.hpp"
#include "graph.hpp"

namespace contset {

using detail::Explorer;
using detail::Graph;
using detail::Marks;

Transducer::Transducer(Alphabet input, Alphabet output, std::size_t num_states,
                       State initial, std::vector<State> accepting,
                       std::vector<TransducerTransition> transitions)
    : input_(std::move(input)),
      output_(std::move(output)),
      num_states_(num_states),
      initial_(initial),
      accepting_(num_states, false),
      transitions_(std::move(transitions)) {
  if (num_states_ == 0) throw PreconditionError("transducer needs a state");
  auto check = [&](State q) {
    if (q >= num_states_)
      throw PreconditionError("transducer state " + std::to_string(q) + " out of range");
  };
  check(initial_);
  for (State q : accepting) {
    check(q);
    accepting_[q] = true;
  }
  for (const auto& t : transitions_) {
    check(t.src);
    check(t.dst);
    for (Symbol s : t.input)
      if (!input_.contains(s)) throw PreconditionError("input letter outside the alphabet");
    for (Symbol s : t.output)
      if (!output_.contains(s)) throw PreconditionError("output letter outside the alphabet");
  }
  std::sort(transitions_.begin(), transitions_.end());
  transitions_.erase(std::unique(transitions_.begin(), transitions_.end()), transitions_.end());
  offsets_.assign(num_states_ + 1, 0);
  for (const auto& t : transitions_) ++offsets_[t.src + 1];
  for (std::size_t i = 0; i < num_states_; ++i) offsets_[i + 1] += offsets_[i];
}

std::vector<State> Transducer::accepting_states() const {
  std::vector<State> out;
  for (State q = 0; q < num_states_; ++q)
    if (accepting_[q]) out.push_back(q);
  return out;
}

std::span<const TransducerTransition> Transducer::successors(State q) const {
  if (q >= num_states_) throw PreconditionError("transducer state out of range");
  return {transitions_.data() + offsets_[q], transitions_.data() + offsets_[q + 1]};
}

bool Transducer::is_synchronous() const {
  return std::all_of(transitions_.begin(), transitions_.end(), [](const auto& t) {
    return t.input.size() == 1 && t.output.size() == 1;
  });
}

SyncTransducer::SyncTransducer(Transducer t) : t_(std::move(t)) {
  if (!t_.is_synchronous())
    throw PreconditionError("transducer is not synchronous (labels must be letter pairs)");
  offsets_.assign(t_.num_states() + 1, 0);
  for (const auto& tr : t_.transitions()) {
    edges_.push_back({tr.input[0], tr.output[0], tr.dst});
    ++offsets_[tr.src + 1];
  }
  for (std::size_t i = 0; i < t_.num_states(); ++i) offsets_[i + 1] += offsets_[i];
}

namespace {

constexpr Marks kAccepting = 1, kReads = 2, kWrites = 4;

Marks transition_marks(const Transducer& t, const TransducerTransition& tr) {
  return (t.is_accepting(tr.src) ? kAccepting : 0) | (tr.input.empty() ? 0 : kReads) |
         (tr.output.empty() ? 0 : kWrites);
}

Graph transducer_graph(const Transducer& t) {
  Graph g(t.num_states());
  const auto ts = t.transitions();
  for (std::size_t i = 0; i < ts.size(); ++i)
    g.add_edge(ts[i].src, ts[i].dst, static_cast<Symbol>(i), transition_marks(t, ts[i]));
  return g;
}

Transducer restrict_to(const Transducer& t, const std::vector<bool>& keep) {
  if (!keep[t.initial()])
    return Transducer(t.input_alphabet(), t.output_alphabet(), 1, 0, {}, {});
  auto r = detail::renumber(keep);
  std::vector<State> acc;
  for (State q : t.accepting_states())
    if (keep[q]) acc.push_back(r.map[q]);
  std::vector<TransducerTransition> ts;
  for (const auto& tr : t.transitions())
    if (keep[tr.src] && keep[tr.dst])
      ts.push_back({r.map[tr.src], tr.input, tr.output, r.map[tr.dst]});
  return Transducer(t.input_alphabet(), t.output_alphabet(), r.count, r.map[t.initial()],
                    std::move(acc), std::move(ts));
}

// Projection onto one tape. Word labels become letter chains; empty labels
// become epsilon edges. An accepting computation must pass an accepting
// state, write on the other tape and read a letter infinitely often.
Nba project(const Transducer& t, bool input_side) {
  const Alphabet& alphabet = input_side ? t.input_alphabet() : t.output_alphabet();
  struct Arc {
    State src, dst;
    std::optional<Symbol> letter;
    Marks marks;  // kAccepting, kReads = other tape non-empty
  };
  std::vector<Arc> arcs;
  State vertices = static_cast<State>(t.num_states());
  for (const auto& tr : t.transitions()) {
    const Word& mine = input_side ? tr.input : tr.output;
    const Word& other = input_side ? tr.output : tr.input;
    Marks m = (t.is_accepting(tr.src) ? kAccepting : 0) | (other.empty() ? 0 : kReads);
    if (mine.empty()) {
      arcs.push_back({tr.src, tr.dst, std::nullopt, m});
      continue;
    }
    State from = tr.src;
    for (std::size_t i = 0; i < mine.size(); ++i) {
      State to = i + 1 == mine.size() ? tr.dst : vertices++;
      arcs.push_back({from, to, mine[i], i == 0 ? m : 0});
      from = to;
    }
  }
  // Marks carried by every letter-consuming path are useless; the set of
  // marks to track is those missing somewhere.
  Marks tracked = 0;
  for (const auto& a : arcs) tracked |= (kAccepting | kReads) & ~a.marks;
  std::vector<Marks> order;
  for (Marks m : {kAccepting, kReads})
    if (tracked & m) order.push_back(m);

  std::vector<std::vector<const Arc*>> eps(vertices), letters(vertices);
  for (const auto& a : arcs) (a.letter ? letters : eps)[a.src].push_back(&a);

  // Epsilon closure with the marks collected on the way.
  struct Step {
    State dst;
    Symbol letter;
    Marks marks;
  };
  std::vector<std::vector<Step>> steps(vertices);
  for (State v = 0; v < vertices; ++v) {
    std::vector<std::pair<State, Marks>> seen{{v, 0}}, todo{{v, 0}};
    while (!todo.empty()) {
      auto [u, m] = todo.back();
      todo.pop_back();
      for (const Arc* a : eps[u]) {
        std::pair<State, Marks> next{a->dst, m | (a->marks & tracked)};
        if (std::find(seen.begin(), seen.end(), next) == seen.end()) {
          seen.push_back(next);
          todo.push_back(next);
        }
      }
    }
    for (auto [u, m] : seen)
      for (const Arc* a : letters[u]) steps[v].push_back({a->dst, *a->letter, m | (a->marks & tracked)});
  }

  // Degeneralize: level l waits for order[l]; level k is accepting.
  const State k = static_cast<State>(order.size());
  auto id = [k](State v, State level) { return v * (k + 1) + level; };
  std::vector<Transition> ts;
  std::vector<State> acc;
  for (State v = 0; v < vertices; ++v) {
    acc.push_back(id(v, k));
    for (State level = 0; level <= k; ++level) {
      for (const auto& s : steps[v]) {
        State l = level == k ? 0 : level;
        while (l < k && (s.marks & order[l])) ++l;
        ts.push_back({id(v, level), s.letter, id(s.dst, l)});
      }
    }
  }
  return trim(Nba(alphabet, static_cast<std::size_t>(vertices) * (k + 1), id(t.initial(), 0),
                  std::move(acc), std::move(ts)));
}

// Position tracker against a known lasso: index into prefix+loop, or
// kDiverged once a different letter has been produced.
constexpr std::uint32_t kDiverged = UINT32_MAX;

std::uint32_t advance(const LassoWord& w, std::uint32_t pos, Symbol letter) {
  if (pos == kDiverged) return pos;
  if (w.at(pos) != letter) return kDiverged;
  const auto len = static_cast<std::uint32_t>(w.prefix().size() + w.loop().size());
  return pos + 1 < len ? pos + 1 : static_cast<std::uint32_t>(w.prefix().size());
}

// An output of t on x different from every word in `known`.
std::optional<LassoWord> another_output(const Transducer& t, const LassoWord& x,
                                        const std::vector<LassoWord>& known) {
  const auto len = static_cast<std::uint32_t>(x.prefix().size() + x.loop().size());
  const auto loop_start = static_cast<std::uint32_t>(x.prefix().size());
  auto step_input = [&](std::uint32_t pos, const Word& w) -> std::optional<std::uint32_t> {
    for (Symbol s : w) {
      if (x.at(pos) != s) return std::nullopt;
      pos = pos + 1 < len ? pos + 1 : loop_start;
    }
    return pos;
  };
  using Key = std::tuple<State, std::uint32_t, std::vector<std::uint32_t>>;
  Explorer<Key> ex;
  ex.id({t.initial(), 0, std::vector<std::uint32_t>(known.size(), 0)});
  Graph g;
  std::vector<bool> all_diverged;
  const auto ts = t.transitions();
  while (ex.has_work()) {
    auto [id, key] = ex.pop();
    const auto& [q, pos, trackers] = key;
    all_diverged.push_back(std::all_of(trackers.begin(), trackers.end(),
                                       [](auto p) { return p == kDiverged; }));
    const std::size_t base = static_cast<std::size_t>(t.successors(q).data() - ts.data());
    auto succ = t.successors(q);
    for (std::size_t i = 0; i < succ.size(); ++i) {
      const auto& tr = succ[i];
      auto npos = step_input(pos, tr.input);
      if (!npos) continue;
      auto nt = trackers;
      for (std::size_t j = 0; j < known.size(); ++j)
        for (Symbol o : tr.output) nt[j] = advance(known[j], nt[j], o);
      State to = ex.id({tr.dst, *npos, std::move(nt)});
      while (g.size() <= std::max(id, to)) g.add_vertex();
      g.add_edge(id, to, static_cast<Symbol>(base + i), transition_marks(t, tr));
    }
  }
  while (g.size() < ex.size()) g.add_vertex();
  auto lasso = detail::find_accepting_lasso(g, 0, kAccepting | kReads | kWrites,
                                            [&](State v) { return all_diverged[v]; });
  if (!lasso) return std::nullopt;
  Word stem, cycle;
  for (const auto& e : lasso->stem)
    stem.insert(stem.end(), ts[e.label].output.begin(), ts[e.label].output.end());
  for (const auto& e : lasso->cycle)
    cycle.insert(cycle.end(), ts[e.label].output.begin(), ts[e.label].output.end());
  return LassoWord(t.output_alphabet(), std::move(stem), std::move(cycle)).normalized();
}

}  // namespace

Transducer trim(const Transducer& t) {
  auto g = transducer_graph(t);
  return restrict_to(t, detail::live_vertices(g, t.initial(), kAccepting | kReads | kWrites));
}

SyncTransducer trim(const SyncTransducer& t) { return SyncTransducer(trim(t.general())); }

Nba domain(const Transducer& t) { return project(t, true); }
Nba image(const Transducer& t) { return project(t, false); }

EvalResult evaluate(const Transducer& t, const LassoWord& x, std::size_t bound) {
  require_same_alphabet(t.input_alphabet(), x.alphabet(), "evaluate");
  if (bound == 0) throw PreconditionError("evaluation bound must be at least 1");
  EvalResult result;
  while (auto y = another_output(t, x, result.outputs)) {
    if (result.outputs.size() == bound) {
      result.truncated = true;
      break;
    }
    result.outputs.push_back(std::move(*y));
  }
  return result;
}

FunctionalityVerdict check_functional(const SyncTransducer& t) {
  // Two runs on the same input; the flag records different outputs. A pair
  // of accepting runs after the outputs split refutes functionality.
  const std::size_t n = t.num_states();
  auto id = [n](State p, State q, int bit) {
    return static_cast<State>((static_cast<std::size_t>(p) * n + q) * 2 + bit);
  };
  struct Pair {
    Symbol input;
    Symbol out1, out2;
  };
  std::vector<Pair> labels;
  Graph g(n * n * 2);
  for (State p = 0; p < n; ++p) {
    for (State q = 0; q < n; ++q) {
      Marks m = (t.is_accepting(p) ? 1u : 0u) | (t.is_accepting(q) ? 2u : 0u);
      for (const auto& e1 : t.edges(p)) {
        for (const auto& e2 : t.edges(q)) {
          if (e1.input != e2.input) continue;
          auto label = static_cast<Symbol>(labels.size());
          labels.push_back({e1.input, e1.output, e2.output});
          for (int bit = 0; bit < 2; ++bit) {
            int nb = bit || e1.output != e2.output;
            g.add_edge(id(p, q, bit), id(e1.dst, e2.dst, nb), label, m);
          }
        }
      }
    }
  }
  auto lasso = detail::find_accepting_lasso(g, id(t.initial(), t.initial(), 0), 3,
                                            [](State v) { return v % 2 == 1; });
  FunctionalityVerdict v;
  if (!lasso) return v;
  v.functional = false;
  Word in_u, in_v, a_u, a_v, b_u, b_v;
  for (const auto& e : lasso->stem) {
    in_u.push_back(labels[e.label].input);
    a_u.push_back(labels[e.label].out1);
    b_u.push_back(labels[e.label].out2);
  }
  for (const auto& e : lasso->cycle) {
    in_v.push_back(labels[e.label].input);
    a_v.push_back(labels[e.label].out1);
    b_v.push_back(labels[e.label].out2);
  }
  v.witness = NonFunctionalWitness{
      LassoWord(t.input_alphabet(), in_u, in_v).normalized(),
      LassoWord(t.output_alphabet(), a_u, a_v).normalized(),
      LassoWord(t.output_alphabet(), b_u, b_v).normalized()};
  return v;
}

std::optional<NonFunctionalWitness> find_nonfunctional_witness(const Transducer& t,
                                                               std::size_t max_length) {
  const Alphabet& sigma = t.input_alphabet();
  const auto k = static_cast<Symbol>(sigma.size());
  auto live = prefix_dfa(domain(t));
  for (std::size_t total = 1; total <= max_length; ++total) {
    Word word(total, 0);
    while (true) {
      if (live.accepts(word)) {
        for (std::size_t split = 0; split < total; ++split) {
          LassoWord x(sigma, Word(word.begin(), word.begin() + static_cast<long>(split)),
                      Word(word.begin() + static_cast<long>(split), word.end()));
          if (!x.is_normalized()) continue;
          auto r = evaluate(t, x, 2);
          if (r.outputs.size() >= 2) return NonFunctionalWitness{x, r.outputs[0], r.outputs[1]};
        }
      }
      std::size_t i = total;
      while (i > 0 && word[i - 1] + 1 == k) word[--i] = 0;
      if (i == 0) break;
      ++word[i - 1];
    }
  }
  return std::nullopt;
}

}  // namespace contset
