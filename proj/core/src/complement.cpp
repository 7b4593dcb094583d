#include "contset/complement.hpp"

#include <algorithm>
#include <cstdint>
#include <tuple>

#include "contset/error.hpp"
#include "contset/omega.hpp"
#include "graph.hpp"

namespace contset {

using detail::Explorer;

namespace {

using StateSet = std::vector<State>;

void normalize(StateSet& s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
}

StateSet post(const Nba& a, const StateSet& s, Symbol sym) {
  StateSet out;
  for (State q : s)
    for (const auto& t : a.successors(q, sym)) out.push_back(t.dst);
  normalize(out);
  return out;
}

bool contains(const StateSet& s, State q) {
  return std::binary_search(s.begin(), s.end(), q);
}

struct Structure {
  detail::Sccs sccs;
  std::vector<bool> nontrivial;  // per component
  std::vector<bool> accepting;   // per component: nontrivial with an F state
};

Structure analyze(const Nba& a) {
  Structure st;
  auto g = detail::buchi_graph(a);
  st.sccs = detail::strongly_connected(g);
  st.nontrivial.assign(st.sccs.count, false);
  st.accepting.assign(st.sccs.count, false);
  for (const auto& t : a.transitions())
    if (st.sccs.component[t.src] == st.sccs.component[t.dst])
      st.nontrivial[st.sccs.component[t.src]] = true;
  for (State q = 0; q < a.num_states(); ++q) {
    auto c = st.sccs.component[q];
    if (st.nontrivial[c] && a.is_accepting(q)) st.accepting[c] = true;
  }
  return st;
}

bool is_weak(const Nba& a, const Structure& st) {
  std::vector<int> kind(st.sccs.count, -1);
  for (State q = 0; q < a.num_states(); ++q) {
    auto c = st.sccs.component[q];
    if (!st.nontrivial[c]) continue;
    int k = a.is_accepting(q) ? 1 : 0;
    if (kind[c] == -1) kind[c] = k;
    if (kind[c] != k) return false;
  }
  return true;
}

bool has_deterministic_accepting_components(const Nba& a, const Structure& st) {
  for (State q = 0; q < a.num_states(); ++q) {
    auto c = st.sccs.component[q];
    if (!st.accepting[c]) continue;
    auto succ = a.successors(q);
    for (std::size_t i = 0; i < succ.size(); ++i) {
      for (std::size_t j = i + 1; j < succ.size() && succ[j].symbol == succ[i].symbol; ++j) {
        if (st.sccs.component[succ[i].dst] == c && st.sccs.component[succ[j].dst] == c)
          return false;
      }
    }
  }
  return true;
}

Nba complement_weak(const Nba& a) {
  // Subset construction plus the set of runs that have stayed in accepting
  // states since the last breakpoint.
  const std::size_t k = a.alphabet().size();
  using Key = std::pair<StateSet, StateSet>;
  Explorer<Key> ex;
  ex.id({{a.initial()}, {}});
  std::vector<Transition> ts;
  std::vector<State> acc;
  auto in_f = [&](StateSet s) {
    std::erase_if(s, [&](State q) { return !a.is_accepting(q); });
    return s;
  };
  while (ex.has_work()) {
    auto [id, key] = ex.pop();
    const auto& [s, o] = key;
    if (o.empty()) acc.push_back(id);
    for (Symbol sym = 0; sym < k; ++sym) {
      StateSet ns = post(a, s, sym);
      StateSet no = in_f(o.empty() ? ns : post(a, o, sym));
      ts.push_back({id, sym, ex.id({std::move(ns), std::move(no)})});
    }
  }
  return trim(Nba(a.alphabet(), ex.size(), 0, std::move(acc), std::move(ts)));
}

// Gives up (nullopt) once more than `budget` states are discovered.
std::optional<Nba> complement_deterministic_components(const Nba& a, const Structure& st,
                                                       std::size_t budget = SIZE_MAX) {
  // N: all current states. Runs inside accepting components are
  // deterministic; each such state is in C (may still see F) or S (promised
  // never to see F again inside its component). B: states of C not yet
  // released since the last breakpoint.
  const std::size_t k = a.alphabet().size();
  const auto& comp = st.sccs.component;
  auto in_acc = [&](State q) { return st.accepting[comp[q]]; };
  auto inner_next = [&](State q, Symbol sym) -> std::optional<State> {
    for (const auto& t : a.successors(q, sym))
      if (comp[t.dst] == comp[q]) return t.dst;
    return std::nullopt;
  };
  auto inner_post = [&](const StateSet& s, Symbol sym) {
    StateSet out;
    for (State q : s)
      if (auto d = inner_next(q, sym)) out.push_back(*d);
    normalize(out);
    return out;
  };

  // The first component is 1 only for the pre-initial state, which stands
  // for every initial guess at once.
  using Key = std::tuple<int, StateSet, StateSet, StateSet, StateSet>;
  Explorer<Key> ex;
  std::vector<Transition> ts;
  std::vector<State> acc;

  // Emits every (C, S) split where any subset of `guessable` joins S.
  auto splits = [&](const StateSet& forced_s, const StateSet& guessable,
                    const StateSet& acc_states, auto&& emit) {
    const std::size_t g = guessable.size();
    for (std::size_t mask = 0; mask < (std::size_t{1} << g); ++mask) {
      StateSet s = forced_s;
      for (std::size_t i = 0; i < g; ++i)
        if (mask & (std::size_t{1} << i)) s.push_back(guessable[i]);
      normalize(s);
      StateSet c;
      for (State q : acc_states)
        if (!contains(s, q)) c.push_back(q);
      emit(std::move(c), std::move(s));
    }
  };

  auto step = [&](const StateSet& n, const StateSet& c, const StateSet& s, const StateSet& b,
                  Symbol sym, auto&& emit) {
    StateSet forced_s = inner_post(s, sym);
    if (std::any_of(forced_s.begin(), forced_s.end(),
                    [&](State q) { return a.is_accepting(q); }))
      return;
    StateSet nn = post(a, n, sym);
    StateSet acc_states;
    for (State q : nn)
      if (in_acc(q)) acc_states.push_back(q);
    StateSet guess;
    for (State q : n) {
      bool from_c_f = contains(c, q) && a.is_accepting(q);
      for (const auto& t : a.successors(q, sym)) {
        if (!in_acc(t.dst)) continue;
        bool entering = comp[t.dst] != comp[q];
        if ((entering || from_c_f) && !a.is_accepting(t.dst) && !contains(forced_s, t.dst))
          guess.push_back(t.dst);
      }
    }
    normalize(guess);
    StateSet b_next = inner_post(b, sym);
    splits(forced_s, guess, acc_states, [&](StateSet c1, StateSet s1) {
      StateSet b1;
      if (b.empty()) {
        b1 = c1;
      } else {
        for (State q : b_next)
          if (contains(c1, q)) b1.push_back(q);
      }
      emit(Key{0, nn, std::move(c1), std::move(s1), std::move(b1)});
    });
  };

  std::vector<Key> initial_keys;
  {
    StateSet acc_states, guess;
    if (in_acc(a.initial())) {
      acc_states.push_back(a.initial());
      if (!a.is_accepting(a.initial())) guess.push_back(a.initial());
    }
    splits({}, guess, acc_states, [&](StateSet c, StateSet s) {
      initial_keys.push_back({0, {a.initial()}, std::move(c), std::move(s), {}});
    });
  }
  ex.id({1, {}, {}, {}, {}});

  while (ex.has_work()) {
    if (ex.size() > budget) return std::nullopt;
    auto [id, key] = ex.pop();
    const auto& [pre, n, c, s, b] = key;
    if (!pre && b.empty()) acc.push_back(id);
    for (Symbol sym = 0; sym < k; ++sym) {
      auto emit = [&](Key next) { ts.push_back({id, sym, ex.id(std::move(next))}); };
      if (pre) {
        for (const auto& [p0, n0, c0, s0, b0] : initial_keys) step(n0, c0, s0, b0, sym, emit);
      } else {
        step(n, c, s, b, sym, emit);
      }
    }
  }
  return trim(Nba(a.alphabet(), ex.size(), 0, std::move(acc), std::move(ts)));
}

Nba complement_rank_based(const Nba& a) {
  // Subset phase, then a nondeterministic jump to tight level rankings.
  // Ranks are listed in the order of the sorted state set.
  const std::size_t k = a.alphabet().size();
  using Ranks = std::vector<std::uint8_t>;
  using Key = std::tuple<int, StateSet, Ranks, StateSet>;  // phase 0/1, 2 = sink
  Explorer<Key> ex;
  ex.id({0, {a.initial()}, {}, {}});
  std::vector<Transition> ts;
  std::vector<State> acc;

  auto tight = [](const Ranks& f) {
    std::uint8_t top = 0;
    for (auto r : f) top = std::max(top, r);
    if (top % 2 == 0) return false;
    std::vector<bool> used(top + 1, false);
    for (auto r : f) used[r] = true;
    for (std::uint8_t r = 1; r <= top; r += 2)
      if (!used[r]) return false;
    return true;
  };
  auto enumerate = [&](const StateSet& s, const Ranks& bound, auto&& emit) {
    Ranks f(s.size(), 0);
    auto rec = [&](auto&& self, std::size_t i) -> void {
      if (i == s.size()) {
        if (tight(f)) emit(f);
        return;
      }
      for (int r = 0; r <= bound[i]; ++r) {
        if (a.is_accepting(s[i]) && r % 2 == 1) continue;
        f[i] = static_cast<std::uint8_t>(r);
        self(self, i + 1);
      }
    };
    rec(rec, 0);
  };
  auto even_part = [](const StateSet& s, const Ranks& f, const StateSet& from) {
    StateSet out;
    for (State q : from) {
      auto it = std::lower_bound(s.begin(), s.end(), q);
      if (it != s.end() && *it == q && f[static_cast<std::size_t>(it - s.begin())] % 2 == 0)
        out.push_back(q);
    }
    return out;
  };

  while (ex.has_work()) {
    auto [id, key] = ex.pop();
    const auto& [phase, s, f, o] = key;
    if (phase == 2) {
      acc.push_back(id);
      for (Symbol sym = 0; sym < k; ++sym) ts.push_back({id, sym, id});
      continue;
    }
    if (phase == 1 && o.empty()) acc.push_back(id);
    for (Symbol sym = 0; sym < k; ++sym) {
      StateSet ns = post(a, s, sym);
      if (ns.empty()) {
        ts.push_back({id, sym, ex.id({2, {}, {}, {}})});
        continue;
      }
      Ranks bound(ns.size(), 0);
      if (phase == 0) {
        ts.push_back({id, sym, ex.id({0, ns, {}, {}})});
        std::fill(bound.begin(), bound.end(),
                  static_cast<std::uint8_t>(2 * ns.size() - 1));
      } else {
        std::fill(bound.begin(), bound.end(), std::uint8_t{255});
        for (std::size_t i = 0; i < s.size(); ++i) {
          for (const auto& t : a.successors(s[i], sym)) {
            auto j = static_cast<std::size_t>(
                std::lower_bound(ns.begin(), ns.end(), t.dst) - ns.begin());
            bound[j] = std::min(bound[j], f[i]);
          }
        }
      }
      StateSet o_post = phase == 1 && !o.empty() ? post(a, o, sym) : ns;
      enumerate(ns, bound, [&](const Ranks& nf) {
        StateSet no = phase == 0 ? StateSet{} : even_part(ns, nf, o_post);
        ts.push_back({id, sym, ex.id({1, ns, nf, std::move(no)})});
      });
    }
  }
  return trim(Nba(a.alphabet(), ex.size(), 0, std::move(acc), std::move(ts)));
}

Nba complement_determinization(const Nba& a) {
  // Trees of nested subsets with compact names yield a deterministic min-parity
  // automaton for L(a); its odd-parity words form the complement. Each node
  // is (parent name, label) and names are 1-based ages, so the vector is a
  // canonical key. Parent 0 marks the root.
  struct Node {
    std::size_t parent;
    StateSet label;
  };
  using Tree = std::vector<std::pair<std::size_t, StateSet>>;
  const std::size_t k = a.alphabet().size();
  const std::size_t neutral = 4 * a.num_states() + 1;

  auto step = [&](const Tree& tree, Symbol sym) -> std::pair<Tree, std::size_t> {
    std::vector<Node> nodes;
    for (const auto& [p, l] : tree) nodes.push_back({p, l});
    const std::size_t old = nodes.size();
    for (std::size_t v = 1; v <= old; ++v) {
      StateSet f;
      for (State q : nodes[v - 1].label)
        if (a.is_accepting(q)) f.push_back(q);
      if (!f.empty()) nodes.push_back({v, std::move(f)});
    }
    for (auto& n : nodes) n.label = post(a, n.label, sym);

    const std::size_t m = nodes.size();
    std::vector<std::vector<std::size_t>> children(m + 1);
    for (std::size_t v = 1; v <= m; ++v) children[nodes[v - 1].parent].push_back(v);

    // Horizontal merge: a state stays only in the oldest branch holding it.
    auto merge = [&](auto&& self, std::size_t v, StateSet forbidden) -> void {
      auto& l = nodes[v - 1].label;
      std::erase_if(l, [&](State q) { return contains(forbidden, q); });
      for (std::size_t c : children[v]) {
        self(self, c, forbidden);
        forbidden.insert(forbidden.end(), nodes[c - 1].label.begin(), nodes[c - 1].label.end());
        normalize(forbidden);
      }
    };
    if (m > 0) merge(merge, 1, {});

    std::vector<bool> alive(m + 1, false);
    std::size_t removed = SIZE_MAX, marked = SIZE_MAX;
    auto kill = [&](auto&& self, std::size_t v) -> void {
      alive[v] = false;
      removed = std::min(removed, v);
      for (std::size_t c : children[v]) self(self, c);
    };
    // Drop empty nodes, then collapse nodes covered by their children.
    auto sweep = [&](auto&& self, std::size_t v) -> void {
      if (nodes[v - 1].label.empty()) {
        kill(kill, v);
        return;
      }
      alive[v] = true;
      StateSet covered;
      for (std::size_t c : children[v]) {
        self(self, c);
        if (alive[c])
          covered.insert(covered.end(), nodes[c - 1].label.begin(), nodes[c - 1].label.end());
      }
      normalize(covered);
      if (!children[v].empty() && covered == nodes[v - 1].label) {
        for (std::size_t c : children[v]) kill(kill, c);
        marked = std::min(marked, v);
      }
    };
    if (m > 0) sweep(sweep, 1);

    std::vector<std::size_t> rename(m + 1, 0);
    Tree next;
    for (std::size_t v = 1; v <= m; ++v) {
      if (!alive[v]) continue;
      rename[v] = next.size() + 1;
      next.push_back({rename[nodes[v - 1].parent], std::move(nodes[v - 1].label)});
    }
    std::size_t priority = neutral;
    if (marked < removed)
      priority = 2 * marked;
    else if (removed != SIZE_MAX)
      priority = 2 * removed - 1;
    return {std::move(next), priority};
  };

  struct Edge {
    State src;
    Symbol sym;
    State dst;
    std::size_t priority;
  };
  Explorer<Tree> det;
  det.id(Tree{{0, StateSet{a.initial()}}});
  std::vector<Edge> edges;
  std::vector<bool> odd_used(neutral + 1, false);
  while (det.has_work()) {
    auto [id, tree] = det.pop();
    for (Symbol sym = 0; sym < k; ++sym) {
      auto [next, priority] = step(tree, sym);
      edges.push_back({id, sym, det.id(next), priority});
      if (priority % 2 == 1) odd_used[priority] = true;
    }
  }

  // Copy 0 runs the parity automaton; copy o (odd) forbids priorities below
  // o and accepts on o, so it accepts exactly when o is the least priority
  // seen infinitely often.
  using Key = std::tuple<std::size_t, State, bool>;
  Explorer<Key> ex;
  ex.id({0, 0, false});
  std::vector<std::vector<const Edge*>> out(det.size());
  for (const auto& e : edges) out[e.src].push_back(&e);
  std::vector<Transition> ts;
  std::vector<State> acc;
  while (ex.has_work()) {
    auto [id, key] = ex.pop();
    const auto [copy, d, hit] = key;
    if (hit) acc.push_back(id);
    for (const Edge* e : out[d]) {
      if (copy == 0) {
        ts.push_back({id, e->sym, ex.id({0, e->dst, false})});
        for (std::size_t o = 1; o <= e->priority; o += 2)
          if (odd_used[o]) ts.push_back({id, e->sym, ex.id({o, e->dst, e->priority == o})});
      } else if (e->priority >= copy) {
        ts.push_back({id, e->sym, ex.id({copy, e->dst, e->priority == copy})});
      }
    }
  }
  return trim(Nba(a.alphabet(), ex.size(), 0, std::move(acc), std::move(ts)));
}

}  // namespace

bool complement_applies(const Nba& input, ComplementMethod method) {
  const Nba a = trim(input);
  auto st = analyze(a);
  switch (method) {
    case ComplementMethod::automatic:
    case ComplementMethod::rank_based:
    case ComplementMethod::determinization:
      return true;
    case ComplementMethod::breakpoint:
      return is_weak(a, st);
    case ComplementMethod::deterministic_components:
      return has_deterministic_accepting_components(a, st);
  }
  return false;
}

// Deterministic-component subsets can explode where determinization stays small.
constexpr std::size_t ncsb_budget = 20000;

Nba complement(const Nba& input, ComplementMethod method) {
  const Nba a = trim(input);
  if (method == ComplementMethod::automatic && is_empty(a))
    return Nba::universal(a.alphabet());
  auto st = analyze(a);
  switch (method) {
    case ComplementMethod::automatic:
      if (is_weak(a, st)) return complement_weak(a);
      if (has_deterministic_accepting_components(a, st))
        if (auto c = complement_deterministic_components(a, st, ncsb_budget)) return *c;
      return complement_determinization(a);
    case ComplementMethod::determinization:
      return complement_determinization(a);
    case ComplementMethod::rank_based:
      return complement_rank_based(a);
    case ComplementMethod::breakpoint:
      if (!is_weak(a, st))
        throw PreconditionError("breakpoint complementation needs a weak automaton");
      return complement_weak(a);
    case ComplementMethod::deterministic_components:
      if (!has_deterministic_accepting_components(a, st))
        throw PreconditionError(
            "accepting components are not deterministic");
      return *complement_deterministic_components(a, st);
  }
  throw PreconditionError("unknown complementation method");
}

Verdict is_included(const Nba& a, const Nba& b) {
  require_same_alphabet(a.alphabet(), b.alphabet(), "inclusion test");
  Verdict v;
  v.counterexample = find_accepted_word(intersect(a, complement(b)));
  v.holds = !v.counterexample.has_value();
  return v;
}

Verdict is_equivalent(const Nba& a, const Nba& b) {
  Verdict v = is_included(a, b);
  if (!v) return v;
  return is_included(b, a);
}

}  // namespace contset
