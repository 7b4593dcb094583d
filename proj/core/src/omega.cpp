#include "contset/omega.hpp"

#include <algorithm>
#include <tuple>

#include "contset/error.hpp"
#include "graph.hpp"

namespace contset {

using detail::Explorer;
using detail::Graph;
using detail::Marks;

namespace detail {

Graph buchi_graph(const Nba& a) {
  Graph g(a.num_states());
  for (const auto& t : a.transitions())
    g.add_edge(t.src, t.dst, t.symbol, a.is_accepting(t.src) ? 1u : 0u);
  return g;
}

Nba restrict_to(const Nba& a, const std::vector<bool>& keep) {
  if (!keep[a.initial()]) return Nba::empty(a.alphabet());
  auto r = renumber(keep);
  std::vector<State> acc;
  for (State q : a.accepting_states())
    if (keep[q]) acc.push_back(r.map[q]);
  std::vector<Transition> ts;
  for (const auto& t : a.transitions())
    if (keep[t.src] && keep[t.dst]) ts.push_back({r.map[t.src], t.symbol, r.map[t.dst]});
  return Nba(a.alphabet(), r.count, r.map[a.initial()], std::move(acc), std::move(ts));
}

bool has_two_words(const Nba& a) {
  // Pairs of runs on two words; the flag records that the words differ.
  const std::size_t n = a.num_states();
  auto id = [n](State p, State q, int bit) {
    return static_cast<State>((static_cast<std::size_t>(p) * n + q) * 2 + bit);
  };
  Graph g(n * n * 2);
  for (const auto& t1 : a.transitions()) {
    for (const auto& t2 : a.transitions()) {
      Marks m = (a.is_accepting(t1.src) ? 1u : 0u) | (a.is_accepting(t2.src) ? 2u : 0u);
      for (int bit = 0; bit < 2; ++bit) {
        int nb = bit || t1.symbol != t2.symbol;
        g.add_edge(id(t1.src, t2.src, bit), id(t1.dst, t2.dst, nb), 0, m);
      }
    }
  }
  return find_accepting_lasso(g, id(a.initial(), a.initial(), 0), 3,
                              [](State v) { return v % 2 == 1; })
      .has_value();
}

}  // namespace detail

Nba trim(const Nba& a) {
  auto g = detail::buchi_graph(a);
  return detail::restrict_to(a, detail::live_vertices(g, a.initial(), 1));
}

std::optional<LassoWord> find_accepted_word(const Nba& a) {
  auto g = detail::buchi_graph(a);
  auto lasso = detail::find_accepting_lasso(g, a.initial(), 1);
  if (!lasso) return std::nullopt;
  return LassoWord(a.alphabet(), lasso->stem_labels(), lasso->cycle_labels())
      .normalized();
}

bool is_empty(const Nba& a) { return !find_accepted_word(a).has_value(); }

bool accepts(const Nba& a, const LassoWord& w) {
  require_same_alphabet(a.alphabet(), w.alphabet(), "membership test");
  const std::size_t len = w.prefix().size() + w.loop().size();
  auto id = [len](State q, std::size_t pos) {
    return static_cast<State>(static_cast<std::size_t>(q) * len + pos);
  };
  Graph g(a.num_states() * len);
  for (State q = 0; q < a.num_states(); ++q) {
    for (std::size_t pos = 0; pos < len; ++pos) {
      std::size_t next = pos + 1 < len ? pos + 1 : w.prefix().size();
      Marks m = a.is_accepting(q) ? 1u : 0u;
      for (const auto& t : a.successors(q, w.at(pos)))
        g.add_edge(id(q, pos), id(t.dst, next), t.symbol, m);
    }
  }
  return detail::find_accepting_lasso(g, id(a.initial(), 0), 1).has_value();
}

Nba intersect(const Nba& a, const Nba& b) {
  require_same_alphabet(a.alphabet(), b.alphabet(), "intersection");
  // Phase 0 waits for an accepting state of a, phase 1 for one of b.
  using Key = std::tuple<State, State, int>;
  Explorer<Key> ex;
  ex.id({a.initial(), b.initial(), 0});
  std::vector<Transition> ts;
  std::vector<State> acc;
  while (ex.has_work()) {
    auto [s, key] = ex.pop();
    auto [p, q, phase] = key;
    if (phase == 0 && a.is_accepting(p)) acc.push_back(s);
    int next_phase = phase == 0 ? (a.is_accepting(p) ? 1 : 0) : (b.is_accepting(q) ? 0 : 1);
    for (const auto& ta : a.successors(p)) {
      for (const auto& tb : b.successors(q, ta.symbol))
        ts.push_back({s, ta.symbol, ex.id({ta.dst, tb.dst, next_phase})});
    }
  }
  return trim(Nba(a.alphabet(), ex.size(), 0, std::move(acc), std::move(ts)));
}

Nba unite(const Nba& a, const Nba& b) {
  require_same_alphabet(a.alphabet(), b.alphabet(), "union");
  const State off_a = 1;
  const State off_b = static_cast<State>(1 + a.num_states());
  std::vector<Transition> ts;
  std::vector<State> acc;
  auto copy = [&](const Nba& x, State off) {
    for (const auto& t : x.transitions()) ts.push_back({t.src + off, t.symbol, t.dst + off});
    for (const auto& t : x.successors(x.initial())) ts.push_back({0, t.symbol, t.dst + off});
    for (State q : x.accepting_states()) acc.push_back(q + off);
  };
  copy(a, off_a);
  copy(b, off_b);
  return Nba(a.alphabet(), 1 + a.num_states() + b.num_states(), 0, std::move(acc),
             std::move(ts));
}

DetMuller trim(const DetMuller& m) {
  Graph g(m.num_states());
  for (const auto& t : m.transitions()) g.add_edge(t.src, t.dst, t.symbol);
  std::vector<State> root{m.initial()};
  auto reach = detail::reachable_from(g, root);

  std::vector<std::vector<State>> realizable;
  for (const auto& set : m.table()) {
    std::vector<bool> inside(m.num_states(), false);
    bool ok = true;
    for (State q : set) {
      inside[q] = true;
      ok = ok && reach[q];
    }
    if (!ok) continue;
    auto sccs = detail::strongly_connected(g, inside);
    bool has_edge = false;
    for (State q : set)
      for (const auto& e : g.out(q)) has_edge = has_edge || inside[e.dst];
    if (sccs.count == 1 && has_edge) realizable.push_back(set);
  }
  if (realizable.empty()) return DetMuller(m.alphabet(), 1, 0, {}, {});

  std::vector<std::vector<State>> preds(m.num_states());
  for (const auto& t : m.transitions()) preds[t.dst].push_back(t.src);
  std::vector<bool> keep(m.num_states(), false);
  std::vector<State> todo;
  for (const auto& set : realizable)
    for (State q : set)
      if (!keep[q]) {
        keep[q] = true;
        todo.push_back(q);
      }
  while (!todo.empty()) {
    State q = todo.back();
    todo.pop_back();
    for (State p : preds[q])
      if (reach[p] && !keep[p]) {
        keep[p] = true;
        todo.push_back(p);
      }
  }
  auto r = detail::renumber(keep);
  std::vector<Transition> ts;
  for (const auto& t : m.transitions())
    if (keep[t.src] && keep[t.dst]) ts.push_back({r.map[t.src], t.symbol, r.map[t.dst]});
  for (auto& set : realizable)
    for (State& q : set) q = r.map[q];
  return DetMuller(m.alphabet(), r.count, r.map[m.initial()], std::move(ts),
                   std::move(realizable));
}

DetMuller complement(const DetMuller& m) {
  const std::size_t k = m.alphabet().size();
  const auto sink = static_cast<State>(m.num_states());
  std::vector<Transition> ts(m.transitions().begin(), m.transitions().end());
  for (State q = 0; q <= sink; ++q)
    for (Symbol a = 0; a < k; ++a)
      if (q == sink || !m.next(q, a)) ts.push_back({q, a, sink});

  Graph g(sink + 1);
  for (const auto& t : ts) g.add_edge(t.src, t.dst, t.symbol);
  std::vector<State> root{m.initial()};
  auto reach = detail::reachable_from(g, root);
  auto sccs = detail::strongly_connected(g, reach);
  std::vector<std::vector<State>> members(sccs.count);
  for (State q = 0; q <= sink; ++q)
    if (reach[q]) members[sccs.component[q]].push_back(q);

  std::vector<std::vector<State>> table;
  for (const auto& comp : members) {
    if (comp.size() > 20)
      throw PreconditionError("strongly connected component too large to complement");
    for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << comp.size()); ++mask) {
      std::vector<State> set;
      std::vector<bool> inside(sink + 1, false);
      for (std::size_t i = 0; i < comp.size(); ++i) {
        if (mask & (std::uint32_t{1} << i)) {
          set.push_back(comp[i]);
          inside[comp[i]] = true;
        }
      }
      bool has_edge = false;
      for (State q : set)
        for (const auto& e : g.out(q)) has_edge = has_edge || inside[e.dst];
      if (!has_edge || detail::strongly_connected(g, inside).count != 1) continue;
      if (std::find(m.table().begin(), m.table().end(), set) == m.table().end())
        table.push_back(std::move(set));
    }
  }
  return trim(DetMuller(m.alphabet(), sink + 1, m.initial(), std::move(ts), std::move(table)));
}

Nba to_nba(const DetMuller& input) {
  // A copy of the automaton followed, for each table entry F, by a copy
  // restricted to F with a counter cycling through the elements of F.
  const DetMuller m = trim(input);
  if (m.table().empty()) return Nba::empty(m.alphabet());
  const std::size_t n = m.num_states();
  const auto& table = m.table();
  std::vector<std::vector<State>> slot(table.size(), std::vector<State>(n, 0));
  State next_id = static_cast<State>(n);
  for (std::size_t i = 0; i < table.size(); ++i) {
    for (State q : table[i]) {
      slot[i][q] = next_id;
      next_id += static_cast<State>(table[i].size() + 1);
    }
  }
  auto member = [&](std::size_t i, State q) {
    return std::binary_search(table[i].begin(), table[i].end(), q);
  };
  std::vector<Transition> ts;
  std::vector<State> acc;
  for (const auto& t : m.transitions()) {
    ts.push_back(t);
    for (std::size_t i = 0; i < table.size(); ++i) {
      if (member(i, t.dst))
        ts.push_back({t.src, t.symbol, slot[i][t.dst] + (t.dst == table[i][0] ? 1u : 0u)});
    }
  }
  for (std::size_t i = 0; i < table.size(); ++i) {
    const auto& set = table[i];
    const State k = static_cast<State>(set.size());
    for (State q : set) {
      acc.push_back(slot[i][q] + k);
      for (const auto& t : m.successors(q)) {
        if (!member(i, t.dst)) continue;
        for (State j = 0; j <= k; ++j) {
          State j0 = j == k ? 0 : j;
          State nj = t.dst == set[j0] ? j0 + 1 : j0;
          ts.push_back({slot[i][q] + j, t.symbol, slot[i][t.dst] + nj});
        }
      }
    }
  }
  return trim(Nba(m.alphabet(), next_id, m.initial(), std::move(acc), std::move(ts)));
}

PrefixDfa prefix_dfa(const Nba& input) {
  const Nba a = trim(input);
  const std::size_t k = a.alphabet().size();
  if (is_empty(a))
    return PrefixDfa(a.alphabet(), 1, 0, 0, std::vector<State>(k, 0));
  Explorer<std::vector<State>> ex;
  ex.id({});  // the sink
  ex.id({a.initial()});
  std::vector<State> delta;
  while (ex.has_work()) {
    auto [s, set] = ex.pop();
    for (Symbol sym = 0; sym < k; ++sym) {
      std::vector<State> next;
      for (State q : set)
        for (const auto& t : a.successors(q, sym)) next.push_back(t.dst);
      std::sort(next.begin(), next.end());
      next.erase(std::unique(next.begin(), next.end()), next.end());
      delta.push_back(ex.id(next));
    }
  }
  return PrefixDfa(a.alphabet(), ex.size(), 1, 0, std::move(delta));
}

Nba closure(const Nba& a) {
  auto d = prefix_dfa(a);
  if (!d.is_live(d.initial())) return Nba::empty(a.alphabet());
  std::vector<bool> live(d.num_states());
  for (State q = 0; q < d.num_states(); ++q) live[q] = d.is_live(q);
  auto r = detail::renumber(live);
  std::vector<Transition> ts;
  std::vector<State> acc;
  for (State q = 0; q < d.num_states(); ++q) {
    if (!live[q]) continue;
    acc.push_back(r.map[q]);
    for (Symbol s = 0; s < d.alphabet().size(); ++s) {
      State to = d.next(q, s);
      if (live[to]) ts.push_back({r.map[q], s, r.map[to]});
    }
  }
  return Nba(a.alphabet(), r.count, r.map[d.initial()], std::move(acc), std::move(ts));
}

bool is_dense_in(const Nba& candidate, const Nba& x) {
  require_same_alphabet(candidate.alphabet(), x.alphabet(), "density test");
  auto dc = prefix_dfa(candidate);
  auto dx = prefix_dfa(x);
  Explorer<std::pair<State, State>> ex;
  ex.id({dc.initial(), dx.initial()});
  while (ex.has_work()) {
    auto [s, key] = ex.pop();
    auto [c, p] = key;
    if (!dx.is_live(p)) continue;
    if (!dc.is_live(c)) return false;
    for (Symbol a = 0; a < x.alphabet().size(); ++a) ex.id({dc.next(c, a), dx.next(p, a)});
  }
  return true;
}

namespace {

// States whose residual language is a single word.
std::vector<bool> singleton_residuals(std::size_t n, const auto& residual) {
  std::vector<bool> out(n);
  for (State q = 0; q < n; ++q) {
    Nba r = trim(residual(q));
    out[q] = !is_empty(r) && !detail::has_two_words(r);
  }
  return out;
}

}  // namespace

Nba isolated_points(const Dba& a) {
  const std::size_t n = a.num_states();
  auto single = singleton_residuals(n, [&](State q) { return a.nba().with_initial(q); });
  auto id = [](State q, bool f) { return static_cast<State>(2 * q + (f ? 1 : 0)); };
  std::vector<Transition> ts;
  std::vector<State> acc;
  for (State q = 0; q < n; ++q) {
    if (a.is_accepting(q)) acc.push_back(id(q, true));
    for (const auto& t : a.nba().successors(q)) {
      ts.push_back({id(q, true), t.symbol, id(t.dst, true)});
      ts.push_back({id(q, false), t.symbol, id(t.dst, single[t.dst])});
    }
  }
  return trim(Nba(a.alphabet(), 2 * n, id(a.initial(), single[a.initial()]),
                  std::move(acc), std::move(ts)));
}

Nba isolated_points(const DetMuller& m) {
  const std::size_t n = m.num_states();
  auto single = singleton_residuals(n, [&](State q) { return to_nba(m.with_initial(q)); });
  auto id = [](State q, bool f) { return static_cast<State>(2 * q + (f ? 1 : 0)); };
  std::vector<Transition> ts;
  for (const auto& t : m.transitions()) {
    ts.push_back({id(t.src, true), t.symbol, id(t.dst, true)});
    ts.push_back({id(t.src, false), t.symbol, id(t.dst, single[t.dst])});
  }
  std::vector<std::vector<State>> table;
  for (const auto& set : m.table()) {
    std::vector<State> flagged;
    for (State q : set) flagged.push_back(id(q, true));
    table.push_back(std::move(flagged));
  }
  return to_nba(DetMuller(m.alphabet(), 2 * n, id(m.initial(), single[m.initial()]),
                          std::move(ts), std::move(table)));
}

}  // namespace contset
