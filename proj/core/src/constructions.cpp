#include "contset/constructions.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <tuple>

#include "contset/complement.hpp"
#include "contset/error.hpp"
#include "contset/omega.hpp"
#include "graph.hpp"

namespace contset {

using detail::Explorer;
using detail::Graph;

namespace {

Alphabet with_fresh_letter(const Alphabet& sigma, Symbol* c) {
  std::vector<std::string> names(sigma.names().begin(), sigma.names().end());
  const Alphabet* taken[] = {&sigma};
  names.push_back(fresh_token("c", taken));
  *c = static_cast<Symbol>(names.size() - 1);
  return Alphabet(std::move(names));
}

SyncTransducer identity_on(const Nba& a) {
  std::vector<TransducerTransition> ts;
  for (const auto& t : a.transitions()) ts.push_back({t.src, {t.symbol}, {t.symbol}, t.dst});
  return SyncTransducer(Transducer(a.alphabet(), a.alphabet(), a.num_states(), a.initial(),
                                   a.accepting_states(), std::move(ts)));
}

}  // namespace

SyncTransducer pi2_witness(const Dba& input, Symbol b) {
  const Alphabet& sigma = input.alphabet();
  if (!sigma.contains(b)) throw PreconditionError("distinguished letter is not in the alphabet");
  if (sigma.size() == 1) return identity_on(Nba::universal(sigma));

  Nba trimmed = trim(input.nba());
  Dba a = Dba(trimmed);
  if (!is_empty(trimmed) && trimmed.num_states() != input.num_states())
    throw PreconditionError("automaton must be trim");
  if (is_empty(trimmed)) a = Dba(Nba::empty(sigma));

  Symbol c = 0;
  Alphabet out = with_fresh_letter(sigma, &c);
  const auto n = static_cast<State>(a.num_states());
  // Layout: 0 = fresh initial, then (q,0), (q,1), q1..q4.
  auto s0 = [](State q) { return 1 + q; };
  auto s1 = [n](State q) { return 1 + n + q; };
  const State q1 = 1 + 2 * n, q2 = q1 + 1, q3 = q1 + 2, q4 = q1 + 3;
  const State count = q4 + 1;

  std::vector<TransducerTransition> ts;
  auto add = [&](State from, Symbol in, Symbol o, State to) { ts.push_back({from, {in}, {o}, to}); };
  auto from_bit0 = [&](State p, State src) {
    for (Symbol x = 0; x < sigma.size(); ++x) {
      if (auto q = a.next(p, x)) {
        add(src, x, x, s0(*q));
        // Switch to the c-branch right after the last accepting visit.
        if ((src == 0 || a.is_accepting(p)) && !a.is_accepting(*q)) add(src, x, c, s1(*q));
      } else {
        add(src, x, b, q1);
        add(src, x, c, q3);
      }
    }
  };
  from_bit0(a.initial(), 0);
  for (State p = 0; p < n; ++p) {
    from_bit0(p, s0(p));
    if (a.is_accepting(p)) continue;
    for (Symbol x = 0; x < sigma.size(); ++x)
      if (auto q = a.next(p, x); q && !a.is_accepting(*q)) add(s1(p), x, c, s1(*q));
  }
  for (Symbol x = 0; x < sigma.size(); ++x) {
    for (State p : {q1, q2}) add(p, x, b, x == b ? q2 : q1);
    add(q3, x, c, q3);
    if (x != b)
      for (State p : {q3, q4}) add(p, x, c, q4);
  }
  std::vector<State> acc{q2, q4};
  for (State p = 0; p < n; ++p) acc.push_back(a.is_accepting(p) ? s0(p) : s1(p));
  return trim(SyncTransducer(Transducer(sigma, out, count, 0, std::move(acc), std::move(ts))));
}

namespace {

// Monitor values: bit 0 is the parity / expected edge, bit 1 a defect flag.
struct Gadget {
  bool parity = true;
  State q = 0;                          // parity: the counted state
  std::array<std::pair<State, Symbol>, 2> edges{};  // alternation: e, e'
};

std::uint8_t update(std::uint8_t mon, const Transition& t,
                    const std::vector<Gadget>& gadgets) {
  for (const auto& g : gadgets) {
    if (g.parity) {
      if (t.dst == g.q) return static_cast<std::uint8_t>(mon ^ 1);
    } else {
      const std::uint8_t expected = mon & 1;
      if (t.src == g.edges[0].first && t.symbol == g.edges[0].second)
        return static_cast<std::uint8_t>(1 | (expected == 0 ? 0 : 2));
      if (t.src == g.edges[1].first && t.symbol == g.edges[1].second)
        return static_cast<std::uint8_t>(0 | (expected == 1 ? 0 : 2));
    }
  }
  return mon;
}

// Sets of product states that project exactly onto `target` and can be the
// infinity set of a run.
std::vector<std::vector<State>> realizable_lifts(const Graph& g,
                                                 const std::vector<State>& projection,
                                                 const std::vector<State>& target,
                                                 std::size_t num_base_states) {
  std::vector<bool> in_target(num_base_states, false);
  for (State q : target) in_target[q] = true;
  std::vector<bool> allowed(g.size());
  for (State v = 0; v < g.size(); ++v) allowed[v] = in_target[projection[v]];
  auto sccs = detail::strongly_connected(g, allowed);

  std::vector<std::vector<State>> result;
  for (std::uint32_t c = 0; c < sccs.count; ++c) {
    std::map<State, std::vector<State>> copies;  // base state -> product states
    for (State v = 0; v < g.size(); ++v)
      if (sccs.component[v] == c) copies[projection[v]].push_back(v);
    if (copies.size() != target.size()) continue;
    std::vector<std::vector<std::vector<State>>> options;
    for (auto& [q, vs] : copies) {
      std::vector<std::vector<State>> subsets;
      for (std::size_t mask = 1; mask < (std::size_t{1} << vs.size()); ++mask) {
        std::vector<State> sub;
        for (std::size_t i = 0; i < vs.size(); ++i)
          if (mask & (std::size_t{1} << i)) sub.push_back(vs[i]);
        subsets.push_back(std::move(sub));
      }
      options.push_back(std::move(subsets));
    }
    std::vector<std::size_t> pick(options.size(), 0);
    while (true) {
      std::vector<State> set;
      for (std::size_t i = 0; i < options.size(); ++i)
        set.insert(set.end(), options[i][pick[i]].begin(), options[i][pick[i]].end());
      std::vector<bool> inside(g.size(), false);
      for (State v : set) inside[v] = true;
      bool has_edge = false;
      for (State v : set)
        for (const auto& e : g.out(v)) has_edge = has_edge || inside[e.dst];
      if (has_edge && detail::strongly_connected(g, inside).count == 1) {
        std::sort(set.begin(), set.end());
        result.push_back(std::move(set));
      }
      std::size_t i = 0;
      while (i < pick.size() && ++pick[i] == options[i].size()) pick[i++] = 0;
      if (i == pick.size()) break;
    }
  }
  return result;
}

}  // namespace

std::pair<DetMuller, DetMuller> dense_partition(const DetMuller& input) {
  const DetMuller m = trim(input);
  if (m.table().empty()) throw PreconditionError("language is empty");
  if (auto iso = find_accepted_word(isolated_points(m)))
    throw PreconditionError("language has an isolated point " + iso->to_string());

  const std::size_t n = m.num_states();
  Graph base(n);
  for (const auto& t : m.transitions()) base.add_edge(t.src, t.dst, t.symbol);
  auto sccs = detail::strongly_connected(base);
  const auto& comp = sccs.component;

  // Components reachable from each component.
  std::vector<std::vector<bool>> reach(sccs.count, std::vector<bool>(sccs.count, false));
  for (State q = 0; q < n; ++q) {
    std::vector<State> root{q};
    auto r = detail::reachable_from(base, root);
    for (State p = 0; p < n; ++p)
      if (r[p]) reach[comp[q]][comp[p]] = true;
  }
  std::vector<bool> holds_table(sccs.count, false);
  for (const auto& set : m.table()) holds_table[comp[set[0]]] = true;

  // For each accessibility-maximal component: the entry to split and its
  // gadget. Other entries go to the first part whole.
  std::map<std::size_t, Gadget> chosen;  // table index -> gadget
  std::vector<Gadget> gadgets;
  for (std::uint32_t k = 0; k < sccs.count; ++k) {
    if (!holds_table[k]) continue;
    bool maximal = true;
    for (std::uint32_t j = 0; j < sccs.count; ++j)
      if (j != k && holds_table[j] && reach[k][j]) maximal = false;
    if (!maximal) continue;
    std::size_t index = 0;
    while (comp[m.table()[index][0]] != k) ++index;
    const auto& f = m.table()[index];
    Gadget g;
    std::optional<State> outside;
    for (State q = 0; q < n && !outside; ++q)
      if (comp[q] == k && !std::binary_search(f.begin(), f.end(), q)) outside = q;
    if (outside) {
      g.q = *outside;
    } else {
      g.parity = false;
      bool found = false;
      for (State q = 0; q < n && !found; ++q) {
        if (comp[q] != k) continue;
        std::vector<Symbol> inner;
        for (const auto& t : m.successors(q))
          if (comp[t.dst] == k) inner.push_back(t.symbol);
        if (inner.size() >= 2) {
          g.edges = {{{q, inner[0]}, {q, inner[1]}}};
          found = true;
        }
      }
      if (!found) throw PreconditionError("language has an isolated point");
    }
    chosen.emplace(index, g);
    gadgets.push_back(g);
  }

  using Key = std::pair<State, std::uint8_t>;
  Explorer<Key> ex;
  ex.id({m.initial(), 0});
  std::vector<Transition> ts;
  while (ex.has_work()) {
    auto [id, key] = ex.pop();
    for (const auto& t : m.successors(key.first)) {
      State to = ex.id({t.dst, update(key.second, t, gadgets)});
      ts.push_back({id, t.symbol, to});
    }
  }
  Graph pg(ex.size());
  std::vector<State> projection(ex.size());
  for (State v = 0; v < ex.size(); ++v) projection[v] = ex.key(v).first;
  for (const auto& t : ts) pg.add_edge(t.src, t.dst, t.symbol);

  std::vector<std::vector<State>> first, second;
  for (std::size_t i = 0; i < m.table().size(); ++i) {
    auto it = chosen.find(i);
    for (auto& set : realizable_lifts(pg, projection, m.table()[i], n)) {
      bool to_first = true;
      if (it != chosen.end()) {
        std::uint8_t seen = 0;  // bit per monitor value
        for (State v : set) seen |= static_cast<std::uint8_t>(1u << ex.key(v).second);
        if (it->second.parity)
          to_first = (seen & 0b0001) != 0;  // even parity
        else
          to_first = seen == 0b0011;  // both expectations, no defect
      }
      (to_first ? first : second).push_back(std::move(set));
    }
  }
  return {trim(DetMuller(m.alphabet(), ex.size(), 0, ts, std::move(first))),
          trim(DetMuller(m.alphabet(), ex.size(), 0, ts, std::move(second)))};
}

SyncTransducer witness_on_domain(const DetMuller& d, const Dba& xp_input,
                                 std::optional<Symbol> b_opt) {
  const Alphabet& sigma = d.alphabet();
  require_same_alphabet(sigma, xp_input.alphabet(), "witness_on_domain");
  const Symbol b = b_opt.value_or(static_cast<Symbol>(sigma.size() - 1));
  if (!sigma.contains(b)) throw PreconditionError("distinguished letter is not in the alphabet");

  const Dba xp(trim(xp_input.nba()));
  const Nba dn = to_nba(d);
  const Nba x = intersect(xp.nba(), dn);
  if (auto v = is_included(isolated_points(d), x); !v)
    throw PreconditionError("isolated point " + v.counterexample->to_string() +
                            " of the domain is missing from the set");
  const PrefixDfa live = prefix_dfa(x);

  // Z = D minus the closure of X, as a deterministic Muller automaton.
  std::vector<Transition> zt;
  const auto np = static_cast<State>(live.num_states());
  auto zid = [np](State q, State s) { return q * np + s; };
  for (const auto& t : d.transitions())
    for (State s = 0; s < np; ++s) zt.push_back({zid(t.src, s), t.symbol, zid(t.dst, live.next(s, t.symbol))});
  std::vector<std::vector<State>> ztable;
  for (const auto& set : d.table()) {
    std::vector<State> lifted;
    for (State q : set) lifted.push_back(zid(q, live.sink()));
    ztable.push_back(std::move(lifted));
  }
  const DetMuller z = trim(DetMuller(sigma, d.num_states() * np, zid(d.initial(), live.initial()),
                                     std::move(zt), std::move(ztable)));

  Symbol c = 0;
  Alphabet out = with_fresh_letter(sigma, &c);
  std::vector<TransducerTransition> ts;
  std::vector<State> acc;
  State next_id = 1;  // 0 is the shared initial state
  std::vector<State> branch_initials;
  auto add = [&](State from, Symbol in, Symbol o, State to) { ts.push_back({from, {in}, {o}, to}); };

  // Identity on X.
  {
    const State off = next_id;
    for (const auto& t : x.transitions()) add(off + t.src, t.symbol, t.symbol, off + t.dst);
    for (State q : x.accepting_states()) acc.push_back(off + q);
    branch_initials.push_back(off + x.initial());
    next_id += static_cast<State>(x.num_states());
  }
  // Closure of X inside D, minus X: copy until the last accepting visit of
  // xp, then c forever.
  {
    enum Mode : int { fresh, pre, post };
    using Key = std::tuple<State, State, State, int>;
    Explorer<Key> ex;
    ex.id({xp.initial(), live.initial(), dn.initial(), fresh});
    std::vector<std::tuple<State, Symbol, Symbol, State>> local;
    std::vector<State> local_acc;
    while (ex.has_work()) {
      auto [id, key] = ex.pop();
      auto [p, s, r, mode] = key;
      if (mode == post && dn.is_accepting(r)) local_acc.push_back(id);
      for (Symbol a = 0; a < sigma.size(); ++a) {
        auto p2 = xp.next(p, a);
        State s2 = live.next(s, a);
        if (!p2 || !live.is_live(s2)) continue;
        for (const auto& t : dn.successors(r, a)) {
          if (mode != post) local.emplace_back(id, a, a, ex.id({*p2, s2, t.dst, pre}));
          bool may_switch = mode == post || xp.is_accepting(p) || mode == fresh;
          if (may_switch && !xp.is_accepting(*p2))
            local.emplace_back(id, a, c, ex.id({*p2, s2, t.dst, post}));
        }
      }
    }
    const State off = next_id;
    for (auto [f, a, o, t] : local) add(off + f, a, o, off + t);
    for (State q : local_acc) acc.push_back(off + q);
    branch_initials.push_back(off);
    next_id += static_cast<State>(ex.size());
  }
  // D minus the closure of X: copy while the prefix is extendable into X,
  // then b forever on the first part and c forever on the second.
  if (!z.table().empty()) {
    auto [z1, z2] = dense_partition(z);
    for (auto [part, letter] : {std::pair{&z1, b}, std::pair{&z2, c}}) {
      const Nba zn = to_nba(*part);
      using Key = std::pair<State, State>;
      Explorer<Key> ex;
      ex.id({zn.initial(), live.initial()});
      std::vector<std::tuple<State, Symbol, Symbol, State>> local;
      std::vector<State> local_acc;
      while (ex.has_work()) {
        auto [id, key] = ex.pop();
        auto [q, s] = key;
        if (zn.is_accepting(q) && !live.is_live(s)) local_acc.push_back(id);
        for (const auto& t : zn.successors(q)) {
          State s2 = live.next(s, t.symbol);
          local.emplace_back(id, t.symbol, live.is_live(s2) ? t.symbol : letter, ex.id({t.dst, s2}));
        }
      }
      const State off = next_id;
      for (auto [f, a, o, t] : local) add(off + f, a, o, off + t);
      for (State q : local_acc) acc.push_back(off + q);
      branch_initials.push_back(off);
      next_id += static_cast<State>(ex.size());
    }
  }
  const std::size_t body = ts.size();
  for (std::size_t i = 0; i < body; ++i) {
    const auto& t = ts[i];
    if (std::find(branch_initials.begin(), branch_initials.end(), t.src) != branch_initials.end())
      ts.push_back({0, t.input, t.output, t.dst});
  }
  return trim(SyncTransducer(Transducer(sigma, out, next_id, 0, std::move(acc), std::move(ts))));
}

Nba globalize_pi2(const Nba& x, const Nba& d) {
  if (auto v = is_included(x, d); !v)
    throw PreconditionError("set is not contained in the domain: " + v.counterexample->to_string());
  return unite(x, complement(d));
}

}  // namespace contset
