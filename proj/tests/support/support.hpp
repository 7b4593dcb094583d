#pragma once

// Fixtures, seeded generators and independent oracles shared by the tests.
// The oracles deliberately avoid the library's product/emptiness code.

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "contset/automata.hpp"
#include "contset/lasso.hpp"
#include "contset/omega.hpp"
#include "contset/pcp.hpp"
#include "contset/transducer.hpp"

namespace contset::testing {

inline Alphabet ab() {
  static const Alphabet a({"a", "b"});
  return a;
}

/// Infinitely many a: state 1 after a, state 0 after b.
inline Dba even_a() {
  return Dba(ab(), 2, 0, {1}, {{0, 0, 1}, {0, 1, 0}, {1, 0, 1}, {1, 1, 0}});
}

/// Infinitely many b.
inline Dba inf_b() {
  return Dba(ab(), 2, 0, {1}, {{0, 0, 0}, {0, 1, 1}, {1, 0, 0}, {1, 1, 1}});
}

/// Finitely many a: guess the last a, then only b.
inline Nba fin_a() {
  return Nba(ab(), 2, 0, {1}, {{0, 0, 0}, {0, 1, 0}, {0, 1, 1}, {1, 1, 1}});
}

/// a.{a,b}^omega.
inline Dba starts_with_a() {
  return Dba(ab(), 2, 0, {1}, {{0, 0, 1}, {1, 0, 1}, {1, 1, 1}});
}

/// One state, everything accepting.
inline Dba universal_dba() { return Dba(Nba::universal(ab())); }

inline DetMuller universal_muller() {
  return DetMuller(ab(), 1, 0, {{0, 0, 0}, {0, 1, 0}}, {{0}});
}

/// Eventually only a: state 1 after a, state 0 after b; table {{1}}.
inline DetMuller eventually_a_muller() {
  return DetMuller(ab(), 2, 0, {{0, 0, 1}, {0, 1, 0}, {1, 0, 1}, {1, 1, 0}}, {{1}});
}

/// {a^omega} union b.{a,b}^omega.
inline DetMuller a_omega_or_b() {
  // 0 --a--> 1 (a-loop), 0 --b--> 2 (universal).
  return DetMuller(ab(), 3, 0,
                   {{0, 0, 1}, {0, 1, 2}, {1, 0, 1}, {2, 0, 2}, {2, 1, 2}}, {{1}, {2}});
}

inline SyncTransducer identity_t() {
  return SyncTransducer(Transducer(ab(), ab(), 1, 0, {0}, {{0, {0}, {0}, 0}, {0, {1}, {1}, 0}}));
}

/// a^omega when the input has infinitely many a, b^omega otherwise.
inline SyncTransducer inf_a_t() {
  // 0 initial, p0 = 1, p1 = 2 (accepting), q0 = 3, q1 = 4 (accepting).
  std::vector<TransducerTransition> ts;
  for (State from : {0u, 1u, 2u}) {
    ts.push_back({from, {0}, {0}, 2});
    ts.push_back({from, {1}, {0}, 1});
  }
  for (State from : {0u, 3u}) {
    ts.push_back({from, {0}, {1}, 3});
    ts.push_back({from, {1}, {1}, 3});
    ts.push_back({from, {1}, {1}, 4});
  }
  ts.push_back({4, {1}, {1}, 4});
  return SyncTransducer(Transducer(ab(), ab(), 5, 0, {2, 4}, std::move(ts)));
}

/// Identity and the a/b swap under one initial state.
inline SyncTransducer id_or_swap() {
  return SyncTransducer(Transducer(ab(), ab(), 3, 0, {1, 2},
                                   {{0, {0}, {0}, 1}, {0, {1}, {1}, 1}, {1, {0}, {0}, 1},
                                    {1, {1}, {1}, 1}, {0, {0}, {1}, 2}, {0, {1}, {0}, 2},
                                    {2, {0}, {1}, 2}, {2, {1}, {0}, 2}}));
}

/// a* b {a,b}^omega together with a^omega; entry {1} is reachable from {0}.
inline DetMuller a_star_then_any() {
  return DetMuller(ab(), 2, 0, {{0, 0, 0}, {0, 1, 1}, {1, 0, 1}, {1, 1, 1}}, {{0}, {1}});
}

/// Infinitely many a, tracked by the last letter; two entries in one component.
inline DetMuller inf_a_by_last_letter() {
  return DetMuller(ab(), 2, 0, {{0, 0, 0}, {0, 1, 1}, {1, 0, 0}, {1, 1, 1}}, {{0}, {0, 1}});
}

/// Two unrelated universal components after the first letter.
inline DetMuller split_on_first_letter() {
  return DetMuller(ab(), 3, 0,
                   {{0, 0, 1}, {0, 1, 2}, {1, 0, 1}, {1, 1, 1}, {2, 0, 2}, {2, 1, 2}},
                   {{1}, {2}});
}

/// a.{a,b}^omega as a Muller automaton.
inline DetMuller starts_with_a_muller() {
  return DetMuller(ab(), 2, 0, {{0, 0, 1}, {1, 0, 1}, {1, 1, 1}}, {{1}});
}

/// b.{a,b}^omega together with the isolated point a^omega.
inline DetMuller isolated_a_omega() {
  return DetMuller(ab(), 3, 0, {{0, 0, 1}, {1, 0, 1}, {0, 1, 2}, {2, 0, 2}, {2, 1, 2}},
                   {{1}, {2}});
}

inline PcpInstance solv_inst() {
  return PcpInstance(ab(), {{0, 1}, {1}}, {{0}, {1, 1}});
}

inline LassoWord lasso(const Alphabet& a, std::string_view text) {
  return LassoWord::parse(a, text);
}

// ---------------------------------------------------------------- generators

using Rng = std::mt19937;

inline Nba random_nba(Rng& rng, std::size_t max_states, const Alphabet& sigma = ab(),
                      double density = 0.35, double accepting = 0.4) {
  std::uniform_int_distribution<std::size_t> size(1, max_states);
  std::bernoulli_distribution edge(density), acc(accepting);
  const std::size_t n = size(rng);
  std::vector<State> f;
  std::vector<Transition> ts;
  for (State q = 0; q < n; ++q) {
    if (acc(rng)) f.push_back(q);
    for (Symbol a = 0; a < sigma.size(); ++a)
      for (State p = 0; p < n; ++p)
        if (edge(rng)) ts.push_back({q, a, p});
  }
  return Nba(sigma, n, 0, std::move(f), std::move(ts));
}

inline Dba random_dba(Rng& rng, std::size_t max_states, const Alphabet& sigma = ab(),
                      double defined = 0.85, double accepting = 0.4) {
  std::uniform_int_distribution<std::size_t> size(1, max_states);
  const std::size_t n = size(rng);
  std::uniform_int_distribution<State> target(0, static_cast<State>(n - 1));
  std::bernoulli_distribution def(defined), acc(accepting);
  std::vector<State> f;
  std::vector<Transition> ts;
  for (State q = 0; q < n; ++q) {
    if (acc(rng)) f.push_back(q);
    for (Symbol a = 0; a < sigma.size(); ++a)
      if (def(rng)) ts.push_back({q, a, target(rng)});
  }
  return Dba(sigma, n, 0, std::move(f), std::move(ts));
}

/// Trimmed random DBA; the language may be empty.
inline Dba random_trim_dba(Rng& rng, std::size_t max_states) {
  return Dba(trim(random_dba(rng, max_states).nba()));
}

inline DetMuller random_muller(Rng& rng, std::size_t max_states, const Alphabet& sigma = ab(),
                               double defined = 0.9) {
  std::uniform_int_distribution<std::size_t> size(1, max_states);
  const std::size_t n = size(rng);
  std::uniform_int_distribution<State> target(0, static_cast<State>(n - 1));
  std::bernoulli_distribution def(defined), coin(0.5);
  std::vector<Transition> ts;
  for (State q = 0; q < n; ++q)
    for (Symbol a = 0; a < sigma.size(); ++a)
      if (def(rng)) ts.push_back({q, a, target(rng)});
  std::vector<std::vector<State>> table;
  std::uniform_int_distribution<int> entries(1, 3);
  for (int e = entries(rng); e > 0; --e) {
    std::vector<State> set;
    for (State q = 0; q < n; ++q)
      if (coin(rng)) set.push_back(q);
    if (set.empty()) set.push_back(target(rng));
    table.push_back(std::move(set));
  }
  return DetMuller(sigma, n, 0, std::move(ts), std::move(table));
}

/// Random synchronous transducer over {a,b} x {a,b}.
inline SyncTransducer random_sync(Rng& rng, std::size_t max_states, double density = 0.25,
                                  double accepting = 0.4) {
  std::uniform_int_distribution<std::size_t> size(1, max_states);
  std::bernoulli_distribution edge(density), acc(accepting);
  const std::size_t n = size(rng);
  std::vector<State> f;
  std::vector<TransducerTransition> ts;
  for (State q = 0; q < n; ++q) {
    if (acc(rng)) f.push_back(q);
    for (Symbol i = 0; i < 2; ++i)
      for (Symbol o = 0; o < 2; ++o)
        for (State p = 0; p < n; ++p)
          if (edge(rng)) ts.push_back({q, {i}, {o}, p});
  }
  return SyncTransducer(Transducer(ab(), ab(), n, 0, std::move(f), std::move(ts)));
}

/// Total functional transducer from a random complete DBA A: one branch
/// follows A and accepts L(A), the other guesses that A's accepting states
/// are eventually avoided. Each branch writes its own random outputs.
inline SyncTransducer random_split_sync(Rng& rng, std::size_t max_states) {
  std::uniform_int_distribution<std::size_t> size(1, max_states);
  const std::size_t n = size(rng);
  std::uniform_int_distribution<State> target(0, static_cast<State>(n - 1));
  std::bernoulli_distribution acc(0.4), coin(0.5);
  std::vector<bool> f(n);
  for (std::size_t q = 0; q < n; ++q) f[q] = acc(rng);
  const auto s = static_cast<State>(n);
  std::vector<TransducerTransition> ts;
  auto add = [&](State src, Symbol i, Symbol o, State dst) {
    ts.push_back({src, {i}, {o}, dst});
    if (src == 0 || src == s || (src == 2 * s && !f[0])) ts.push_back({3 * s, {i}, {o}, dst});
  };
  for (State q = 0; q < s; ++q) {
    for (Symbol i = 0; i < 2; ++i) {
      State d = target(rng);
      auto o1 = static_cast<Symbol>(coin(rng)), o2 = static_cast<Symbol>(coin(rng));
      add(q, i, o1, d);
      add(s + q, i, o2, s + d);
      if (!f[d]) {
        add(s + q, i, o2, 2 * s + d);
        if (!f[q]) add(2 * s + q, i, o2, 2 * s + d);
      }
    }
  }
  std::vector<State> accepting;
  for (State q = 0; q < s; ++q) {
    if (f[q]) accepting.push_back(q);
    if (!f[q]) accepting.push_back(2 * s + q);
  }
  return SyncTransducer(Transducer(ab(), ab(), 3 * n + 1, 3 * s, std::move(accepting),
                                   std::move(ts)));
}

inline LassoWord random_lasso(Rng& rng, const Alphabet& sigma = ab(), std::size_t max_prefix = 4,
                              std::size_t max_loop = 4) {
  std::uniform_int_distribution<std::size_t> plen(0, max_prefix), llen(1, max_loop);
  std::uniform_int_distribution<Symbol> letter(0, static_cast<Symbol>(sigma.size() - 1));
  Word u(plen(rng)), v(llen(rng));
  for (auto& s : u) s = letter(rng);
  for (auto& s : v) s = letter(rng);
  return LassoWord(sigma, u, v);
}

inline PcpInstance random_pcp(Rng& rng, std::size_t max_n = 3, std::size_t max_len = 3) {
  std::uniform_int_distribution<std::size_t> count(1, max_n), len(1, max_len);
  std::uniform_int_distribution<Symbol> letter(0, 1);
  const std::size_t n = count(rng);
  std::vector<Word> u(n), v(n);
  for (std::size_t i = 0; i < n; ++i) {
    u[i].resize(len(rng));
    v[i].resize(len(rng));
    for (auto& s : u[i]) s = letter(rng);
    for (auto& s : v[i]) s = letter(rng);
  }
  return PcpInstance(ab(), u, v);
}

/// Instance with a planted solution: both sides cut one random word into
/// n non-empty pieces, and the pairs are listed in a random order.
inline PcpInstance planted_pcp(Rng& rng, std::size_t max_n = 3) {
  std::uniform_int_distribution<std::size_t> count(2, max_n);
  std::uniform_int_distribution<Symbol> letter(0, 1);
  const std::size_t n = count(rng);
  Word w(n + std::uniform_int_distribution<std::size_t>(0, n + 1)(rng));
  for (auto& s : w) s = letter(rng);
  auto cut = [&] {
    std::vector<std::size_t> points(w.size() - 1);
    std::iota(points.begin(), points.end(), std::size_t{1});
    std::shuffle(points.begin(), points.end(), rng);
    points.resize(n - 1);
    std::sort(points.begin(), points.end());
    points.insert(points.begin(), 0);
    points.push_back(w.size());
    std::vector<Word> pieces;
    for (std::size_t i = 0; i < n; ++i)
      pieces.emplace_back(w.begin() + static_cast<long>(points[i]),
                          w.begin() + static_cast<long>(points[i + 1]));
    return pieces;
  };
  auto u = cut(), v = cut();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<Word> pu, pv;
  for (std::size_t i : order) {
    pu.push_back(u[i]);
    pv.push_back(v[i]);
  }
  return PcpInstance(ab(), pu, pv);
}

// ------------------------------------------------------------------ oracles

/// The first n letters, computed directly from the representation.
inline Word unroll(const LassoWord& w, std::size_t n) {
  Word out(w.prefix());
  while (out.size() < n) out.insert(out.end(), w.loop().begin(), w.loop().end());
  out.resize(n);
  return out;
}

/// Membership by iterating the loop as a relation on states: p -> q when
/// some run reads v from p to q, flagged when it passes an accepting state.
inline bool oracle_accepts(const Nba& a, const LassoWord& w) {
  const std::size_t n = a.num_states();
  auto step = [&](const std::vector<bool>& from, Symbol s) {
    std::vector<bool> to(n, false);
    for (const auto& t : a.transitions())
      if (from[t.src] && t.symbol == s) to[t.dst] = true;
    return to;
  };
  std::vector<bool> cur(n, false);
  cur[a.initial()] = true;
  for (Symbol s : w.prefix()) cur = step(cur, s);
  // rel[p][q]: 0 none, 1 path, 2 path through an accepting state.
  std::vector<std::vector<int>> rel(n, std::vector<int>(n, 0));
  for (State p = 0; p < n; ++p) {
    std::vector<int> mark(n, 0);
    mark[p] = a.is_accepting(p) ? 2 : 1;
    for (Symbol s : w.loop()) {
      std::vector<int> next(n, 0);
      for (const auto& t : a.transitions()) {
        if (t.symbol != s || mark[t.src] == 0) continue;
        int m = std::max(mark[t.src], a.is_accepting(t.dst) ? 2 : 1);
        next[t.dst] = std::max(next[t.dst], m);
      }
      mark = next;
    }
    for (State q = 0; q < n; ++q) rel[p][q] = mark[q];
  }
  // Transitive closure keeping the best flag (Floyd-Warshall style).
  auto closure = rel;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (closure[i][k] && closure[k][j])
          closure[i][j] = std::max({closure[i][j], std::max(closure[i][k], closure[k][j])});
  for (State p = 0; p < n; ++p) {
    if (!cur[p]) continue;
    for (State q = 0; q < n; ++q) {
      bool reach = p == q || closure[p][q];
      if (reach && closure[q][q] == 2) return true;
    }
  }
  return false;
}

/// Calls f on every lasso with |prefix| + |loop| <= max_total.
template <class F>
void for_each_lasso(const Alphabet& sigma, std::size_t max_total, F&& f) {
  const auto k = static_cast<Symbol>(sigma.size());
  for (std::size_t total = 1; total <= max_total; ++total) {
    Word word(total, 0);
    while (true) {
      for (std::size_t split = 0; split < total; ++split)
        f(LassoWord(sigma, Word(word.begin(), word.begin() + static_cast<long>(split)),
                    Word(word.begin() + static_cast<long>(split), word.end())));
      std::size_t i = total;
      while (i > 0 && word[i - 1] + 1 == k) word[--i] = 0;
      if (i == 0) break;
      ++word[i - 1];
    }
  }
}

/// Brute-force emptiness: no lasso with |u| + |v| <= bound is accepted.
inline bool oracle_empty(const Nba& a, std::size_t bound) {
  bool empty = true;
  for_each_lasso(a.alphabet(), bound, [&](const LassoWord& w) {
    if (empty && oracle_accepts(a, w)) empty = false;
  });
  return empty;
}

/// y (over an output alphabet extending x's) spells the same word as x.
inline bool is_same_word(const LassoWord& y, const LassoWord& x) {
  return lasso_equal(y, LassoWord(y.alphabet(), x.prefix(), x.loop()));
}

/// Brute-force PCP solutions of length <= k.
inline std::vector<IndexSequence> oracle_pcp(const PcpInstance& inst, std::size_t k) {
  std::vector<IndexSequence> out;
  for (std::size_t len = 1; len <= k; ++len) {
    IndexSequence s(len, 1);
    while (true) {
      Word top, bottom;
      for (std::size_t i : s) {
        top.insert(top.end(), inst.u()[i - 1].begin(), inst.u()[i - 1].end());
        bottom.insert(bottom.end(), inst.v()[i - 1].begin(), inst.v()[i - 1].end());
      }
      if (top == bottom) out.push_back(s);
      std::size_t i = len;
      while (i > 0 && s[i - 1] == inst.size()) s[--i] = 1;
      if (i == 0) break;
      ++s[i - 1];
    }
  }
  return out;
}

/// T as an automaton over letter pairs "i:o" (synchronous T only).
inline Nba pair_nba(const SyncTransducer& t) {
  const auto& in = t.input_alphabet();
  const auto& out = t.output_alphabet();
  std::vector<std::string> names;
  for (Symbol i = 0; i < in.size(); ++i)
    for (Symbol o = 0; o < out.size(); ++o) names.push_back(in.name(i) + ":" + out.name(o));
  std::vector<Transition> ts;
  for (State q = 0; q < t.num_states(); ++q)
    for (const auto& e : t.edges(q))
      ts.push_back({q, static_cast<Symbol>(e.input * out.size() + e.output), e.dst});
  std::vector<State> f;
  for (State q = 0; q < t.num_states(); ++q)
    if (t.is_accepting(q)) f.push_back(q);
  return Nba(Alphabet(names), t.num_states(), t.initial(), std::move(f), std::move(ts));
}

/// The letterwise pairing of x and y as a lasso over the pair alphabet.
inline LassoWord zip(const Alphabet& pairs, const LassoWord& x, const LassoWord& y) {
  const std::size_t u = std::max(x.prefix().size(), y.prefix().size());
  const std::size_t v = std::lcm(x.loop().size(), y.loop().size());
  const std::size_t k = y.alphabet().size();
  auto letter = [&](std::size_t i) { return static_cast<Symbol>(x.at(i) * k + y.at(i)); };
  Word pu, pv;
  for (std::size_t i = 0; i < u; ++i) pu.push_back(letter(i));
  for (std::size_t i = u; i < u + v; ++i) pv.push_back(letter(i));
  return LassoWord(pairs, pu, pv);
}

/// (x, y) accepted by synchronous t, decided on the pair automaton.
inline bool oracle_relates(const SyncTransducer& t, const LassoWord& x, const LassoWord& y) {
  auto p = pair_nba(t);
  return oracle_accepts(p, zip(p.alphabet(), x, y));
}

}  // namespace contset::testing
