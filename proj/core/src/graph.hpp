#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "contset/alphabet.hpp"
#include "contset/automata.hpp"
#include "contset/lasso.hpp"

namespace contset::detail {

using Marks = std::uint32_t;

struct Edge {
  State src;
  State dst;
  Symbol label;
  Marks marks;
};

/// Edge-labelled graph with acceptance marks on edges; used for every
/// emptiness style question.
class Graph {
 public:
  explicit Graph(std::size_t n = 0) : n_(n) {}

  State add_vertex() { return static_cast<State>(n_++); }
  void add_edge(State src, State dst, Symbol label, Marks marks = 0) {
    edges_.push_back({src, dst, label, marks});
    finalized_ = false;
  }
  std::size_t size() const noexcept { return n_; }
  std::span<const Edge> out(State v) const;
  std::span<const Edge> edges() const;

 private:
  void finalize() const;

  std::size_t n_;
  mutable std::vector<Edge> edges_;
  mutable std::vector<std::size_t> offsets_;
  mutable bool finalized_ = false;
};

/// Strongly connected components of the subgraph induced by `allowed`
/// (all vertices when empty). Vertices outside get component id npos.
struct Sccs {
  static constexpr std::uint32_t npos = UINT32_MAX;
  std::vector<std::uint32_t> component;
  std::size_t count = 0;
};
Sccs strongly_connected(const Graph& g, const std::vector<bool>& allowed = {});

std::vector<bool> reachable_from(const Graph& g, std::span<const State> roots);

struct Lasso {
  std::vector<Edge> stem;
  std::vector<Edge> cycle;

  Word stem_labels() const;
  Word cycle_labels() const;
};

/// A reachable cycle whose edges jointly carry every mark in `required` (at
/// least one edge when required is 0). Only vertices satisfying `cycle_ok`
/// may lie on the cycle.
std::optional<Lasso> find_accepting_lasso(
    const Graph& g, State root, Marks required,
    const std::function<bool(State)>& cycle_ok = {});

/// Vertices reachable from root that can reach such a cycle.
std::vector<bool> live_vertices(const Graph& g, State root, Marks required);

/// Dense numbering of exploration keys, with a work queue.
template <class Key>
class Explorer {
 public:
  /// Id of key, queuing it for expansion when new.
  State id(const Key& key) {
    auto [it, inserted] = index_.try_emplace(key, static_cast<State>(keys_.size()));
    if (inserted) keys_.push_back(key);
    return it->second;
  }
  bool has_work() const noexcept { return next_ < keys_.size(); }
  /// Next unexpanded key and its id. Copies the key since id() may
  /// reallocate storage.
  std::pair<State, Key> pop() {
    State s = static_cast<State>(next_++);
    return {s, keys_[s]};
  }
  std::size_t size() const noexcept { return keys_.size(); }
  const Key& key(State s) const { return keys_[s]; }
  const std::vector<Key>& keys() const noexcept { return keys_; }

 private:
  std::map<Key, State> index_;
  std::vector<Key> keys_;
  std::size_t next_ = 0;
};

/// Renumbers the states kept by `keep` (in order) and drops the others.
struct Renumbering {
  std::vector<State> map;  // old -> new, or UINT32_MAX
  std::size_t count = 0;
};
Renumbering renumber(const std::vector<bool>& keep);

/// States as vertices; edges leaving accepting states carry mark 1.
Graph buchi_graph(const Nba& a);

/// Nba over the states kept by `keep`; Nba::empty() when the initial state
/// is dropped.
Nba restrict_to(const Nba& a, const std::vector<bool>& keep);

/// Whether L(a) contains two different words.
bool has_two_words(const Nba& a);

}  // namespace contset::detail
