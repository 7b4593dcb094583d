#include "graph.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <tuple>

namespace contset::detail {

namespace {
constexpr State kNone = std::numeric_limits<State>::max();
}

void Graph::finalize() const {
  if (finalized_) return;
  std::sort(edges_.begin(), edges_.end(), [](const Edge& a, const Edge& b) {
    return std::tie(a.src, a.label, a.dst, a.marks) <
           std::tie(b.src, b.label, b.dst, b.marks);
  });
  offsets_.assign(n_ + 1, 0);
  for (const auto& e : edges_) ++offsets_[e.src + 1];
  for (std::size_t i = 0; i < n_; ++i) offsets_[i + 1] += offsets_[i];
  finalized_ = true;
}

std::span<const Edge> Graph::out(State v) const {
  finalize();
  return {edges_.data() + offsets_[v], edges_.data() + offsets_[v + 1]};
}

std::span<const Edge> Graph::edges() const {
  finalize();
  return edges_;
}

Sccs strongly_connected(const Graph& g, const std::vector<bool>& allowed) {
  const std::size_t n = g.size();
  auto ok = [&](State v) { return allowed.empty() || allowed[v]; };
  Sccs result;
  result.component.assign(n, Sccs::npos);
  std::vector<std::uint32_t> index(n, Sccs::npos), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<State> stack;
  struct Frame {
    State v;
    std::size_t next;
  };
  std::vector<Frame> call;
  std::uint32_t counter = 0;

  for (State root = 0; root < n; ++root) {
    if (!ok(root) || index[root] != Sccs::npos) continue;
    call.push_back({root, 0});
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!call.empty()) {
      Frame& f = call.back();
      auto succ = g.out(f.v);
      if (f.next < succ.size()) {
        State w = succ[f.next++].dst;
        if (!ok(w)) continue;
        if (index[w] == Sccs::npos) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], index[w]);
        }
        continue;
      }
      State v = f.v;
      call.pop_back();
      if (!call.empty()) {
        State parent = call.back().v;
        low[parent] = std::min(low[parent], low[v]);
      }
      if (low[v] == index[v]) {
        State w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          result.component[w] = static_cast<std::uint32_t>(result.count);
        } while (w != v);
        ++result.count;
      }
    }
  }
  return result;
}

std::vector<bool> reachable_from(const Graph& g, std::span<const State> roots) {
  std::vector<bool> seen(g.size(), false);
  std::vector<State> todo;
  for (State r : roots) {
    if (!seen[r]) {
      seen[r] = true;
      todo.push_back(r);
    }
  }
  while (!todo.empty()) {
    State v = todo.back();
    todo.pop_back();
    for (const auto& e : g.out(v)) {
      if (!seen[e.dst]) {
        seen[e.dst] = true;
        todo.push_back(e.dst);
      }
    }
  }
  return seen;
}

Word Lasso::stem_labels() const {
  Word w;
  for (const auto& e : stem) w.push_back(e.label);
  return w;
}

Word Lasso::cycle_labels() const {
  Word w;
  for (const auto& e : cycle) w.push_back(e.label);
  return w;
}

namespace {

struct GoodComponents {
  Sccs sccs;
  std::vector<bool> good;  // per component
};

GoodComponents good_components(const Graph& g, const std::vector<bool>& allowed,
                               Marks required) {
  GoodComponents out;
  out.sccs = strongly_connected(g, allowed);
  std::vector<Marks> marks(out.sccs.count, 0);
  std::vector<bool> has_edge(out.sccs.count, false);
  for (const auto& e : g.edges()) {
    auto c = out.sccs.component[e.src];
    if (c == Sccs::npos || c != out.sccs.component[e.dst]) continue;
    has_edge[c] = true;
    marks[c] |= e.marks;
  }
  out.good.assign(out.sccs.count, false);
  for (std::size_t c = 0; c < out.sccs.count; ++c)
    out.good[c] = has_edge[c] && (marks[c] & required) == required;
  return out;
}

}  // namespace

std::optional<Lasso> find_accepting_lasso(
    const Graph& g, State root, Marks required,
    const std::function<bool(State)>& cycle_ok) {
  const std::size_t n = g.size();
  std::vector<std::uint32_t> dist(n, kNone);
  std::vector<const Edge*> parent(n, nullptr);
  std::deque<State> queue{root};
  dist[root] = 0;
  while (!queue.empty()) {
    State v = queue.front();
    queue.pop_front();
    for (const auto& e : g.out(v)) {
      if (dist[e.dst] == kNone) {
        dist[e.dst] = dist[v] + 1;
        parent[e.dst] = &e;
        queue.push_back(e.dst);
      }
    }
  }
  std::vector<bool> allowed(n, false);
  for (State v = 0; v < n; ++v)
    allowed[v] = dist[v] != kNone && (!cycle_ok || cycle_ok(v));
  auto gc = good_components(g, allowed, required);

  // Pick the start vertex: source of an internal edge carrying the lowest
  // required mark, nearest to the root.
  const Marks first_mark = required == 0 ? 0 : (required & (~required + 1));
  State start = kNone;
  for (const auto& e : g.edges()) {
    auto c = gc.sccs.component[e.src];
    if (c == Sccs::npos || c != gc.sccs.component[e.dst] || !gc.good[c]) continue;
    if (first_mark != 0 && !(e.marks & first_mark)) continue;
    if (start == kNone || std::tie(dist[e.src], e.src) < std::tie(dist[start], start))
      start = e.src;
  }
  if (start == kNone) return std::nullopt;

  Lasso lasso;
  for (State v = start; v != root;) {
    const Edge* e = parent[v];
    lasso.stem.push_back(*e);
    v = e->src;
  }
  std::reverse(lasso.stem.begin(), lasso.stem.end());

  // Shortest cycle through start collecting every required mark, by BFS
  // over (vertex, collected marks).
  const auto comp = gc.sccs.component[start];
  const std::size_t width = static_cast<std::size_t>(required) + 1;
  auto code = [&](State v, Marks m) { return static_cast<std::size_t>(v) * width + m; };
  std::vector<std::uint32_t> seen(n * width, kNone);
  std::vector<const Edge*> via(n * width, nullptr);
  std::deque<std::pair<State, Marks>> bfs;
  std::optional<std::size_t> goal;
  auto visit = [&](const Edge& e, Marks m, std::size_t from) {
    Marks nm = m | (e.marks & required);
    std::size_t c = code(e.dst, nm);
    if (seen[c] != kNone) return false;
    seen[c] = static_cast<std::uint32_t>(from);
    via[c] = &e;
    if (e.dst == start && nm == required) {
      goal = c;
      return true;
    }
    bfs.emplace_back(e.dst, nm);
    return false;
  };
  const std::size_t origin = n * width;  // sentinel for "start, nothing yet"
  for (const auto& e : g.out(start)) {
    if (gc.sccs.component[e.dst] != comp) continue;
    if (visit(e, 0, origin)) break;
  }
  while (!goal && !bfs.empty()) {
    auto [v, m] = bfs.front();
    bfs.pop_front();
    for (const auto& e : g.out(v)) {
      if (gc.sccs.component[e.dst] != comp) continue;
      if (visit(e, m, code(v, m))) break;
    }
  }
  for (std::size_t c = *goal; c != origin; c = seen[c]) lasso.cycle.push_back(*via[c]);
  std::reverse(lasso.cycle.begin(), lasso.cycle.end());
  return lasso;
}

std::vector<bool> live_vertices(const Graph& g, State root, Marks required) {
  const std::size_t n = g.size();
  std::vector<State> roots{root};
  auto reach = reachable_from(g, roots);
  auto gc = good_components(g, reach, required);
  // Backward search from good components.
  std::vector<std::vector<State>> preds(n);
  for (const auto& e : g.edges())
    if (reach[e.src] && reach[e.dst]) preds[e.dst].push_back(e.src);
  std::vector<bool> live(n, false);
  std::vector<State> todo;
  for (State v = 0; v < n; ++v) {
    auto c = gc.sccs.component[v];
    if (c != Sccs::npos && gc.good[c]) {
      live[v] = true;
      todo.push_back(v);
    }
  }
  while (!todo.empty()) {
    State v = todo.back();
    todo.pop_back();
    for (State p : preds[v]) {
      if (!live[p]) {
        live[p] = true;
        todo.push_back(p);
      }
    }
  }
  return live;
}

Renumbering renumber(const std::vector<bool>& keep) {
  Renumbering r;
  r.map.assign(keep.size(), kNone);
  for (std::size_t i = 0; i < keep.size(); ++i)
    if (keep[i]) r.map[i] = static_cast<State>(r.count++);
  return r;
}

}  // namespace contset::detail
