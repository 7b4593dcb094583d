#include <benchmark/benchmark.h>

#include "contset/complement.hpp"
#include "contset/constructions.hpp"
#include "contset/continuity.hpp"
#include "contset/pcp.hpp"
#include "support.hpp"

using namespace contset;
using namespace contset::testing;

namespace {

// Fixed corpora so runs are comparable.
std::vector<Nba> nba_corpus(std::size_t states) {
  Rng rng(static_cast<unsigned>(states));
  std::vector<Nba> out;
  for (int i = 0; i < 16; ++i) out.push_back(random_nba(rng, states));
  return out;
}

void complement_with(benchmark::State& state, ComplementMethod method) {
  const auto corpus = nba_corpus(static_cast<std::size_t>(state.range(0)));
  std::vector<const Nba*> usable;
  for (const auto& a : corpus)
    if (complement_applies(a, method)) usable.push_back(&a);
  std::size_t states = 0;
  for (auto _ : state)
    for (const Nba* a : usable) states += complement(*a, method).num_states();
  state.counters["inputs"] = static_cast<double>(usable.size());
  state.counters["states/input"] =
      benchmark::Counter(static_cast<double>(states) / static_cast<double>(usable.size()),
                         benchmark::Counter::kAvgIterations);
}

void BM_complement_automatic(benchmark::State& s) { complement_with(s, ComplementMethod::automatic); }
void BM_complement_rank_based(benchmark::State& s) { complement_with(s, ComplementMethod::rank_based); }
void BM_complement_determinization(benchmark::State& s) {
  complement_with(s, ComplementMethod::determinization);
}
void BM_complement_deterministic_components(benchmark::State& s) {
  complement_with(s, ComplementMethod::deterministic_components);
}

BENCHMARK(BM_complement_automatic)->DenseRange(2, 5)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_complement_rank_based)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_complement_determinization)->DenseRange(2, 5)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_complement_deterministic_components)->DenseRange(2, 5)->Unit(benchmark::kMillisecond);

// Second dense part of a three-state Muller language: many table entries
// in one component, where subset-based complementation explodes.
void BM_complement_dense_part(benchmark::State& state) {
  const DetMuller m(ab(), 3, 0, {{0, 0, 2}, {0, 1, 0}, {1, 1, 2}, {2, 0, 1}, {2, 1, 0}},
                    {{0, 1, 2}});
  const Nba part = to_nba(dense_partition(m).second);
  std::size_t states = 0;
  for (auto _ : state) states = complement(part).num_states();
  state.counters["input"] = static_cast<double>(part.num_states());
  state.counters["output"] = static_cast<double>(states);
}
BENCHMARK(BM_complement_dense_part)->Unit(benchmark::kMillisecond);

void BM_pi2_round_trip(benchmark::State& state) {
  Rng rng(3);
  std::vector<Dba> corpus;
  while (corpus.size() < 16) {
    Dba a(trim(random_dba(rng, static_cast<std::size_t>(state.range(0))).nba()));
    if (a.num_states() > 0) corpus.push_back(a);
  }
  for (auto _ : state)
    for (const auto& a : corpus) {
      auto t = pi2_witness(a, 1);
      benchmark::DoNotOptimize(is_equivalent(continuity_set(t), a.nba()).holds);
    }
}
BENCHMARK(BM_pi2_round_trip)->DenseRange(2, 5)->Unit(benchmark::kMillisecond);

void BM_continuity_set(benchmark::State& state) {
  Rng rng(9);
  std::vector<SyncTransducer> corpus;
  while (corpus.size() < 16) {
    auto t = random_split_sync(rng, static_cast<std::size_t>(state.range(0)));
    corpus.push_back(t);
  }
  for (auto _ : state)
    for (const auto& t : corpus) benchmark::DoNotOptimize(continuity_set(t).num_states());
}
BENCHMARK(BM_continuity_set)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

void BM_dense_partition(benchmark::State& state) {
  Rng rng(74);
  std::vector<DetMuller> corpus;
  while (corpus.size() < 8) {
    auto m = trim(random_muller(rng, static_cast<std::size_t>(state.range(0))));
    if (!is_empty(to_nba(m)) && is_empty(isolated_points(m))) corpus.push_back(m);
  }
  for (auto _ : state)
    for (const auto& m : corpus) benchmark::DoNotOptimize(dense_partition(m).first.num_states());
}
BENCHMARK(BM_dense_partition)->DenseRange(1, 4)->Unit(benchmark::kMillisecond);

void BM_witness_on_domain(benchmark::State& state) {
  Rng rng(4321);
  std::vector<std::pair<DetMuller, Dba>> corpus;
  while (corpus.size() < 8) {
    auto d = random_muller(rng, 3);
    auto xp = random_trim_dba(rng, 3);
    if (is_included(isolated_points(d), intersect(xp.nba(), to_nba(d)))) corpus.emplace_back(d, xp);
  }
  for (auto _ : state)
    for (const auto& [d, xp] : corpus) benchmark::DoNotOptimize(witness_on_domain(d, xp).num_states());
}
BENCHMARK(BM_witness_on_domain)->Unit(benchmark::kMillisecond);

void BM_pcp_solve(benchmark::State& state) {
  const auto inst = pcp_one();
  for (auto _ : state)
    benchmark::DoNotOptimize(pcp_solve_bounded(inst, static_cast<std::size_t>(state.range(0))).size());
}
BENCHMARK(BM_pcp_solve)->DenseRange(6, 12, 2)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
