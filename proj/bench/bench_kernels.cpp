// Serial reference kernels against their OpenMP versions on the workloads the
// checks actually run.

#include <benchmark/benchmark.h>

#include "padyn/kernels.hpp"
#include "padyn/sl2.hpp"

namespace {

using namespace padyn;

GlobalConfig level(int m, int n) {
  GlobalConfig cfg;
  cfg.matrix_level_m  = m;
  cfg.residue_level_n = n;
  return cfg;
}

// Witness-path star_B table of J at level n.
template <bool Parallel>
void BM_BuildTable(benchmark::State& state) {
  auto const cfg = level(1, static_cast<int>(state.range(0)));
  auto const L   = ScaleLadder::standard(cfg);
  auto const G   = ResidueGroup::build(cfg.prime, cfg.residue_level_n);
  auto       mul = [&](int i, int j) {
    return G.index_of(star_B({G.element(i)}, {G.element(j)}, L).a_class);
  };
  for (auto _ : state) {
    if constexpr (Parallel) {
      benchmark::DoNotOptimize(kernels::parallel::build_table(G.order(), mul));
    } else {
      benchmark::DoNotOptimize(kernels::serial::build_table(G.order(), mul));
    }
  }
}

template <bool Parallel>
void BM_Associative(benchmark::State& state) {
  auto const G = ResidueGroup::build(5, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    if constexpr (Parallel) {
      benchmark::DoNotOptimize(kernels::parallel::associative(G.table(), G.order()));
    } else {
      benchmark::DoNotOptimize(kernels::serial::associative(G.table(), G.order()));
    }
  }
  state.SetItemsProcessed(state.iterations() * G.order() * G.order() * G.order());
}

// Generator action on the K_m x J_n flow.
template <bool Parallel>
void BM_BuildTransitions(benchmark::State& state) {
  GFlow const F(level(static_cast<int>(state.range(0)), 2));
  auto const& gens = F.generators();
  auto        step = [&](std::size_t s, std::size_t g) {
    return static_cast<int>(F.index_of(F.act_symbolic(gens[g], F.point(s))));
  };
  for (auto _ : state) {
    if constexpr (Parallel) {
      benchmark::DoNotOptimize(kernels::parallel::build_transitions(F.size(), gens.size(), step));
    } else {
      benchmark::DoNotOptimize(kernels::serial::build_transitions(F.size(), gens.size(), step));
    }
  }
  state.SetItemsProcessed(state.iterations() * F.size() * gens.size());
}

// Witness star_G against the symbolic product on the first range(0) pairs.
template <bool Parallel>
void BM_CountFailures(benchmark::State& state) {
  GFlow const F(level(1, 2));
  auto const  L = ScaleLadder::from_rungs({11, 26, 56, 116}, 2, 2);
  auto const  n = F.size();
  auto        pred = [&](std::uint64_t i) {
    return F.star_witness(F.point(i / n), F.point(i % n), L) == F.star_symbolic(F.point(i / n), F.point(i % n));
  };
  auto const count = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) {
    if constexpr (Parallel) {
      benchmark::DoNotOptimize(kernels::parallel::count_failures(count, pred));
    } else {
      benchmark::DoNotOptimize(kernels::serial::count_failures(count, pred));
    }
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(count));
}

}  // namespace

BENCHMARK(BM_BuildTable<false>)->Name("build_table/serial")->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BuildTable<true>)->Name("build_table/parallel")->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Associative<false>)->Name("associative/serial")->Arg(4)->Arg(12);
BENCHMARK(BM_Associative<true>)->Name("associative/parallel")->Arg(4)->Arg(12);
BENCHMARK(BM_BuildTransitions<false>)->Name("build_transitions/serial")->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BuildTransitions<true>)->Name("build_transitions/parallel")->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CountFailures<false>)->Name("count_failures/serial")->Arg(4096)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CountFailures<true>)->Name("count_failures/parallel")->Arg(4096)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
