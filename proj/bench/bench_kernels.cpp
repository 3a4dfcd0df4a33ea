// Tabulated parallel operator against the serial reference, and parallel
// against serial Monte-Carlo ensembles.
//
//   ./build/bench/bench_kernels --benchmark_min_time=0.5

#include <benchmark/benchmark.h>

#include <memory>
#include <vector>

#include "smm/config.hpp"
#include "smm/core_operator.hpp"
#include "smm/mc_oracle.hpp"

using namespace smm;

namespace {

ExperimentConfig saturating() { return load_config(std::string(PRESET_DIR) + "/saturating.json"); }

struct OperatorCase {
    SemiMarkovKernel kernel;
    std::shared_ptr<const Grid> grid;
    Problem problem;
    std::vector<double> in, out;

    explicit OperatorCase(int n_t) : kernel(saturating().kernel()) {
        ExperimentConfig cfg = saturating();
        cfg.grid.n_t = n_t;
        grid = std::make_shared<const Grid>(cfg.make_grid());
        problem = Problem::terminal([](double p) { return p; });
        in.assign(grid->core_size(), 0.0);
        for (std::size_t node = 0; node < grid->nodes(); ++node)
            for (State i : kStates)
                for (int n = 0; n <= n_t; ++n) in[grid->core_index(n, node, i)] = grid->lattice().price(node);
        out.resize(in.size());
    }
};

void BM_CoreOperatorApply(benchmark::State& state) {
    OperatorCase c(static_cast<int>(state.range(0)));
    const CoreOperator op(c.kernel, c.grid, c.problem);
    for (auto _ : state) {
        op.apply(c.in, c.out);
        benchmark::DoNotOptimize(c.out.data());
    }
    state.counters["core_entries"] = static_cast<double>(c.in.size());
}

void BM_CoreOperatorReference(benchmark::State& state) {
    OperatorCase c(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        apply_reference(c.kernel, *c.grid, c.problem, c.in, c.out);
        benchmark::DoNotOptimize(c.out.data());
    }
    state.counters["core_entries"] = static_cast<double>(c.in.size());
}

void BM_Ensemble(benchmark::State& state, Execution mode) {
    const SemiMarkovKernel k = saturating().kernel();
    const StartPoint start{0.0, 100.0, State(2), 0.0};
    const auto n = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        const auto e = estimate_terminal_value(k, [](double p) { return p; }, nullptr, start, 1.0, n, 1, mode);
        benchmark::DoNotOptimize(e.mean);
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * n));
}

void BM_EnsembleParallel(benchmark::State& state) { BM_Ensemble(state, Execution::Parallel); }
void BM_EnsembleSerial(benchmark::State& state) { BM_Ensemble(state, Execution::Serial); }

}  // namespace

BENCHMARK(BM_CoreOperatorApply)->Arg(50)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CoreOperatorReference)->Arg(50)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EnsembleParallel)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EnsembleSerial)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
