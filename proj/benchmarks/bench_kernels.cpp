#include <benchmark/benchmark.h>

#include "homcone/factor.hpp"
#include "homcone/ipm.hpp"
#include "homcone/pattern.hpp"
#include "homcone/rng.hpp"
#include "homcone/scaling.hpp"

namespace {

using namespace homcone;

StructurePtr structure(int n, double branching = 0.99)
{
    RandomPattern rp = random_homogeneous_pattern(n, 42, branching);
    return SymbolicStructure::create(rp.pattern, rp.ordering);
}

SymSparse primal(const StructurePtr& s)
{
    Rng rng(7);
    LowerSparse l(s);
    for (int k = 0; k < s->size(); ++k) {
        auto col = l.column(k);
        col[0] = rng.uniform(0.5, 1.5);
        for (std::size_t t = 1; t < col.size(); ++t) {
            col[t] = 0.3 * rng.normal();
        }
    }
    return forward_map(l, SymSparse::identity(s));
}

void set_counters(benchmark::State& state, std::size_t elements)
{
    state.counters["elements"] = static_cast<double>(elements);
    state.counters["ns_per_element"] = benchmark::Counter(
        static_cast<double>(elements), benchmark::Counter::kIsIterationInvariantRate | benchmark::Counter::kInvert);
}

void BM_LbfsOrder(benchmark::State& state)
{
    RandomPattern rp = random_homogeneous_pattern(static_cast<int>(state.range(0)), 42, 0.99);
    for (auto _ : state) {
        benchmark::DoNotOptimize(lbfs_order(rp.pattern));
    }
    set_counters(state, rp.pattern.size() + rp.pattern.num_edges());
}
BENCHMARK(BM_LbfsOrder)->RangeMultiplier(10)->Range(1000, 1000000)->Unit(benchmark::kMicrosecond);

void BM_Cholesky(benchmark::State& state)
{
    StructurePtr s = structure(static_cast<int>(state.range(0)));
    SymSparse x = primal(s);
    FrontalWorkspace ws(*s);
    for (auto _ : state) {
        benchmark::DoNotOptimize(cholesky(x, ws));
    }
    set_counters(state, s->nnz());
}
BENCHMARK(BM_Cholesky)->RangeMultiplier(10)->Range(1000, 100000)->Unit(benchmark::kMicrosecond);

void BM_ProjectedInverse(benchmark::State& state)
{
    StructurePtr s = structure(static_cast<int>(state.range(0)));
    CholFactor f = cholesky(primal(s));
    for (auto _ : state) {
        benchmark::DoNotOptimize(projected_inverse(f));
    }
    set_counters(state, s->nnz());
}
BENCHMARK(BM_ProjectedInverse)->RangeMultiplier(10)->Range(1000, 100000)->Unit(benchmark::kMicrosecond);

void BM_MaxDetFactor(benchmark::State& state)
{
    StructurePtr s = structure(static_cast<int>(state.range(0)));
    SymSparse sd = primal(s);
    for (auto _ : state) {
        benchmark::DoNotOptimize(maxdet_factor(sd));
    }
    set_counters(state, s->nnz());
}
BENCHMARK(BM_MaxDetFactor)->RangeMultiplier(10)->Range(1000, 100000)->Unit(benchmark::kMicrosecond);

void BM_ScalingPoint(benchmark::State& state)
{
    StructurePtr s = structure(static_cast<int>(state.range(0)));
    SymSparse x = primal(s);
    SymSparse sd = SymSparse::identity(s);
    for (auto _ : state) {
        benchmark::DoNotOptimize(scaling_point(x, sd));
    }
    set_counters(state, s->nnz());
}
BENCHMARK(BM_ScalingPoint)->Arg(30)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_SolveCertified(benchmark::State& state)
{
    StructurePtr s = structure(static_cast<int>(state.range(0)), 0.9);
    CertifiedProblem cp = random_certified_problem(s, static_cast<int>(state.range(1)), 3);
    for (auto _ : state) {
        benchmark::DoNotOptimize(solve(cp.problem));
    }
}
BENCHMARK(BM_SolveCertified)->Args({30, 10})->Args({100, 20})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
