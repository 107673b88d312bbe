// Serial reference against the OpenMP kernels.
#include "p7col/engine.hpp"
#include "p7col/recognition.hpp"
#include "p7col/testkit.hpp"

#include <benchmark/benchmark.h>

#include <map>

namespace {

using namespace p7col;

struct Fixture {
    Graph graph;
    std::vector<ColourMask> lists;
};

const std::vector<Fixture>& skeleton_instances(int n) {
    static std::map<int, std::vector<Fixture>> cache;
    auto& out = cache[n];
    if (out.empty())
        for (std::uint64_t seed = 0; seed < 32; ++seed) {
            GenSpec spec;
            spec.kind = GenKind::SkeletonBuilt;
            spec.seed = seed;
            spec.n = n;
            Rng rng(seed);
            auto gen = generate(spec);
            out.push_back({std::move(gen.graph), random_lists(n, rng)});
        }
    return out;
}

void run_solver(benchmark::State& state, bool reference) {
    const auto& instances = skeleton_instances(static_cast<int>(state.range(0)));
    SolveOptions options;
    options.reference_kernel = reference;
    options.threads = static_cast<int>(state.range(1));
    for (auto _ : state)
        for (const auto& f : instances) benchmark::DoNotOptimize(solve(f.graph, f.lists, options));
}

void BM_BranchSearchReference(benchmark::State& state) { run_solver(state, true); }
void BM_BranchSearchKernel(benchmark::State& state) { run_solver(state, false); }

BENCHMARK(BM_BranchSearchReference)->Args({30, 1})->Args({60, 1})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BranchSearchKernel)->Args({30, 1})->Args({60, 1})->Args({60, 4})->Unit(benchmark::kMillisecond);

const Graph& c8_blowup() {
    static const Graph g = [] {
        std::vector<Edge> edges;
        const int k = 40;
        for (int i = 0; i < 8; ++i)
            for (int a = 0; a < k; ++a)
                for (int b = 0; b < k; ++b) {
                    const int u = i * k + a, v = ((i + 1) % 8) * k + b;
                    edges.emplace_back(std::min(u, v), std::max(u, v));
                }
        return Graph::build(8 * k, edges);
    }();
    return g;
}

void BM_InducedP7Reference(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(find_induced_p7_reference(c8_blowup()));
}

void BM_InducedP7Kernel(benchmark::State& state) {
    const int threads = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(find_induced_p7(c8_blowup(), threads));
}

BENCHMARK(BM_InducedP7Reference)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_InducedP7Kernel)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_TriangleFreeCheck(benchmark::State& state) {
    GenSpec spec{GenKind::BlownupC5, 7, static_cast<int>(state.range(0))};
    const Graph g = generate(spec).graph;
    const int threads = static_cast<int>(state.range(1));
    for (auto _ : state) benchmark::DoNotOptimize(find_triangle(g, threads));
}

BENCHMARK(BM_TriangleFreeCheck)->Args({2000, 1})->Args({2000, 4})->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
