// Neighbour-search backends against the serial reference scan.
#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "tnvs/codec.hpp"
#include "tnvs/conditioning_index.hpp"
#include "tnvs/neighbors.hpp"

using namespace tnvs;

namespace {

std::vector<std::vector<double>> columns(std::size_t n, std::size_t dim, std::uint64_t seed = 1) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> d;
    std::vector<std::vector<double>> c(dim, std::vector<double>(n));
    for (auto& col : c)
        for (auto& v : col) v = d(rng);
    return c;
}

PointCloud cloud(const std::vector<std::vector<double>>& c) {
    std::vector<std::span<const double>> spans(c.begin(), c.end());
    return PointCloud::from_columns(spans);
}

void BM_Reference(benchmark::State& st) {
    const auto pc = cloud(columns(st.range(0), st.range(1)));
    for (auto _ : st) benchmark::DoNotOptimize(nearest_neighbors_reference(pc, NeighborStream(3)));
}

void backend(benchmark::State& st, NeighborBackend b) {
    const auto pc = cloud(columns(st.range(0), st.range(1)));
    for (auto _ : st) benchmark::DoNotOptimize(nearest_neighbors(pc, NeighborStream(3), b));
}

void BM_Exhaustive(benchmark::State& st) { backend(st, NeighborBackend::Exhaustive); }
void BM_KdTree(benchmark::State& st) { backend(st, NeighborBackend::KdTree); }
void BM_Sorted1D(benchmark::State& st) { backend(st, NeighborBackend::Sorted1D); }

// One joint query against a conditioning set of range(1) columns, the way a
// selection step scores a single candidate.
void BM_IndexJointQuery(benchmark::State& st) {
    const auto c = columns(st.range(0), st.range(1) + 1);
    ConditioningIndex index(st.range(0));
    for (std::size_t k = 0; k + 1 < c.size(); ++k) index.append(c[k]);
    for (auto _ : st) benchmark::DoNotOptimize(index.joint_neighbors(c.back(), NeighborStream(3)));
}

void BM_KdTreeJointQuery(benchmark::State& st) {
    const auto c = columns(st.range(0), st.range(1) + 1);
    for (auto _ : st) benchmark::DoNotOptimize(nearest_neighbors(cloud(c), NeighborStream(3), NeighborBackend::KdTree));
}

void BM_CodecConditional(benchmark::State& st) {
    const auto c = columns(st.range(0), 4);
    const std::span<const double> given[] = {c[1], c[2]};
    for (auto _ : st) benchmark::DoNotOptimize(codec_conditional(c[0], c[3], given, TieStream(1)));
}

}  // namespace

BENCHMARK(BM_Reference)->Args({1000, 1})->Args({1000, 3})->Args({2000, 3})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Exhaustive)->Args({1000, 1})->Args({1000, 3})->Args({2000, 3})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_KdTree)->Args({1000, 1})->Args({1000, 3})->Args({2000, 3})->Args({2000, 8})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Sorted1D)->Args({1000, 1})->Args({2000, 1})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_IndexJointQuery)->Args({2000, 1})->Args({2000, 4})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_KdTreeJointQuery)->Args({2000, 1})->Args({2000, 4})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CodecConditional)->Arg(1000)->Arg(2000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
