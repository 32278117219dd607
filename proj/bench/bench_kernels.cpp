// Serial reference vs OpenMP kernels.

#include <benchmark/benchmark.h>

#include "cqd/config.hpp"
#include "cqd/experiment.hpp"
#include "cqd/kernels.hpp"
#include "cqd/surrogate.hpp"
#include "cqd/voxel.hpp"

using namespace cqd;

namespace {

std::vector<voxel::VoxelGenome> genomes(std::size_t n) {
    voxel::VoxelDomain d;
    Rng rng(1);
    std::vector<voxel::VoxelGenome> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(d.random_genome(rng));
    return out;
}

std::vector<std::vector<double>> rows(std::size_t n) {
    Rng rng(2);
    std::vector<std::vector<double>> out(n, std::vector<double>(voxel::kFeatureDim));
    for (auto& r : out)
        for (auto& x : r) x = rng.uniform();
    return out;
}

void BM_EvaluateSerial(benchmark::State& state) {
    voxel::VoxelDomain d;
    const auto g = genomes(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(evaluate_batch_serial(d, std::span<const voxel::VoxelGenome>(g)));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_EvaluateOpenMP(benchmark::State& state) {
    voxel::VoxelDomain d;
    const auto g = genomes(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(evaluate_batch(d, std::span<const voxel::VoxelGenome>(g), 0));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_PredictSerial(benchmark::State& state) {
    SurrogateModel m(voxel::kFeatureDim, 3);
    const auto r = rows(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(m.predict_batch_serial(r));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_PredictOpenMP(benchmark::State& state) {
    SurrogateModel m(voxel::kFeatureDim, 3);
    const auto r = rows(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(m.predict_batch(r));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_Seeds(benchmark::State& state, Parallelism mode) {
    auto cfg = default_config();
    cfg.methods = {method_by_name("Mu-FI2Pop"), method_by_name("EB-CMAPElites")};
    cfg.seeds = sequential_seeds(0, 8);
    cfg.generations = 20;
    for (auto _ : state) benchmark::DoNotOptimize(execute(cfg, mode));
}

}  // namespace

BENCHMARK(BM_EvaluateSerial)->Arg(64)->Arg(1024);
BENCHMARK(BM_EvaluateOpenMP)->Arg(64)->Arg(1024);
BENCHMARK(BM_PredictSerial)->Arg(256)->Arg(4096);
BENCHMARK(BM_PredictOpenMP)->Arg(256)->Arg(4096);
BENCHMARK_CAPTURE(BM_Seeds, serial, Parallelism::Serial)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Seeds, openmp, Parallelism::OpenMP)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
