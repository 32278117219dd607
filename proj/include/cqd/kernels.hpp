#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "cqd/domain.hpp"

namespace cqd {

/// Batches below this size are evaluated on the calling thread.
inline constexpr std::size_t kParallelThreshold = 32;

/// Reference implementation: evaluates genomes in order on one thread.
template <Domain D>
std::vector<Evaluation> evaluate_batch_serial(const D& domain, std::span<const typename D::Genome> genomes) {
    std::vector<Evaluation> out;
    out.reserve(genomes.size());
    for (const auto& g : genomes) out.push_back(domain.evaluate_genome(g));
    return out;
}

/// OpenMP evaluation. Each slot is written by exactly one thread, so the
/// result is identical to evaluate_batch_serial.
template <Domain D>
std::vector<Evaluation> evaluate_batch(const D& domain, std::span<const typename D::Genome> genomes,
                                       std::size_t threshold = kParallelThreshold) {
    const auto n = static_cast<std::ptrdiff_t>(genomes.size());
    std::vector<Evaluation> out(genomes.size());
#pragma omp parallel for schedule(static) if (genomes.size() >= threshold)
    for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = domain.evaluate_genome(genomes[i]);
    return out;
}

}  // namespace cqd
