#pragma once

#include <concepts>
#include <cstddef>
#include <utility>

#include "cqd/rng.hpp"
#include "cqd/solution.hpp"

namespace cqd {

/// Problem domain contract consumed by the FI-2Pop and CMAP-Elites loops.
/// Evaluation must be a pure function of the genome so batches can be
/// evaluated concurrently.
template <typename D>
concept Domain = requires(const D& d, const typename D::Genome& g, Rng& rng, double rate) {
    typename D::Genome;
    { d.random_genome(rng) } -> std::same_as<typename D::Genome>;
    { d.evaluate_genome(g) } -> std::same_as<Evaluation>;
    { d.crossover(g, g, rng) } -> std::same_as<std::pair<typename D::Genome, typename D::Genome>>;
    { d.mutate(g, rate, rng) } -> std::same_as<typename D::Genome>;
    { d.feature_dim() } -> std::convertible_to<std::size_t>;
};

/// Builds a solution from a genome. Infeasible solutions get fitness 0 here;
/// the caller applies its infeasible-fitness policy.
template <Domain D>
Solution<typename D::Genome> evaluate(const typename D::Genome& genome, const D& domain) {
    Evaluation e = domain.evaluate_genome(genome);
    Solution<typename D::Genome> s;
    s.genome = genome;
    s.feasibility = Feasibility::from_violations(e.violations);
    s.fitness = s.feasibility.is_feasible() ? e.feasible_fitness : 0.0;
    s.behavior = e.behavior;
    s.features = std::move(e.features);
    return s;
}

}  // namespace cqd
