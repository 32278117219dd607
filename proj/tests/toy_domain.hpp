#pragma once

#include <utility>

#include "cqd/domain.hpp"

// Integer genome with scripted feasibility: g <= 0 is feasible with fitness
// -g, g > 0 has g violations. Mutation adds `shift` when it fires.
struct ToyDomain {
    using Genome = int;
    int shift = 0;
    int start = 0;

    Genome random_genome(cqd::Rng& rng) const { return start + static_cast<int>(rng.uniform_index(1)); }
    cqd::Evaluation evaluate_genome(const Genome& g) const {
        cqd::Evaluation e;
        e.violations = g > 0 ? g : 0;
        e.feasible_fitness = g <= 0 ? static_cast<double>(-g) : 0.0;
        e.behavior = {1.0 + 0.1 * (g < 0 ? -g : g), 1.0};
        e.features = {static_cast<double>(g)};
        return e;
    }
    std::pair<Genome, Genome> crossover(const Genome& a, const Genome& b, cqd::Rng&) const { return {a, b}; }
    Genome mutate(const Genome& g, double rate, cqd::Rng&) const { return rate > 0.0 ? g + shift : g; }
    std::size_t feature_dim() const { return 1; }
};

static_assert(cqd::Domain<ToyDomain>);
