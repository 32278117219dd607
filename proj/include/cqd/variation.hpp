#pragma once

#include <cstddef>
#include <vector>

#include "cqd/domain.hpp"
#include "cqd/kernels.hpp"
#include "cqd/policy.hpp"
#include "cqd/population.hpp"

namespace cqd {

struct VariationConfig {
    double crossover_probability = 0.5;
    /// Per-gene rate handed to the domain's mutation operator.
    double mutation_probability = 0.1;
};

/// Fitness of an evaluated solution under a policy.
template <typename Genome>
double policy_fitness(const Solution<Genome>& s, const InfeasibleFitnessPolicy& policy) {
    if (s.is_feasible()) return s.fitness;
    return policy.infeasible_fitness(s.feasibility.violations(), s.features);
}

/// Evaluates fresh genomes and scores them; ids are drawn in input order.
template <Domain D>
std::vector<Solution<typename D::Genome>> evaluate_genomes(const D& domain,
                                                           std::vector<typename D::Genome> genomes,
                                                           const InfeasibleFitnessPolicy& policy,
                                                           IdSource& ids, int generation) {
    using Genome = typename D::Genome;
    auto evals = evaluate_batch(domain, std::span<const Genome>(genomes));
    std::vector<Solution<Genome>> out;
    out.reserve(genomes.size());
    for (std::size_t i = 0; i < genomes.size(); ++i) {
        Solution<Genome> s;
        s.id = ids.next();
        s.genome = std::move(genomes[i]);
        s.feasibility = Feasibility::from_violations(evals[i].violations);
        s.fitness = s.is_feasible() ? evals[i].feasible_fitness : 0.0;
        s.behavior = evals[i].behavior;
        s.features = std::move(evals[i].features);
        s.generation_born = generation;
        s.fitness = policy_fitness(s, policy);
        out.push_back(std::move(s));
    }
    return out;
}

/// Children of a parent list plus one event per (primary parent, child) edge.
///
/// Parents are paired in order (0,1), (2,3), ...; an odd tail is paired with
/// parent 0 and yields a single child. Child k's primary parent is parent k,
/// so every parent produces exactly one child.
template <Domain D>
std::vector<Solution<typename D::Genome>> breed(const std::vector<Solution<typename D::Genome>>& parents,
                                                const D& domain, const InfeasibleFitnessPolicy& policy,
                                                const VariationConfig& cfg, IdSource& ids, int generation,
                                                Rng& rng, std::vector<OffspringEvent>& events) {
    using Genome = typename D::Genome;
    const std::size_t n = parents.size();
    std::vector<Genome> genomes;
    genomes.reserve(n);
    std::vector<std::vector<SolutionId>> lineage;
    lineage.reserve(n);

    for (std::size_t k = 0; k < n; k += 2) {
        const bool has_mate = k + 1 < n;
        const auto& a = parents[k];
        const auto& b = parents[has_mate ? k + 1 : 0];
        Genome c1 = a.genome;
        Genome c2 = b.genome;
        if (rng.bernoulli(cfg.crossover_probability)) {
            auto [x, y] = domain.crossover(a.genome, b.genome, rng);
            c1 = std::move(x);
            c2 = std::move(y);
        }
        genomes.push_back(domain.mutate(c1, cfg.mutation_probability, rng));
        lineage.push_back({a.id, b.id});
        if (has_mate) {
            genomes.push_back(domain.mutate(c2, cfg.mutation_probability, rng));
            lineage.push_back({b.id, a.id});
        }
    }

    auto children = evaluate_genomes(domain, std::move(genomes), policy, ids, generation);
    for (std::size_t k = 0; k < n; ++k) {
        auto& child = children[k];
        child.parent_ids = std::move(lineage[k]);
        const auto& parent = parents[k];
        OffspringEvent ev;
        ev.parent_id = parent.id;
        ev.parent_feasible = parent.is_feasible();
        ev.parent_features = parent.features;
        ev.child_id = child.id;
        ev.child_feasible = child.is_feasible();
        ev.child_fitness = child.is_feasible() ? child.fitness : 0.0;
        events.push_back(std::move(ev));
    }
    return children;
}

/// Rescores every infeasible member under the current policy and re-sorts.
template <typename Genome>
void rescore_infeasible(Population<Genome>& pop, const InfeasibleFitnessPolicy& policy) {
    if (pop.kind() != Kind::Infeasible) return;
    for (auto& m : pop.members()) m.fitness = policy_fitness(m, policy);
    pop.resort();
}

}  // namespace cqd
