#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

#include "cqd/domain.hpp"
#include "cqd/errors.hpp"
#include "cqd/policy.hpp"
#include "cqd/population.hpp"
#include "cqd/variation.hpp"

namespace cqd {

struct Fi2PopConfig {
    int generations = 50;
    /// Offspring per population per generation.
    std::size_t offspring_per_generation = 10;
    VariationConfig variation;
    std::size_t population_capacity = 20;
    /// Genomes sampled up front to seed both populations.
    std::size_t initial_samples = 40;
    /// Hard cap on initial sampling while a population is still empty.
    std::size_t init_budget = 1000;
};

/// Throws ConfigError naming the offending field.
void validate(const Fi2PopConfig& cfg);

/// Mutable state of one FI-2Pop run.
template <typename Genome>
struct Fi2PopState {
    Population<Genome> feasible;
    Population<Genome> infeasible;
    IdSource ids;
    int generation = 0;
    double elite_feasible_fitness = 0.0;
    bool has_elite = false;

    explicit Fi2PopState(std::size_t capacity)
        : feasible(Kind::Feasible, capacity), infeasible(Kind::Infeasible, capacity) {}

    Population<Genome>& population_for(const Solution<Genome>& s) {
        return s.is_feasible() ? feasible : infeasible;
    }
};

/// Adds solutions to the population matching their feasibility, without truncating.
template <typename Genome>
void route_offspring(Fi2PopState<Genome>& state, std::vector<Solution<Genome>> children) {
    for (auto& c : children) state.population_for(c).add(std::move(c));
}

/// Seeds both populations from one random sample stream.
template <Domain D>
void initialize(Fi2PopState<typename D::Genome>& state, const D& domain, const InfeasibleFitnessPolicy& policy,
                const Fi2PopConfig& cfg, Rng& rng) {
    using Genome = typename D::Genome;
    std::size_t drawn = 0;
    auto draw = [&](std::size_t n) {
        std::vector<Genome> genomes;
        genomes.reserve(n);
        for (std::size_t i = 0; i < n; ++i) genomes.push_back(domain.random_genome(rng));
        drawn += n;
        route_offspring(state, evaluate_genomes(domain, std::move(genomes), policy, state.ids, 0));
    };
    draw(std::min(cfg.initial_samples, cfg.init_budget));
    while ((state.feasible.empty() || state.infeasible.empty()) && drawn < cfg.init_budget) draw(1);
    if (state.feasible.empty() && state.infeasible.empty())
        throw InitFailure("initial sampling produced no solutions");
    state.feasible.truncate();
    state.infeasible.truncate();
}

/// One generation: separate selection and breeding per population, routing
/// of every child by its own feasibility, then truncation of both.
template <Domain D>
std::vector<OffspringEvent> step_generation(Fi2PopState<typename D::Genome>& state, const D& domain,
                                            const InfeasibleFitnessPolicy& policy, const Fi2PopConfig& cfg,
                                            Rng& rng) {
    using Genome = typename D::Genome;
    if (state.feasible.empty() && state.infeasible.empty())
        throw EmptyRun("both populations are empty");
    ++state.generation;

    std::vector<OffspringEvent> events;
    std::vector<Solution<Genome>> children;
    for (Population<Genome>* pop : {&state.feasible, &state.infeasible}) {
        if (pop->empty()) continue;
        auto parents = select_parents(*pop, cfg.offspring_per_generation, rng);
        auto kids = breed(parents, domain, policy, cfg.variation, state.ids, state.generation, rng, events);
        std::move(kids.begin(), kids.end(), std::back_inserter(children));
    }
    route_offspring(state, std::move(children));
    state.feasible.truncate();
    state.infeasible.truncate();
    return events;
}

template <typename Genome>
GenerationRecord make_record(Fi2PopState<Genome>& state) {
    if (const auto* best = state.feasible.best()) {
        if (!state.has_elite || best->fitness > state.elite_feasible_fitness) {
            state.elite_feasible_fitness = best->fitness;
            state.has_elite = true;
        }
    }
    GenerationRecord r;
    r.generation = state.generation;
    r.elite_feasible_fitness = state.elite_feasible_fitness;
    r.avg_feasible_fitness = state.feasible.mean_fitness();
    const auto* best_infeasible = state.infeasible.best();
    r.elite_infeasible_fitness = best_infeasible ? best_infeasible->fitness : 0.0;
    r.avg_infeasible_fitness = state.infeasible.mean_fitness();
    r.feasible_size = state.feasible.size();
    r.infeasible_size = state.infeasible.size();
    return r;
}

/// Full FI-2Pop run; one record per generation.
template <Domain D>
std::vector<GenerationRecord> run_fi2pop(const D& domain, InfeasibleFitnessPolicy& policy, const Fi2PopConfig& cfg,
                                         Rng& rng, Fi2PopState<typename D::Genome>* final_state = nullptr) {
    validate(cfg);
    Fi2PopState<typename D::Genome> state(cfg.population_capacity);
    initialize(state, domain, policy, cfg, rng);
    make_record(state);

    std::vector<GenerationRecord> history;
    history.reserve(static_cast<std::size_t>(cfg.generations));
    for (int g = 0; g < cfg.generations; ++g) {
        auto events = step_generation(state, domain, policy, cfg, rng);
        policy.observe(events);
        if (policy.update()) rescore_infeasible(state.infeasible, policy);
        history.push_back(make_record(state));
    }
    if (final_state) *final_state = std::move(state);
    return history;
}

}  // namespace cqd
