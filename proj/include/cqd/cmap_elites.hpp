#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "cqd/bandit.hpp"
#include "cqd/domain.hpp"
#include "cqd/fi2pop.hpp"
#include "cqd/grid.hpp"
#include "cqd/sifa_policy.hpp"
#include "cqd/variation.hpp"

namespace cqd {

struct QdConfig {
    int generations = 50;
    /// Offspring per subpopulation of the selected bin.
    std::size_t offspring_per_generation = 10;
    VariationConfig variation;
    GridConfig grid;
    std::size_t initial_samples = 40;
    std::size_t init_budget = 1000;
    double bandit_epsilon = 0.2;
};

void validate(const QdConfig& cfg);

enum class EmitterMode { Random, Optimizing, Bandit };

template <typename Genome>
struct QdState {
    Grid<Genome> grid;
    IdSource ids;
    int generation = 0;

    explicit QdState(const GridConfig& cfg) : grid(cfg) {}
};

template <Domain D>
void initialize(QdState<typename D::Genome>& state, const D& domain, const InfeasibleFitnessPolicy& policy,
                const QdConfig& cfg, Rng& rng) {
    using Genome = typename D::Genome;
    std::size_t drawn = 0;
    auto draw = [&](std::size_t n) {
        std::vector<Genome> genomes;
        genomes.reserve(n);
        for (std::size_t i = 0; i < n; ++i) genomes.push_back(domain.random_genome(rng));
        drawn += n;
        for (auto& s : evaluate_genomes(domain, std::move(genomes), policy, state.ids, 0))
            state.grid.insert(std::move(s));
    };
    draw(std::min(cfg.initial_samples, cfg.init_budget));
    while (state.grid.empty() && drawn < cfg.init_budget) draw(1);
    if (state.grid.empty()) throw InitFailure("initial sampling left the grid empty");
}

/// One CMAP-Elites generation from the bin picked by `emitter`.
template <Domain D>
std::vector<OffspringEvent> qd_step(QdState<typename D::Genome>& state, EmitterKind emitter, const D& domain,
                                    const InfeasibleFitnessPolicy& policy, const QdConfig& cfg, Rng& rng) {
    using Genome = typename D::Genome;
    if (state.grid.empty()) throw EmptyGrid("step on an empty grid");
    ++state.generation;

    const Cell cell = emitter == EmitterKind::Random ? random_emitter(state.grid, rng) : optimizing_emitter(state.grid);
    std::vector<OffspringEvent> events;
    std::vector<Solution<Genome>> children;
    {
        const auto& bin = state.grid.at(cell);
        for (const Population<Genome>* pop : {&bin.feasible, &bin.infeasible}) {
            if (pop->empty()) continue;
            auto parents = select_parents(*pop, cfg.offspring_per_generation, rng);
            auto kids = breed(parents, domain, policy, cfg.variation, state.ids, state.generation, rng, events);
            std::move(kids.begin(), kids.end(), std::back_inserter(children));
        }
    }
    for (auto& c : children) state.grid.insert(std::move(c));
    return events;
}

template <typename Genome>
void rescore_infeasible(Grid<Genome>& grid, const InfeasibleFitnessPolicy& policy) {
    for (auto& b : grid.bins()) rescore_infeasible(b.infeasible, policy);
}

template <typename Genome>
GenerationRecord make_record(const QdState<Genome>& state) {
    GenerationRecord r;
    r.generation = state.generation;
    double feas_sum = 0.0, infeas_sum = 0.0;
    bool any_feas = false, any_infeas = false;
    for (const auto& b : state.grid.bins()) {
        for (const auto& m : b.feasible.members()) {
            if (!any_feas || m.fitness > r.elite_feasible_fitness) r.elite_feasible_fitness = m.fitness;
            any_feas = true;
            feas_sum += m.fitness;
        }
        for (const auto& m : b.infeasible.members()) {
            if (!any_infeas || m.fitness > r.elite_infeasible_fitness) r.elite_infeasible_fitness = m.fitness;
            any_infeas = true;
            infeas_sum += m.fitness;
        }
        r.feasible_size += b.feasible.size();
        r.infeasible_size += b.infeasible.size();
    }
    if (r.feasible_size) r.avg_feasible_fitness = feas_sum / static_cast<double>(r.feasible_size);
    if (r.infeasible_size) r.avg_infeasible_fitness = infeas_sum / static_cast<double>(r.infeasible_size);
    r.coverage = state.grid.coverage();
    return r;
}

/// Full CMAP-Elites run. Bandit mode needs a SIFA policy, whose statistic the
/// bandit sets each generation.
template <Domain D>
std::vector<GenerationRecord> run_cmap_elites(const D& domain, InfeasibleFitnessPolicy& policy, EmitterMode mode,
                                              const QdConfig& cfg, Rng& rng,
                                              QdState<typename D::Genome>* final_state = nullptr,
                                              std::vector<double>* rewards = nullptr) {
    validate(cfg);
    auto* sifa = dynamic_cast<SifaPolicy*>(&policy);
    if (mode == EmitterMode::Bandit && !sifa) throw Error("bandit emitter selection requires the SIFA policy");

    QdState<typename D::Genome> state(cfg.grid);
    initialize(state, domain, policy, cfg, rng);

    std::optional<BanditState> bandit;
    if (mode == EmitterMode::Bandit) {
        const auto start = make_record(state);
        bandit.emplace(default_arms(), cfg.bandit_epsilon, start.avg_feasible_fitness, start.coverage.value_or(0.0));
    }

    std::vector<GenerationRecord> history;
    history.reserve(static_cast<std::size_t>(cfg.generations));
    for (int g = 0; g < cfg.generations; ++g) {
        EmitterKind emitter = mode == EmitterMode::Optimizing ? EmitterKind::Optimizing : EmitterKind::Random;
        std::optional<std::size_t> arm;
        if (bandit) {
            arm = bandit->select(rng);
            const Arm& a = bandit->arms()[*arm];
            emitter = a.emitter;
            sifa->set_statistic(a.statistic);
        }
        auto events = qd_step(state, emitter, domain, policy, cfg, rng);
        policy.observe(events);
        if (policy.update()) rescore_infeasible(state.grid, policy);
        auto record = make_record(state);
        record.arm = arm;
        if (bandit) {
            const double r = bandit->update(*arm, record.avg_feasible_fitness, record.coverage.value_or(0.0));
            if (rewards) rewards->push_back(r);
        }
        history.push_back(std::move(record));
    }
    if (final_state) *final_state = std::move(state);
    return history;
}

}  // namespace cqd
