#include "cqd/sifa_policy.hpp"

#include <ostream>

namespace cqd {

SifaPolicy::SifaPolicy(std::size_t feature_dim, std::uint64_t seed, SifaConfig cfg)
    : cfg_(cfg), model_(feature_dim, seed, cfg.learning_rate) {
    if (!(cfg_.epsilon_init > 0.0)) throw Error("epsilon_init must be positive");
}

double SifaPolicy::infeasible_fitness(int violations, std::span<const double> features) const {
    if (violations <= 0) throw NotInfeasible("infeasible fitness requested for a feasible solution");
    if (!model_.trained()) return cfg_.epsilon_init;
    return acquire_fitness(model_, features, cfg_.epsilon_init);
}

void SifaPolicy::observe(std::span<const OffspringEvent> events) {
    for (const auto& ev : events) {
        if (ledger_.record(ev) == RecordOutcome::IgnoredEvent)
            ++ignored_;
        else
            dirty_ = true;
    }
}

bool SifaPolicy::update() {
    if (!dirty_ || ledger_.empty()) return false;
    const auto examples = ledger_.training_set(cfg_.statistic, cfg_.epsilon_init);
    last_loss_ = model_.train_increment(examples, cfg_.train_epochs_per_update);
    dirty_ = false;
    return true;
}

void SifaPolicy::write_ledger_csv(std::ostream& out) const { ledger_.write_csv(out, cfg_.epsilon_init); }

}  // namespace cqd
