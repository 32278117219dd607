#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string_view>

#include "cqd/ledger.hpp"
#include "cqd/policy.hpp"
#include "cqd/population.hpp"
#include "cqd/surrogate.hpp"
#include "cqd/variation.hpp"

namespace cqd {

struct SifaConfig {
    double epsilon_init = 0.001;
    Statistic statistic = Statistic::Mean;
    std::size_t train_epochs_per_update = 5;
    double learning_rate = 0.01;
};

/// Surrogate infeasible fitness acquirement.
///
/// Infeasible solutions score epsilon_init until the first model update.
/// Each generation the ledger of infeasible parents is turned into one
/// training example per parent (probability-weighted statistic of its
/// feasible children's fitness) and the surrogate takes
/// train_epochs_per_update passes over it. From then on infeasible fitness
/// is the surrogate's prediction on the solution's features, floored at
/// epsilon_init.
class SifaPolicy final : public InfeasibleFitnessPolicy {
public:
    SifaPolicy(std::size_t feature_dim, std::uint64_t seed, SifaConfig cfg = {});

    double infeasible_fitness(int violations, std::span<const double> features) const override;
    void observe(std::span<const OffspringEvent> events) override;
    bool update() override;
    std::string_view name() const override { return "sifa"; }

    /// Statistic used for the next training targets (the bandit switches it).
    void set_statistic(Statistic s) noexcept { cfg_.statistic = s; }
    Statistic statistic() const noexcept { return cfg_.statistic; }

    const SifaConfig& config() const noexcept { return cfg_; }
    const OffspringLedger& ledger() const noexcept { return ledger_; }
    const SurrogateModel& model() const noexcept { return model_; }
    std::optional<double> last_loss() const noexcept { return last_loss_; }
    std::size_t ignored_events() const noexcept { return ignored_; }

    void write_ledger_csv(std::ostream& out) const;

private:
    SifaConfig cfg_;
    OffspringLedger ledger_;
    SurrogateModel model_;
    std::optional<double> last_loss_;
    std::size_t ignored_ = 0;
    bool dirty_ = false;
};

/// Rescores every infeasible member with the trained surrogate and re-sorts.
/// The model must have been trained.
template <typename Genome>
void reassign(const SifaPolicy& policy, Population<Genome>& infeasible) {
    if (!policy.model().trained()) throw Error("reassign requires a trained surrogate");
    rescore_infeasible(infeasible, policy);
}

}  // namespace cqd
