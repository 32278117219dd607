#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "cqd/ledger.hpp"
#include "cqd/rng.hpp"

namespace cqd {

enum class EmitterKind { Random, Optimizing };

struct Arm {
    EmitterKind emitter = EmitterKind::Random;
    Statistic statistic = Statistic::Mean;
};

std::string to_string(const Arm& arm);

/// {random, optimizing} x {mean, max, min}, in that order.
std::vector<Arm> default_arms();

/// Guard for percentage increases from a zero baseline.
inline constexpr double kPctDelta = 1e-9;

/// (now - before) / max(before, kPctDelta)
double pct_increase(double before, double now) noexcept;

/// Epsilon-greedy bandit over (emitter, statistic) arms with running-mean values.
class BanditState {
public:
    BanditState(std::vector<Arm> arms, double epsilon, double initial_avg_feasible_fitness,
                double initial_coverage);

    const std::vector<Arm>& arms() const noexcept { return arms_; }
    const std::vector<double>& values() const noexcept { return values_; }
    const std::vector<std::size_t>& pulls() const noexcept { return pulls_; }
    double epsilon() const noexcept { return epsilon_; }
    double previous_avg_feasible_fitness() const noexcept { return prev_fitness_; }
    double previous_coverage() const noexcept { return prev_coverage_; }

    /// Uniform arm with probability epsilon, else the best value (lowest index on ties).
    std::size_t select(Rng& rng) const;

    /// Rewards `arm` with the summed percentage gains; returns the reward.
    double update(std::size_t arm, double new_avg_feasible_fitness, double new_coverage);

    /// Sets a value/count pair directly (tests and checkpoint restore).
    void set_estimate(std::size_t arm, double value, std::size_t pulls);

private:
    std::vector<Arm> arms_;
    std::vector<double> values_;
    std::vector<std::size_t> pulls_;
    double epsilon_;
    double prev_fitness_;
    double prev_coverage_;
};

}  // namespace cqd
