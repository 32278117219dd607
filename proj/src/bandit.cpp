#include "cqd/bandit.hpp"

#include <algorithm>

#include "cqd/errors.hpp"

namespace cqd {

std::string to_string(const Arm& arm) {
    std::string s = arm.emitter == EmitterKind::Random ? "random" : "optimizing";
    s += '/';
    s += to_string(arm.statistic);
    return s;
}

std::vector<Arm> default_arms() {
    std::vector<Arm> arms;
    for (auto e : {EmitterKind::Random, EmitterKind::Optimizing})
        for (auto s : {Statistic::Mean, Statistic::Max, Statistic::Min}) arms.push_back({e, s});
    return arms;
}

double pct_increase(double before, double now) noexcept {
    return (now - before) / std::max(before, kPctDelta);
}

BanditState::BanditState(std::vector<Arm> arms, double epsilon, double initial_avg_feasible_fitness,
                         double initial_coverage)
    : arms_(std::move(arms)),
      values_(arms_.size(), 0.0),
      pulls_(arms_.size(), 0),
      epsilon_(epsilon),
      prev_fitness_(initial_avg_feasible_fitness),
      prev_coverage_(initial_coverage) {
    if (arms_.empty()) throw Error("bandit needs at least one arm");
    if (epsilon < 0.0 || epsilon > 1.0) throw Error("bandit epsilon must lie in [0, 1]");
}

std::size_t BanditState::select(Rng& rng) const {
    if (rng.bernoulli(epsilon_)) return rng.uniform_index(arms_.size());
    return static_cast<std::size_t>(std::max_element(values_.begin(), values_.end()) - values_.begin());
}

double BanditState::update(std::size_t arm, double new_avg_feasible_fitness, double new_coverage) {
    const double reward =
        pct_increase(prev_fitness_, new_avg_feasible_fitness) + pct_increase(prev_coverage_, new_coverage);
    ++pulls_.at(arm);
    values_[arm] += (reward - values_[arm]) / static_cast<double>(pulls_[arm]);
    prev_fitness_ = new_avg_feasible_fitness;
    prev_coverage_ = new_coverage;
    return reward;
}

void BanditState::set_estimate(std::size_t arm, double value, std::size_t pulls) {
    values_.at(arm) = value;
    pulls_.at(arm) = pulls;
}

}  // namespace cqd
