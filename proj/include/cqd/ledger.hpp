#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <string_view>
#include <vector>

#include "cqd/solution.hpp"

namespace cqd {

/// Statistic of a parent's feasible-children fitnesses.
enum class Statistic { Mean, Max, Min };

std::string_view to_string(Statistic s) noexcept;

/// Offspring record for one infeasible parent.
struct LedgerEntry {
    SolutionId parent_id = 0;
    std::vector<double> parent_features;
    std::vector<double> feasible_child_fitnesses;
    std::size_t total_children = 0;

    /// Empirical probability of a feasible child. Requires total_children > 0.
    double feasible_probability() const;
};

/// stat(feasible children) * p, or `epsilon_init` when no child was feasible.
/// Throws NoOffspringYet for an entry without children.
double weighted_statistic(const LedgerEntry& entry, Statistic stat, double epsilon_init);

/// Surrogate training pair.
struct TrainingExample {
    std::vector<double> features;
    double target = 0.0;
};

enum class RecordOutcome { Recorded, IgnoredEvent };

/// Offspring ledger keyed by infeasible parent id (iteration in id order).
class OffspringLedger {
public:
    /// Feasible-parent events are ignored and reported as such.
    RecordOutcome record(const OffspringEvent& event);

    const LedgerEntry* find(SolutionId parent) const;
    std::size_t size() const noexcept { return entries_.size(); }
    bool empty() const noexcept { return entries_.empty(); }
    const std::map<SolutionId, LedgerEntry>& entries() const noexcept { return entries_; }

    /// One example per entry, target = weighted_statistic.
    std::vector<TrainingExample> training_set(Statistic stat, double epsilon_init) const;

    /// Delimited dump: parent_id,total_children,feasible_children,p,target_mean,target_max,target_min
    void write_csv(std::ostream& out, double epsilon_init) const;

private:
    std::map<SolutionId, LedgerEntry> entries_;
};

}  // namespace cqd
