#include "cqd/ledger.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "cqd/errors.hpp"

namespace cqd {

std::string_view to_string(Statistic s) noexcept {
    switch (s) {
        case Statistic::Mean: return "mean";
        case Statistic::Max: return "max";
        case Statistic::Min: return "min";
    }
    return "?";
}

double LedgerEntry::feasible_probability() const {
    if (total_children == 0) throw NoOffspringYet("ledger entry has no children");
    return static_cast<double>(feasible_child_fitnesses.size()) / static_cast<double>(total_children);
}

double weighted_statistic(const LedgerEntry& entry, Statistic stat, double epsilon_init) {
    const double p = entry.feasible_probability();
    const auto& f = entry.feasible_child_fitnesses;
    if (f.empty()) return epsilon_init;
    double value = 0.0;
    switch (stat) {
        case Statistic::Mean:
            value = std::accumulate(f.begin(), f.end(), 0.0) / static_cast<double>(f.size());
            break;
        case Statistic::Max: value = *std::max_element(f.begin(), f.end()); break;
        case Statistic::Min: value = *std::min_element(f.begin(), f.end()); break;
    }
    return value * p;
}

RecordOutcome OffspringLedger::record(const OffspringEvent& event) {
    if (event.parent_feasible) return RecordOutcome::IgnoredEvent;
    auto [it, inserted] = entries_.try_emplace(event.parent_id);
    LedgerEntry& e = it->second;
    if (inserted) {
        e.parent_id = event.parent_id;
        e.parent_features = event.parent_features;
    }
    ++e.total_children;
    if (event.child_feasible) e.feasible_child_fitnesses.push_back(event.child_fitness);
    return RecordOutcome::Recorded;
}

const LedgerEntry* OffspringLedger::find(SolutionId parent) const {
    auto it = entries_.find(parent);
    return it == entries_.end() ? nullptr : &it->second;
}

std::vector<TrainingExample> OffspringLedger::training_set(Statistic stat, double epsilon_init) const {
    std::vector<TrainingExample> out;
    out.reserve(entries_.size());
    for (const auto& [id, e] : entries_) out.push_back({e.parent_features, weighted_statistic(e, stat, epsilon_init)});
    return out;
}

void OffspringLedger::write_csv(std::ostream& out, double epsilon_init) const {
    out << "parent_id,total_children,feasible_children,p,target_mean,target_max,target_min\n";
    for (const auto& [id, e] : entries_) {
        fmt::print(out, "{},{},{},{:.10g},{:.10g},{:.10g},{:.10g}\n", id, e.total_children,
                   e.feasible_child_fitnesses.size(), e.feasible_probability(),
                   weighted_statistic(e, Statistic::Mean, epsilon_init),
                   weighted_statistic(e, Statistic::Max, epsilon_init),
                   weighted_statistic(e, Statistic::Min, epsilon_init));
    }
}

}  // namespace cqd
