#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "cqd/errors.hpp"

namespace cqd {

using SolutionId = std::uint64_t;

enum class Kind { Feasible, Infeasible };

/// Feasible, or infeasible with at least one violated constraint.
class Feasibility {
public:
    static Feasibility feasible() noexcept { return Feasibility(0); }
    static Feasibility infeasible(int violations);
    static Feasibility from_violations(int violations);

    bool is_feasible() const noexcept { return violations_ == 0; }
    int violations() const noexcept { return violations_; }
    Kind kind() const noexcept { return is_feasible() ? Kind::Feasible : Kind::Infeasible; }

    friend bool operator==(Feasibility, Feasibility) = default;

private:
    explicit Feasibility(int v) noexcept : violations_(v) {}
    int violations_;
};

/// Behavior descriptor (BC1, BC2).
struct Behavior {
    double bc1 = 0.0;
    double bc2 = 0.0;
    friend bool operator==(const Behavior&, const Behavior&) = default;
};

/// Everything a domain reports about one genome.
struct Evaluation {
    int violations = 0;
    /// Domain utility; only meaningful when violations == 0.
    double feasible_fitness = 0.0;
    Behavior behavior;
    /// Surrogate input vector, fixed length per domain.
    std::vector<double> features;
};

template <typename Genome>
struct Solution {
    SolutionId id = 0;
    Genome genome{};
    Feasibility feasibility = Feasibility::feasible();
    double fitness = 0.0;
    Behavior behavior;
    std::vector<double> features;
    std::vector<SolutionId> parent_ids;
    int generation_born = 0;

    bool is_feasible() const noexcept { return feasibility.is_feasible(); }
};

/// One (parent, child) edge produced by a generation.
struct OffspringEvent {
    SolutionId parent_id = 0;
    bool parent_feasible = false;
    std::vector<double> parent_features;
    SolutionId child_id = 0;
    bool child_feasible = false;
    /// Feasible fitness of the child; zero when the child is infeasible.
    double child_fitness = 0.0;
};

/// Per-generation metrics shared by FI-2Pop and CMAP-Elites.
struct GenerationRecord {
    int generation = 0;
    double elite_feasible_fitness = 0.0;
    double avg_feasible_fitness = 0.0;
    double elite_infeasible_fitness = 0.0;
    double avg_infeasible_fitness = 0.0;
    std::size_t feasible_size = 0;
    std::size_t infeasible_size = 0;
    std::optional<double> coverage;
    /// Bandit arm pulled this generation, if any.
    std::optional<std::size_t> arm;
};

/// Monotone id source owned by a single run.
class IdSource {
public:
    SolutionId next() noexcept { return next_++; }
    SolutionId peek() const noexcept { return next_; }

private:
    SolutionId next_ = 0;
};

inline Feasibility Feasibility::infeasible(int violations) {
    if (violations < 1) throw FeasibilityMismatch("infeasible solutions need at least one violation");
    return Feasibility(violations);
}

inline Feasibility Feasibility::from_violations(int violations) {
    if (violations < 0) throw FeasibilityMismatch("negative violation count");
    return Feasibility(violations);
}

}  // namespace cqd
