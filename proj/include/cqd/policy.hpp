#pragma once

#include <span>
#include <string_view>

#include "cqd/errors.hpp"
#include "cqd/solution.hpp"

namespace cqd {

/// 1 / violations. Throws NotInfeasible for zero violations.
inline double standard_infeasible_fitness(int violations) {
    if (violations <= 0) throw NotInfeasible("standard infeasible fitness needs at least one violation");
    return 1.0 / static_cast<double>(violations);
}

/// How infeasible solutions are scored.
class InfeasibleFitnessPolicy {
public:
    virtual ~InfeasibleFitnessPolicy() = default;

    virtual double infeasible_fitness(int violations, std::span<const double> features) const = 0;

    /// Sees every (parent, child) edge of a generation.
    virtual void observe(std::span<const OffspringEvent> events) { (void)events; }

    /// Called once per generation after observe(). Returns true when the
    /// fitness function changed and infeasible members must be rescored.
    virtual bool update() { return false; }

    virtual std::string_view name() const = 0;
};

class StandardInfeasibleFitness final : public InfeasibleFitnessPolicy {
public:
    double infeasible_fitness(int violations, std::span<const double>) const override {
        return standard_infeasible_fitness(violations);
    }
    std::string_view name() const override { return "standard"; }
};

}  // namespace cqd
