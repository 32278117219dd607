#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "cqd/rng.hpp"
#include "cqd/solution.hpp"

namespace cqd::numeric {

/// Linear constraint a.x - b <= 0.
struct HalfSpace {
    std::vector<double> a;
    double b = 0.0;

    double value(const std::vector<double>& x) const;
    bool violated(const std::vector<double>& x) const { return value(x) > 0.0; }
};

struct NumericConfig {
    std::size_t dimension = 2;
    double lower = -5.0;
    double upper = 5.0;
    std::vector<HalfSpace> constraints;
    double mutation_sigma = 0.3;
};

void validate(const NumericConfig& cfg);

/// Box-bounded vectors scored by exp(-|x|^2 / 2d) under linear constraints.
class NumericDomain {
public:
    using Genome = std::vector<double>;

    explicit NumericDomain(NumericConfig cfg);

    const NumericConfig& config() const noexcept { return cfg_; }

    double fitness(const Genome& x) const;
    int violations(const Genome& x) const;

    Genome random_genome(Rng& rng) const;
    Evaluation evaluate_genome(const Genome& x) const;
    /// Blend with one uniform weight per pair.
    std::pair<Genome, Genome> crossover(const Genome& a, const Genome& b, Rng& rng) const;
    /// Gaussian perturbation per coordinate with probability `rate`, clamped to the box.
    Genome mutate(const Genome& x, double rate, Rng& rng) const;
    /// Scaled coordinates followed by the violated fraction of constraints.
    std::size_t feature_dim() const noexcept { return cfg_.dimension + 1; }

private:
    NumericConfig cfg_;
};

}  // namespace cqd::numeric
