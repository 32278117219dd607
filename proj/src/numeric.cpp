#include "cqd/numeric.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "cqd/errors.hpp"

namespace cqd::numeric {

double HalfSpace::value(const std::vector<double>& x) const {
    double s = -b;
    for (std::size_t i = 0; i < a.size() && i < x.size(); ++i) s += a[i] * x[i];
    return s;
}

void validate(const NumericConfig& cfg) {
    if (cfg.dimension < 1) throw ConfigError("numeric.dimension", "must be at least 1");
    if (!(cfg.upper > cfg.lower)) throw ConfigError("numeric.upper", "must exceed numeric.lower");
    if (!(cfg.mutation_sigma > 0.0)) throw ConfigError("numeric.mutation_sigma", "must be positive");
    for (std::size_t j = 0; j < cfg.constraints.size(); ++j)
        if (cfg.constraints[j].a.size() != cfg.dimension)
            throw ConfigError(fmt::format("numeric.constraints[{}].a", j), "length must equal numeric.dimension");
}

NumericDomain::NumericDomain(NumericConfig cfg) : cfg_(std::move(cfg)) { validate(cfg_); }

double NumericDomain::fitness(const Genome& x) const {
    double sq = 0.0;
    for (double v : x) sq += v * v;
    return std::exp(-sq / (2.0 * static_cast<double>(cfg_.dimension)));
}

int NumericDomain::violations(const Genome& x) const {
    return static_cast<int>(std::count_if(cfg_.constraints.begin(), cfg_.constraints.end(),
                                          [&](const HalfSpace& h) { return h.violated(x); }));
}

NumericDomain::Genome NumericDomain::random_genome(Rng& rng) const {
    Genome x(cfg_.dimension);
    for (auto& v : x) v = rng.uniform(cfg_.lower, cfg_.upper);
    return x;
}

Evaluation NumericDomain::evaluate_genome(const Genome& x) const {
    if (x.size() != cfg_.dimension) throw InvalidGenome("genome dimension does not match the domain");
    Evaluation e;
    e.violations = violations(x);
    e.feasible_fitness = e.violations == 0 ? fitness(x) : 0.0;
    auto clamp = [&](double v) { return std::clamp(v, cfg_.lower, cfg_.upper); };
    e.behavior = {clamp(x[0]), cfg_.dimension > 1 ? clamp(x[1]) : 0.0};
    e.features.reserve(feature_dim());
    for (double v : x) e.features.push_back((clamp(v) - cfg_.lower) / (cfg_.upper - cfg_.lower));
    e.features.push_back(cfg_.constraints.empty()
                             ? 0.0
                             : static_cast<double>(e.violations) / static_cast<double>(cfg_.constraints.size()));
    return e;
}

std::pair<NumericDomain::Genome, NumericDomain::Genome> NumericDomain::crossover(const Genome& a, const Genome& b,
                                                                                 Rng& rng) const {
    if (a.size() != b.size()) throw GenomeMismatch("crossover of genomes with different lengths");
    const double w = rng.uniform();
    Genome c1(a.size()), c2(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        c1[i] = w * a[i] + (1.0 - w) * b[i];
        c2[i] = (1.0 - w) * a[i] + w * b[i];
    }
    return {std::move(c1), std::move(c2)};
}

NumericDomain::Genome NumericDomain::mutate(const Genome& x, double rate, Rng& rng) const {
    Genome out = x;
    for (auto& v : out)
        if (rng.bernoulli(rate)) v = std::clamp(v + cfg_.mutation_sigma * rng.normal(), cfg_.lower, cfg_.upper);
    return out;
}

}  // namespace cqd::numeric
