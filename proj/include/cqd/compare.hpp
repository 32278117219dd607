#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "cqd/records_io.hpp"

namespace cqd {

/// Paired sign test outcome.
struct SignTest {
    std::size_t wins = 0;    // first better
    std::size_t losses = 0;  // second better
    std::size_t ties = 0;
    /// Exact two-sided binomial p-value; 1 when every pair ties.
    double p_two_sided = 1.0;
    /// P(wins >= observed) under the null.
    double p_greater = 1.0;
    bool underpowered = false;
    bool inconclusive = true;
};

/// Smallest untied-pair count whose best two-sided p-value is below 0.05.
inline constexpr std::size_t kSignTestMinPairs = 6;

/// P(X <= k) for X ~ Binomial(n, 1/2), exact.
double binomial_half_cdf(std::size_t k, std::size_t n);

SignTest sign_test(std::span<const double> first, std::span<const double> second, double alpha = 0.05);

struct Comparison {
    std::vector<Summary> summaries;
    /// Upper-triangular pairs (i < j).
    struct Pair {
        std::size_t first = 0;
        std::size_t second = 0;
        SignTest test;
    };
    std::vector<Pair> pairs;
};

/// Needs at least two summaries over the same seed list (SeedMismatch otherwise).
Comparison compare(std::vector<Summary> summaries);

void write_report(std::ostream& out, const Comparison& c);

}  // namespace cqd
