#include "cqd/compare.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "cqd/errors.hpp"

namespace cqd {

double binomial_half_cdf(std::size_t k, std::size_t n) {
    if (k >= n) return 1.0;
    // log-space terms keep n in the thousands exact enough
    double sum = 0.0;
    const double log_half_n = static_cast<double>(n) * std::log(0.5);
    for (std::size_t i = 0; i <= k; ++i) {
        const double log_choose = std::lgamma(static_cast<double>(n) + 1.0) - std::lgamma(static_cast<double>(i) + 1.0) -
                                  std::lgamma(static_cast<double>(n - i) + 1.0);
        sum += std::exp(log_choose + log_half_n);
    }
    return std::min(sum, 1.0);
}

SignTest sign_test(std::span<const double> first, std::span<const double> second, double alpha) {
    if (first.size() != second.size()) throw SeedMismatch("paired samples differ in length");
    SignTest t;
    for (std::size_t i = 0; i < first.size(); ++i) {
        if (first[i] > second[i]) ++t.wins;
        else if (first[i] < second[i]) ++t.losses;
        else ++t.ties;
    }
    const std::size_t n = t.wins + t.losses;
    if (n == 0) {
        t.underpowered = first.size() < kSignTestMinPairs;
        return t;
    }
    const std::size_t tail = std::min(t.wins, t.losses);
    t.p_two_sided = std::min(1.0, 2.0 * binomial_half_cdf(tail, n));
    t.p_greater = t.wins == 0 ? 1.0 : 1.0 - binomial_half_cdf(t.wins - 1, n);
    t.underpowered = n < kSignTestMinPairs;
    t.inconclusive = t.underpowered || t.p_two_sided >= alpha;
    return t;
}

Comparison compare(std::vector<Summary> summaries) {
    if (summaries.size() < 2) throw Error("compare needs at least two summaries");
    for (std::size_t i = 1; i < summaries.size(); ++i)
        if (summaries[i].seeds != summaries[0].seeds)
            throw SeedMismatch(fmt::format("'{}' and '{}' were run on different seeds", summaries[0].method,
                                           summaries[i].method));
    Comparison c;
    c.summaries = std::move(summaries);
    for (std::size_t i = 0; i < c.summaries.size(); ++i)
        for (std::size_t j = i + 1; j < c.summaries.size(); ++j)
            c.pairs.push_back({i, j, sign_test(c.summaries[i].final_elite_by_seed, c.summaries[j].final_elite_by_seed)});
    return c;
}

void write_report(std::ostream& out, const Comparison& c) {
    auto cell = [](const std::optional<MeanStd>& m) {
        return m ? fmt::format("{:.4f} ± {:.4f}", m->mean, m->std) : std::string("-");
    };
    std::size_t width = 6;
    for (const auto& s : c.summaries) width = std::max(width, s.method.size());

    fmt::print(out, "seeds: {}\n\n", c.summaries.front().seeds.size());
    fmt::print(out, "{:<{}}  {:>19}  {:>19}  {:>19}  {:>19}  {:>19}\n", "method", width, "elite feas", "avg feas",
               "elite infeas", "avg infeas", "coverage");
    for (const auto& s : c.summaries) {
        fmt::print(out, "{:<{}}  {:>19}  {:>19}  {:>19}  {:>19}  {:>19}\n", s.method, width, cell(s.elite_feasible),
                   cell(s.avg_feasible), cell(s.elite_infeasible), cell(s.avg_infeasible), cell(s.coverage));
    }
    fmt::print(out, "\nsign tests on final elite feasible fitness (paired by seed)\n");
    for (const auto& p : c.pairs) {
        const auto& a = c.summaries[p.first];
        const auto& b = c.summaries[p.second];
        std::string verdict;
        if (p.test.underpowered)
            verdict = "underpowered";
        else if (p.test.inconclusive)
            verdict = "inconclusive";
        else
            verdict = p.test.wins > p.test.losses ? fmt::format("{} better", a.method)
                                                  : fmt::format("{} better", b.method);
        const double diff = a.elite_feasible.mean - b.elite_feasible.mean;
        fmt::print(out, "{} vs {}: diff {:+.4f}, wins {}, losses {}, ties {}, p = {:.3g} ({})\n", a.method, b.method,
                   diff, p.test.wins, p.test.losses, p.test.ties, p.test.p_two_sided, verdict);
    }
}

}  // namespace cqd
