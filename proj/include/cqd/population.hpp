#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <vector>

#include "cqd/errors.hpp"
#include "cqd/rng.hpp"
#include "cqd/solution.hpp"

namespace cqd {

/// Fitter first; equal fitness keeps the older (lower id) solution first.
template <typename Genome>
bool fitter(const Solution<Genome>& a, const Solution<Genome>& b) noexcept {
    if (a.fitness != b.fitness) return a.fitness > b.fitness;
    return a.id < b.id;
}

/// Bounded, single-feasibility-kind collection of solutions.
template <typename Genome>
class Population {
public:
    using solution_type = Solution<Genome>;

    Population(Kind kind, std::size_t capacity) : kind_(kind), capacity_(capacity) {
        if (capacity == 0) throw Error("population capacity must be positive");
    }

    Kind kind() const noexcept { return kind_; }
    std::size_t capacity() const noexcept { return capacity_; }
    std::size_t size() const noexcept { return members_.size(); }
    bool empty() const noexcept { return members_.empty(); }

    std::span<const solution_type> members() const noexcept { return members_; }
    std::span<solution_type> members() noexcept { return members_; }
    const solution_type& operator[](std::size_t i) const { return members_[i]; }

    /// Appends without truncating; the caller truncates once a batch is in.
    void add(solution_type s) {
        if (s.feasibility.kind() != kind_)
            throw FeasibilityMismatch("solution feasibility does not match population kind");
        members_.push_back(std::move(s));
    }

    /// Keeps the `capacity` fittest members, fitness-descending.
    void truncate() {
        std::stable_sort(members_.begin(), members_.end(), fitter<Genome>);
        if (members_.size() > capacity_) members_.resize(capacity_);
    }

    /// Re-sorts after an in-place fitness change.
    void resort() { std::stable_sort(members_.begin(), members_.end(), fitter<Genome>); }

    const solution_type* best() const noexcept {
        if (members_.empty()) return nullptr;
        return &*std::min_element(members_.begin(), members_.end(), fitter<Genome>);
    }

    double mean_fitness() const noexcept {
        if (members_.empty()) return 0.0;
        double sum = 0.0;
        for (const auto& m : members_) sum += m.fitness;
        return sum / static_cast<double>(members_.size());
    }

private:
    Kind kind_;
    std::size_t capacity_;
    std::vector<solution_type> members_;
};

/// Winner of a size-2 tournament between members i and j.
template <typename Genome>
const Solution<Genome>& tournament_winner(const Population<Genome>& pop, std::size_t i, std::size_t j) {
    const auto& a = pop[i];
    const auto& b = pop[j];
    return fitter(b, a) ? b : a;
}

/// `n` parents drawn with replacement by binary tournament.
template <typename Genome>
std::vector<Solution<Genome>> select_parents(const Population<Genome>& pop, std::size_t n, Rng& rng) {
    if (pop.empty()) throw EmptyPopulation("cannot select parents from an empty population");
    std::vector<Solution<Genome>> parents;
    parents.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t i = rng.uniform_index(pop.size());
        const std::size_t j = rng.uniform_index(pop.size());
        parents.push_back(tournament_winner(pop, i, j));
    }
    return parents;
}

/// Value-returning truncation.
template <typename Genome>
Population<Genome> truncate(Population<Genome> pop) {
    pop.truncate();
    return pop;
}

}  // namespace cqd
