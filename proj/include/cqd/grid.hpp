#pragma once

#include <cstddef>
#include <iosfwd>
#include <utility>
#include <vector>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "cqd/errors.hpp"
#include "cqd/population.hpp"
#include "cqd/rng.hpp"
#include "cqd/solution.hpp"

namespace cqd {

struct Interval {
    double lo = 1.0;
    double hi = 5.0;
};

struct GridConfig {
    std::size_t bins_per_axis = 32;
    Interval bc1_range{1.0, 5.0};
    Interval bc2_range{1.0, 5.0};
    /// Per-bin capacity of the feasible subpopulation.
    std::size_t feasible_capacity = 5;
    /// Per-bin capacity of the infeasible subpopulation.
    std::size_t infeasible_capacity = 5;
};

struct Cell {
    std::size_t i = 0;
    std::size_t j = 0;
    friend auto operator<=>(const Cell&, const Cell&) = default;
};

/// Uniform partition per axis; out-of-range values clamp to the edge cells
/// and the upper endpoint belongs to the last cell. Throws InvalidBehavior
/// for non-finite descriptors.
Cell bin_index(const Behavior& bc, const GridConfig& cfg);

/// Index along one axis (same rules as bin_index).
std::size_t axis_index(double value, const Interval& range, std::size_t bins);

/// Bin of a CMAP-Elites grid: a feasible and an infeasible subpopulation.
template <typename Genome>
struct Bin {
    Cell cell;
    Population<Genome> feasible;
    Population<Genome> infeasible;

    Bin(Cell c, std::size_t feasible_capacity, std::size_t infeasible_capacity)
        : cell(c), feasible(Kind::Feasible, feasible_capacity), infeasible(Kind::Infeasible, infeasible_capacity) {}

    bool empty() const noexcept { return feasible.empty() && infeasible.empty(); }

    /// max(best feasible, best infeasible); requires a non-empty bin.
    double best_fitness() const {
        double best = 0.0;
        bool any = false;
        for (const auto* pop : {&feasible, &infeasible}) {
            if (const auto* b = pop->best()) {
                if (!any || b->fitness > best) best = b->fitness;
                any = true;
            }
        }
        return best;
    }
};

template <typename Genome>
class Grid {
public:
    explicit Grid(GridConfig cfg) : cfg_(cfg) {
        if (cfg_.bins_per_axis == 0) throw Error("bins_per_axis must be positive");
        bins_.reserve(cfg_.bins_per_axis * cfg_.bins_per_axis);
        for (std::size_t i = 0; i < cfg_.bins_per_axis; ++i)
            for (std::size_t j = 0; j < cfg_.bins_per_axis; ++j)
                bins_.emplace_back(Cell{i, j}, cfg_.feasible_capacity, cfg_.infeasible_capacity);
    }

    const GridConfig& config() const noexcept { return cfg_; }
    std::size_t bins_per_axis() const noexcept { return cfg_.bins_per_axis; }
    std::size_t cell_count() const noexcept { return bins_.size(); }

    Bin<Genome>& at(Cell c) { return bins_[c.i * cfg_.bins_per_axis + c.j]; }
    const Bin<Genome>& at(Cell c) const { return bins_[c.i * cfg_.bins_per_axis + c.j]; }
    std::vector<Bin<Genome>>& bins() noexcept { return bins_; }
    const std::vector<Bin<Genome>>& bins() const noexcept { return bins_; }

    /// Routes to the solution's own cell and subpopulation, then truncates it.
    void insert(Solution<Genome> s) {
        auto& bin = at(bin_index(s.behavior, cfg_));
        auto& pop = s.is_feasible() ? bin.feasible : bin.infeasible;
        pop.add(std::move(s));
        pop.truncate();
    }

    bool empty() const noexcept {
        for (const auto& b : bins_)
            if (!b.empty()) return false;
        return true;
    }

    /// Fraction of cells holding at least one feasible solution.
    double coverage() const noexcept {
        std::size_t filled = 0;
        for (const auto& b : bins_)
            if (!b.feasible.empty()) ++filled;
        return static_cast<double>(filled) / static_cast<double>(bins_.size());
    }

    std::vector<Cell> non_empty_cells() const {
        std::vector<Cell> out;
        for (const auto& b : bins_)
            if (!b.empty()) out.push_back(b.cell);
        return out;
    }

    /// One row per non-empty cell: i,j,best_feasible_fitness,feasible_count,infeasible_count.
    void write_csv(std::ostream& out) const {
        out << "i,j,best_feasible_fitness,feasible_count,infeasible_count\n";
        for (const auto& b : bins_) {
            if (b.empty()) continue;
            const auto* best = b.feasible.best();
            fmt::print(out, "{},{},{},{},{}\n", b.cell.i, b.cell.j,
                       best ? fmt::format("{:.10g}", best->fitness) : std::string{}, b.feasible.size(),
                       b.infeasible.size());
        }
    }

private:
    GridConfig cfg_;
    std::vector<Bin<Genome>> bins_;
};

/// Uniform choice among non-empty bins.
template <typename Genome>
Cell random_emitter(const Grid<Genome>& grid, Rng& rng) {
    const auto cells = grid.non_empty_cells();
    if (cells.empty()) throw EmptyGrid("random emitter on an empty grid");
    return cells[rng.uniform_index(cells.size())];
}

/// Bin with the highest subpopulation-best fitness; ties go to the
/// lexicographically smallest cell.
template <typename Genome>
Cell optimizing_emitter(const Grid<Genome>& grid) {
    const Bin<Genome>* chosen = nullptr;
    double chosen_value = 0.0;
    for (const auto& b : grid.bins()) {  // row-major, so lexicographic order
        if (b.empty()) continue;
        const double v = b.best_fitness();
        if (!chosen || v > chosen_value) {
            chosen = &b;
            chosen_value = v;
        }
    }
    if (!chosen) throw EmptyGrid("optimizing emitter on an empty grid");
    return chosen->cell;
}

}  // namespace cqd
