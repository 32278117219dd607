#include "cqd/voxel.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>
#include <set>
#include <tuple>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "cqd/errors.hpp"

namespace cqd::voxel {

namespace {

using Cell3 = std::array<int, 3>;

struct Bounds {
    Cell3 lo{0, 0, 0};
    Cell3 hi{0, 0, 0};
    int extent(int axis) const noexcept { return hi[axis] - lo[axis] + 1; }
};

Bounds bounds_of(const VoxelStructure& s) {
    Bounds b;
    b.lo = {s.blocks.front().x, s.blocks.front().y, s.blocks.front().z};
    b.hi = b.lo;
    for (const auto& blk : s.blocks) {
        const Cell3 c{blk.x, blk.y, blk.z};
        for (int a = 0; a < 3; ++a) {
            b.lo[a] = std::min(b.lo[a], c[a]);
            b.hi[a] = std::max(b.hi[a], c[a]);
        }
    }
    return b;
}

std::set<Cell3> filled_cells(const VoxelStructure& s) {
    std::set<Cell3> cells;
    for (const auto& b : s.blocks) cells.insert({b.x, b.y, b.z});
    return cells;
}

void repair(VoxelGenome& g, Rng& rng) {
    if (g.empty()) return;
    if (std::none_of(g.begin(), g.end(), [](const Gene& x) { return x.active; }))
        g[rng.uniform_index(g.size())].active = true;
}

}  // namespace

std::string_view to_string(BlockType t) noexcept {
    switch (t) {
        case BlockType::Cockpit: return "Cockpit";
        case BlockType::Engine: return "Engine";
        case BlockType::Thruster: return "Thruster";
        case BlockType::Armor: return "Armor";
        case BlockType::Container: return "Container";
    }
    return "?";
}

VoxelStructure decode(const VoxelGenome& genome) {
    VoxelStructure s;
    for (const auto& g : genome)
        if (g.active) s.blocks.push_back({g.x, g.y, g.z, g.type});
    if (s.blocks.empty()) throw InvalidGenome("genome has no active genes");
    return s;
}

Violations constraint_violations(const VoxelStructure& s) {
    Violations v;
    std::map<Cell3, int> occupancy;
    for (const auto& b : s.blocks) ++occupancy[{b.x, b.y, b.z}];
    for (const auto& [cell, k] : occupancy)
        if (k >= 2) ++v.intersections;
    for (auto required : kRequiredTypes) {
        const bool present =
            std::any_of(s.blocks.begin(), s.blocks.end(), [&](const Block& b) { return b.type == required; });
        if (!present) ++v.missing_required;
    }
    return v;
}

MetricVector metrics(const VoxelStructure& s) {
    if (s.blocks.empty()) throw InvalidStructure("metrics of an empty structure");
    const auto functional =
        std::count_if(s.blocks.begin(), s.blocks.end(), [](const Block& b) { return is_functional(b.type); });
    const Bounds bb = bounds_of(s);
    std::array<int, 3> ext{bb.extent(0), bb.extent(1), bb.extent(2)};
    std::sort(ext.begin(), ext.end(), std::greater<>{});
    const double volume = static_cast<double>(ext[0]) * ext[1] * ext[2];

    MetricVector mv;
    mv.functional_ratio = static_cast<double>(functional) / static_cast<double>(s.blocks.size());
    mv.fill_ratio = static_cast<double>(filled_cells(s).size()) / volume;
    mv.major_medium = static_cast<double>(ext[0]) / ext[1];
    mv.major_smallest = static_cast<double>(ext[0]) / ext[2];
    return mv;
}

double symmetry(const VoxelStructure& s) {
    if (s.blocks.empty()) throw InvalidStructure("symmetry of an empty structure");
    const auto cells = filled_cells(s);
    const Bounds bb = bounds_of(s);
    double best = 0.0;
    for (int axis = 0; axis < 3; ++axis) {
        std::size_t matched = 0;
        for (const auto& c : cells) {
            Cell3 r = c;
            r[axis] = bb.lo[axis] + bb.hi[axis] - c[axis];
            if (cells.contains(r)) ++matched;
        }
        best = std::max(best, static_cast<double>(matched) / static_cast<double>(cells.size()));
    }
    return best;
}

double feasible_fitness(const MetricVector& mv, const VoxelStructure& s, const FitnessTargets& targets) {
    const auto m = mv.as_array();
    double f = 0.0;
    for (std::size_t k = 0; k < 4; ++k) {
        const double d = m[k] - targets.center[k];
        f += std::exp(-(d * d) / (2.0 * targets.width[k] * targets.width[k]));
    }
    return f + targets.symmetry_weight * symmetry(s);
}

Behavior behavior(const MetricVector& mv) { return {mv.major_medium, mv.major_smallest}; }

std::vector<double> features(const VoxelStructure& s, std::size_t genome_length, int lattice) {
    const MetricVector mv = metrics(s);
    const Violations v = constraint_violations(s);
    const double len = static_cast<double>(genome_length);
    const double max_intersections = std::max(1.0, std::floor(len / 2.0));

    std::array<double, kBlockTypeCount> counts{};
    for (const auto& b : s.blocks) counts[static_cast<std::size_t>(b.type)] += 1.0;

    std::vector<double> f;
    f.reserve(kFeatureDim);
    for (double c : counts) f.push_back(c / len);
    f.push_back(static_cast<double>(s.blocks.size()) / len);
    f.push_back(mv.functional_ratio);
    f.push_back(mv.fill_ratio);
    f.push_back(mv.major_medium / lattice);
    f.push_back(mv.major_smallest / lattice);
    f.push_back(v.intersections / max_intersections);
    f.push_back(v.missing_required / static_cast<double>(kRequiredTypes.size()));
    for (auto& x : f) x = std::clamp(x, 0.0, 1.0);
    return f;
}

void write_structure(std::ostream& out, const VoxelStructure& s) {
    for (const auto& b : s.blocks) fmt::print(out, "{} {} {} {}\n", b.x, b.y, b.z, to_string(b.type));
}

void validate(const VoxelConfig& cfg) {
    if (cfg.lattice < 1) throw ConfigError("voxel.lattice", "must be at least 1");
    if (cfg.genome_length < 1) throw ConfigError("voxel.genome_length", "must be at least 1");
    if (cfg.initial_active_probability < 0.0 || cfg.initial_active_probability > 1.0)
        throw ConfigError("voxel.initial_active_probability", "must lie in [0, 1]");
    for (std::size_t k = 0; k < 4; ++k)
        if (!(cfg.targets.width[k] > 0.0))
            throw ConfigError(fmt::format("voxel.targets.width[{}]", k), "must be positive");
    if (cfg.targets.symmetry_weight < 0.0)
        throw ConfigError("voxel.targets.symmetry_weight", "must be non-negative");
}

VoxelDomain::VoxelDomain(VoxelConfig cfg) : cfg_(cfg) { validate(cfg_); }

VoxelGenome VoxelDomain::random_genome(Rng& rng) const {
    int lo = 0, hi = cfg_.lattice - 1;
    if (cfg_.initial_extent > 0) {
        const int mid = cfg_.lattice / 2;
        lo = std::max(0, mid - cfg_.initial_extent);
        hi = std::min(cfg_.lattice - 1, mid + cfg_.initial_extent - 1);
    }
    VoxelGenome g(cfg_.genome_length);
    for (auto& gene : g) {
        gene.x = rng.uniform_int(lo, hi);
        gene.y = rng.uniform_int(lo, hi);
        gene.z = rng.uniform_int(lo, hi);
        gene.type = static_cast<BlockType>(rng.uniform_index(kBlockTypeCount));
        gene.active = rng.bernoulli(cfg_.initial_active_probability);
    }
    repair(g, rng);
    return g;
}

Evaluation VoxelDomain::evaluate_genome(const VoxelGenome& g) const {
    if (g.size() != cfg_.genome_length) throw InvalidGenome("genome length does not match the domain");
    const VoxelStructure s = decode(g);
    const MetricVector mv = metrics(s);
    Evaluation e;
    e.violations = constraint_violations(s).total();
    e.feasible_fitness = e.violations == 0 ? feasible_fitness(mv, s, cfg_.targets) : 0.0;
    e.behavior = behavior(mv);
    e.features = features(s, cfg_.genome_length, cfg_.lattice);
    return e;
}

std::pair<VoxelGenome, VoxelGenome> VoxelDomain::crossover(const VoxelGenome& a, const VoxelGenome& b,
                                                           Rng& rng) const {
    if (a.size() != b.size()) throw GenomeMismatch("crossover of genomes with different lengths");
    const std::size_t cut = rng.uniform_index(a.size() + 1);
    VoxelGenome c1(a.size()), c2(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        c1[i] = i < cut ? a[i] : b[i];
        c2[i] = i < cut ? b[i] : a[i];
    }
    return {std::move(c1), std::move(c2)};
}

VoxelGenome VoxelDomain::mutate(const VoxelGenome& g, double rate, Rng& rng) const {
    VoxelGenome out = g;
    if (rate <= 0.0) return out;
    for (auto& gene : out) {
        if (!rng.bernoulli(rate)) continue;
        const double u = rng.uniform();
        if (u < 0.25) {
            gene.active = !gene.active;
        } else if (u < 0.75) {
            int* coord[3] = {&gene.x, &gene.y, &gene.z};
            int& c = *coord[rng.uniform_index(3)];
            c = std::clamp(c + (rng.bernoulli(0.5) ? 1 : -1), 0, cfg_.lattice - 1);
        } else {
            gene.type = static_cast<BlockType>(rng.uniform_index(kBlockTypeCount));
        }
    }
    repair(out, rng);
    return out;
}

}  // namespace cqd::voxel
