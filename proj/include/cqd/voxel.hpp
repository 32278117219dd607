#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <string_view>
#include <utility>
#include <vector>

#include "cqd/rng.hpp"
#include "cqd/solution.hpp"

namespace cqd::voxel {

enum class BlockType { Cockpit, Engine, Thruster, Armor, Container };

inline constexpr std::size_t kBlockTypeCount = 5;
inline constexpr std::array<BlockType, 3> kRequiredTypes{BlockType::Cockpit, BlockType::Engine, BlockType::Thruster};

constexpr bool is_functional(BlockType t) noexcept {
    return t == BlockType::Cockpit || t == BlockType::Engine || t == BlockType::Thruster;
}

std::string_view to_string(BlockType t) noexcept;

struct Block {
    int x = 0, y = 0, z = 0;
    BlockType type = BlockType::Armor;
    friend bool operator==(const Block&, const Block&) = default;
};

struct VoxelStructure {
    std::vector<Block> blocks;
};

struct Gene {
    int x = 0, y = 0, z = 0;
    BlockType type = BlockType::Armor;
    bool active = false;
    friend bool operator==(const Gene&, const Gene&) = default;
};

using VoxelGenome = std::vector<Gene>;

struct MetricVector {
    double functional_ratio = 0.0;  // m1
    double fill_ratio = 0.0;        // m2
    double major_medium = 1.0;      // m3
    double major_smallest = 1.0;    // m4

    std::array<double, 4> as_array() const noexcept {
        return {functional_ratio, fill_ratio, major_medium, major_smallest};
    }
};

/// Gaussian kernels around target metric values plus a symmetry bonus.
struct FitnessTargets {
    std::array<double, 4> center{0.5, 0.5, 1.5, 2.0};
    std::array<double, 4> width{0.2, 0.2, 0.5, 0.8};
    double symmetry_weight = 1.0;
};

struct Violations {
    int intersections = 0;
    int missing_required = 0;
    int total() const noexcept { return intersections + missing_required; }
};

/// One block per active gene, duplicates kept. Throws InvalidGenome when no gene is active.
VoxelStructure decode(const VoxelGenome& genome);

/// One violation per cell holding two or more blocks, plus one per missing required type.
Violations constraint_violations(const VoxelStructure& s);

/// Throws InvalidStructure on an empty structure.
MetricVector metrics(const VoxelStructure& s);

/// Best reflection overlap about a bounding-box mid-plane, in [0, 1].
double symmetry(const VoxelStructure& s);

double feasible_fitness(const MetricVector& mv, const VoxelStructure& s, const FitnessTargets& targets);

/// (major/medium, major/smallest).
Behavior behavior(const MetricVector& mv);

inline constexpr std::size_t kFeatureDim = 12;

/// Counts per type, total, the four metrics, intersections and missing types,
/// each scaled to [0, 1] by its lattice-determined maximum.
std::vector<double> features(const VoxelStructure& s, std::size_t genome_length, int lattice);

/// Plain-text export, one `x y z TYPE` line per block.
void write_structure(std::ostream& out, const VoxelStructure& s);

struct VoxelConfig {
    int lattice = 8;
    std::size_t genome_length = 32;
    /// Probability that a freshly sampled gene is active.
    double initial_active_probability = 0.5;
    /// Half-width of the cube random genes are placed in, centred in the lattice.
    /// Zero or negative means the whole lattice.
    int initial_extent = 0;
    FitnessTargets targets;
};

void validate(const VoxelConfig& cfg);

class VoxelDomain {
public:
    using Genome = VoxelGenome;

    explicit VoxelDomain(VoxelConfig cfg = {});

    const VoxelConfig& config() const noexcept { return cfg_; }

    Genome random_genome(Rng& rng) const;
    Evaluation evaluate_genome(const Genome& g) const;
    /// One-point crossover at a uniform cut in [0, length]. Throws GenomeMismatch.
    std::pair<Genome, Genome> crossover(const Genome& a, const Genome& b, Rng& rng) const;
    /// Per-gene perturbation with probability `rate`, then repair.
    Genome mutate(const Genome& g, double rate, Rng& rng) const;
    std::size_t feature_dim() const noexcept { return kFeatureDim; }

private:
    VoxelConfig cfg_;
};

}  // namespace cqd::voxel
