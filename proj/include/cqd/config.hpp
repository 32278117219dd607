#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "cqd/cmap_elites.hpp"
#include "cqd/fi2pop.hpp"
#include "cqd/numeric.hpp"
#include "cqd/sifa_policy.hpp"
#include "cqd/voxel.hpp"

namespace cqd {

enum class Algorithm { Fi2Pop, CmapElites };

/// A named experiment method: algorithm, infeasible-fitness policy and, for
/// CMAP-Elites, the emitter mode.
struct Method {
    std::string name;
    Algorithm algorithm = Algorithm::Fi2Pop;
    bool sifa = false;
    Statistic statistic = Statistic::Mean;
    EmitterMode emitter = EmitterMode::Random;

    bool reports_coverage() const noexcept { return algorithm == Algorithm::CmapElites; }
    /// Infeasible fitness columns are summarised only for fixed-statistic SIFA methods.
    bool summarises_infeasible() const noexcept { return sifa && emitter != EmitterMode::Bandit; }
};

/// All twelve methods in reporting order.
const std::vector<Method>& all_methods();
/// Throws ConfigError("method", ...) for an unknown name.
Method method_by_name(std::string_view name);

enum class DomainKind { Voxel, Numeric };

struct SifaSettings {
    double epsilon_init = 0.001;
    std::size_t train_epochs_per_update = 5;
    double learning_rate = 0.01;
    bool dump_ledger = false;

    SifaConfig to_config(Statistic stat) const { return {epsilon_init, stat, train_epochs_per_update, learning_rate}; }
};

struct ExperimentConfig {
    std::vector<Method> methods;
    DomainKind domain = DomainKind::Voxel;
    int generations = 50;
    std::uint64_t base_seed = 0;
    std::vector<std::uint64_t> seeds;
    std::filesystem::path out_dir = "results";
    /// OpenMP threads for the seed loop; 0 keeps the runtime default.
    int threads = 0;

    Fi2PopConfig fi2pop;
    SifaSettings sifa;
    QdConfig qd;
    /// Grid ranges given explicitly in the config; otherwise chosen per domain.
    bool grid_ranges_set = false;
    bool export_grid = true;
    bool export_elite = true;

    voxel::VoxelConfig voxel;
    numeric::NumericConfig numeric;

    /// Grid configuration with domain-default behavior ranges applied.
    GridConfig effective_grid() const;
};

/// base, base+1, ..., base+count-1
std::vector<std::uint64_t> sequential_seeds(std::uint64_t base, std::size_t count);

/// Defaults: every method, voxel domain, 50 generations, 20 seeds from 0.
ExperimentConfig default_config();

/// Parses a JSON document over the defaults. Unknown keys and type errors
/// raise ConfigError with the dotted field path.
ExperimentConfig parse_config(const nlohmann::json& doc);
ExperimentConfig load_config(const std::filesystem::path& path);

/// Cross-field checks; throws ConfigError.
void validate(const ExperimentConfig& cfg);

}  // namespace cqd
