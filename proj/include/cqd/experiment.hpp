#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "cqd/config.hpp"
#include "cqd/records_io.hpp"

namespace cqd {

/// Per-generation bandit log entry.
struct ArmRecord {
    int generation = 0;
    std::size_t arm = 0;
    std::string label;
    double reward = 0.0;
    double elite_infeasible_fitness = 0.0;
    double avg_infeasible_fitness = 0.0;
};

/// Everything one (method, seed) run produces.
struct RunOutput {
    std::uint64_t seed = 0;
    std::vector<GenerationRecord> history;
    std::vector<ArmRecord> arms;
    /// Optional text artifacts, empty when not produced.
    std::string ledger_csv;
    std::string grid_csv;
    std::string elite_structure;
};

/// Runs one method on one seed. Pure with respect to the file system.
RunOutput run_single(const ExperimentConfig& cfg, const Method& method, std::uint64_t seed);

struct MethodResult {
    Method method;
    std::vector<RunOutput> runs;  // in cfg.seeds order
    Summary summary;
};

struct ExperimentResult {
    std::vector<MethodResult> methods;
};

enum class Parallelism { Serial, OpenMP };

/// Runs every configured method across all seeds and returns the results
/// without touching the file system.
ExperimentResult execute(const ExperimentConfig& cfg, Parallelism mode = Parallelism::OpenMP);

/// Writes history_<method>_<seed>.csv, summary_<method>.csv and the optional
/// per-run artifacts into cfg.out_dir.
void write_outputs(const ExperimentConfig& cfg, const ExperimentResult& result);

/// validate + execute + write_outputs.
ExperimentResult run_experiment(const ExperimentConfig& cfg, Parallelism mode = Parallelism::OpenMP);

std::string domain_name(DomainKind d);

}  // namespace cqd
