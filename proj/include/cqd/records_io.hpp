#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cqd/solution.hpp"

namespace cqd {

/// Header of every history file.
inline constexpr const char* kHistoryHeader =
    "generation,elite_feas_fitness,avg_feas_fitness,elite_infeas_fitness,avg_infeas_fitness,coverage";

/// Per-generation CSV; the coverage cell is blank when the record has none.
void write_history(std::ostream& out, std::span<const GenerationRecord> history);
std::vector<GenerationRecord> read_history(std::istream& in);

struct MeanStd {
    double mean = 0.0;
    double std = 0.0;
};

/// Arithmetic mean and sample standard deviation (zero for a single value).
MeanStd mean_std(std::span<const double> values);

/// Final-generation statistics of one method across seeds.
struct Summary {
    std::string method;
    std::string domain;
    int generations = 0;
    std::vector<std::uint64_t> seeds;
    MeanStd elite_feasible;
    MeanStd avg_feasible;
    std::optional<MeanStd> elite_infeasible;
    std::optional<MeanStd> avg_infeasible;
    std::optional<MeanStd> coverage;
    /// Final elite feasible fitness per seed, same order as `seeds`.
    std::vector<double> final_elite_by_seed;
};

/// Summary from per-seed final rows. Optional columns are filled when requested.
Summary summarize(std::string method, std::string domain, int generations, std::span<const std::uint64_t> seeds,
                  std::span<const GenerationRecord> final_rows, bool with_infeasible, bool with_coverage);

/// Header line plus one data row; list cells are ';'-separated.
void write_summary(std::ostream& out, const Summary& s);
/// Throws IoError on malformed input.
Summary read_summary(std::istream& in);
Summary read_summary(const std::filesystem::path& path);

/// Shortest round-trip-stable decimal text used in every CSV.
std::string format_real(double v);

}  // namespace cqd
