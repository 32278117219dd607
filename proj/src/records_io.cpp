#include "cqd/records_io.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "cqd/errors.hpp"

namespace cqd {

namespace {

constexpr const char* kSummaryHeader =
    "method,domain,generations,n_seeds,seeds,"
    "elite_feas_fitness_mean,elite_feas_fitness_std,avg_feas_fitness_mean,avg_feas_fitness_std,"
    "elite_infeas_fitness_mean,elite_infeas_fitness_std,avg_infeas_fitness_mean,avg_infeas_fitness_std,"
    "coverage_mean,coverage_std,final_elite_feas_by_seed";

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream ss(line);
    while (std::getline(ss, cell, sep)) out.push_back(cell);
    if (!line.empty() && line.back() == sep) out.emplace_back();
    return out;
}

double parse_real(const std::string& s, const char* what) {
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw IoError(fmt::format("malformed {} value '{}'", what, s));
    }
}

std::optional<double> parse_optional(const std::string& s, const char* what) {
    if (s.empty()) return std::nullopt;
    return parse_real(s, what);
}

std::string optional_cell(const std::optional<double>& v) { return v ? format_real(*v) : std::string{}; }

void chomp(std::string& line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
}

}  // namespace

std::string format_real(double v) { return fmt::format("{}", v); }

void write_history(std::ostream& out, std::span<const GenerationRecord> history) {
    out << kHistoryHeader << '\n';
    for (const auto& r : history) {
        out << r.generation << ',' << format_real(r.elite_feasible_fitness) << ','
            << format_real(r.avg_feasible_fitness) << ',' << format_real(r.elite_infeasible_fitness) << ','
            << format_real(r.avg_infeasible_fitness) << ',' << optional_cell(r.coverage) << '\n';
    }
}

std::vector<GenerationRecord> read_history(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw IoError("empty history file");
    chomp(line);
    if (line != kHistoryHeader) throw IoError("unexpected history header");
    std::vector<GenerationRecord> out;
    while (std::getline(in, line)) {
        chomp(line);
        if (line.empty()) continue;
        const auto cells = split(line, ',');
        if (cells.size() != 6) throw IoError(fmt::format("history row has {} cells, expected 6", cells.size()));
        GenerationRecord r;
        r.generation = static_cast<int>(parse_real(cells[0], "generation"));
        r.elite_feasible_fitness = parse_real(cells[1], "elite_feas_fitness");
        r.avg_feasible_fitness = parse_real(cells[2], "avg_feas_fitness");
        r.elite_infeasible_fitness = parse_real(cells[3], "elite_infeas_fitness");
        r.avg_infeasible_fitness = parse_real(cells[4], "avg_infeas_fitness");
        r.coverage = parse_optional(cells[5], "coverage");
        out.push_back(r);
    }
    return out;
}

MeanStd mean_std(std::span<const double> values) {
    MeanStd m;
    if (values.empty()) return m;
    const double n = static_cast<double>(values.size());
    m.mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
    if (values.size() > 1) {
        double ss = 0.0;
        for (double v : values) ss += (v - m.mean) * (v - m.mean);
        m.std = std::sqrt(ss / (n - 1.0));
    }
    return m;
}

Summary summarize(std::string method, std::string domain, int generations, std::span<const std::uint64_t> seeds,
                  std::span<const GenerationRecord> final_rows, bool with_infeasible, bool with_coverage) {
    if (seeds.size() != final_rows.size()) throw Error("one final row per seed is required");
    Summary s;
    s.method = std::move(method);
    s.domain = std::move(domain);
    s.generations = generations;
    s.seeds.assign(seeds.begin(), seeds.end());

    auto column = [&](auto getter) {
        std::vector<double> v;
        v.reserve(final_rows.size());
        for (const auto& r : final_rows) v.push_back(getter(r));
        return v;
    };
    s.final_elite_by_seed = column([](const GenerationRecord& r) { return r.elite_feasible_fitness; });
    s.elite_feasible = mean_std(s.final_elite_by_seed);
    s.avg_feasible = mean_std(column([](const GenerationRecord& r) { return r.avg_feasible_fitness; }));
    if (with_infeasible) {
        s.elite_infeasible = mean_std(column([](const GenerationRecord& r) { return r.elite_infeasible_fitness; }));
        s.avg_infeasible = mean_std(column([](const GenerationRecord& r) { return r.avg_infeasible_fitness; }));
    }
    if (with_coverage) s.coverage = mean_std(column([](const GenerationRecord& r) { return r.coverage.value_or(0.0); }));
    return s;
}

void write_summary(std::ostream& out, const Summary& s) {
    auto pair = [](const std::optional<MeanStd>& m) {
        return m ? format_real(m->mean) + ',' + format_real(m->std) : std::string(",");
    };
    std::string seeds, finals;
    for (std::size_t i = 0; i < s.seeds.size(); ++i) {
        if (i) {
            seeds += ';';
            finals += ';';
        }
        seeds += std::to_string(s.seeds[i]);
        finals += format_real(s.final_elite_by_seed[i]);
    }
    out << kSummaryHeader << '\n';
    out << s.method << ',' << s.domain << ',' << s.generations << ',' << s.seeds.size() << ',' << seeds << ','
        << pair(s.elite_feasible) << ',' << pair(s.avg_feasible) << ',' << pair(s.elite_infeasible) << ','
        << pair(s.avg_infeasible) << ',' << pair(s.coverage) << ',' << finals << '\n';
}

Summary read_summary(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw IoError("empty summary file");
    chomp(line);
    if (line != kSummaryHeader) throw IoError("unexpected summary header");
    if (!std::getline(in, line)) throw IoError("summary file has no data row");
    chomp(line);
    const auto c = split(line, ',');
    if (c.size() != 16) throw IoError(fmt::format("summary row has {} cells, expected 16", c.size()));

    Summary s;
    s.method = c[0];
    s.domain = c[1];
    s.generations = static_cast<int>(parse_real(c[2], "generations"));
    for (const auto& v : split(c[4], ';')) s.seeds.push_back(static_cast<std::uint64_t>(std::stoull(v)));
    if (s.seeds.size() != static_cast<std::size_t>(parse_real(c[3], "n_seeds")))
        throw IoError("n_seeds does not match the seed list");
    auto pair = [&](std::size_t i, const char* what) -> std::optional<MeanStd> {
        const auto mean = parse_optional(c[i], what);
        const auto sd = parse_optional(c[i + 1], what);
        if (!mean || !sd) return std::nullopt;
        return MeanStd{*mean, *sd};
    };
    const auto ef = pair(5, "elite_feas_fitness");
    const auto af = pair(7, "avg_feas_fitness");
    if (!ef || !af) throw IoError("feasible fitness columns are required");
    s.elite_feasible = *ef;
    s.avg_feasible = *af;
    s.elite_infeasible = pair(9, "elite_infeas_fitness");
    s.avg_infeasible = pair(11, "avg_infeas_fitness");
    s.coverage = pair(13, "coverage");
    for (const auto& v : split(c[15], ';')) s.final_elite_by_seed.push_back(parse_real(v, "final_elite_feas"));
    if (s.final_elite_by_seed.size() != s.seeds.size())
        throw IoError("per-seed finals do not match the seed list");
    return s;
}

Summary read_summary(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError(fmt::format("cannot open '{}'", path.string()));
    return read_summary(in);
}

}  // namespace cqd
