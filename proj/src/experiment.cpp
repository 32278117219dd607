#include "cqd/experiment.hpp"

#include <exception>
#include <fstream>
#include <sstream>

#include <fmt/format.h>
#include <omp.h>

#include "cqd/bandit.hpp"
#include "cqd/cmap_elites.hpp"
#include "cqd/fi2pop.hpp"
#include "cqd/numeric.hpp"
#include "cqd/sifa_policy.hpp"
#include "cqd/voxel.hpp"

namespace cqd {

namespace {

constexpr std::uint64_t kSurrogateStream = 0x5eed;

template <typename Genome>
std::string best_structure_text(const Population<Genome>& pop) {
    if constexpr (std::is_same_v<Genome, voxel::VoxelGenome>) {
        if (const auto* best = pop.best()) {
            std::ostringstream out;
            voxel::write_structure(out, voxel::decode(best->genome));
            return out.str();
        }
    }
    return {};
}

template <typename Genome>
std::string best_structure_text(const Grid<Genome>& grid) {
    if constexpr (std::is_same_v<Genome, voxel::VoxelGenome>) {
        const Solution<Genome>* best = nullptr;
        for (const auto& b : grid.bins())
            if (const auto* s = b.feasible.best(); s && (!best || fitter(*s, *best))) best = s;
        if (best) {
            std::ostringstream out;
            voxel::write_structure(out, voxel::decode(best->genome));
            return out.str();
        }
    }
    return {};
}

template <Domain D>
RunOutput run_on(const D& domain, const ExperimentConfig& cfg, const Method& method, std::uint64_t seed) {
    RunOutput out;
    out.seed = seed;
    Rng rng(seed);

    StandardInfeasibleFitness standard;
    std::optional<SifaPolicy> sifa;
    if (method.sifa)
        sifa.emplace(domain.feature_dim(), rng.derive(kSurrogateStream).seed(), cfg.sifa.to_config(method.statistic));
    InfeasibleFitnessPolicy& policy = sifa ? static_cast<InfeasibleFitnessPolicy&>(*sifa) : standard;

    if (method.algorithm == Algorithm::Fi2Pop) {
        Fi2PopConfig fc = cfg.fi2pop;
        fc.generations = cfg.generations;
        Fi2PopState<typename D::Genome> state(fc.population_capacity);
        out.history = run_fi2pop(domain, policy, fc, rng, &state);
        if (cfg.export_elite) out.elite_structure = best_structure_text(state.feasible);
    } else {
        QdConfig qc = cfg.qd;
        qc.generations = cfg.generations;
        qc.grid = cfg.effective_grid();
        QdState<typename D::Genome> state(qc.grid);
        std::vector<double> rewards;
        out.history = run_cmap_elites(domain, policy, method.emitter, qc, rng, &state, &rewards);
        if (method.emitter == EmitterMode::Bandit) {
            const auto arms = default_arms();
            for (std::size_t g = 0; g < out.history.size(); ++g) {
                const auto& r = out.history[g];
                out.arms.push_back({r.generation, *r.arm, to_string(arms[*r.arm]), rewards[g],
                                    r.elite_infeasible_fitness, r.avg_infeasible_fitness});
            }
        }
        if (cfg.export_grid) {
            std::ostringstream grid;
            state.grid.write_csv(grid);
            out.grid_csv = grid.str();
        }
        if (cfg.export_elite) out.elite_structure = best_structure_text(state.grid);
    }
    if (sifa && cfg.sifa.dump_ledger) {
        std::ostringstream ledger;
        sifa->write_ledger_csv(ledger);
        out.ledger_csv = ledger.str();
    }
    return out;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError(fmt::format("cannot write '{}'", path.string()));
    f << text;
}

}  // namespace

std::string domain_name(DomainKind d) { return d == DomainKind::Voxel ? "voxel" : "numeric"; }

RunOutput run_single(const ExperimentConfig& cfg, const Method& method, std::uint64_t seed) {
    if (cfg.domain == DomainKind::Voxel) return run_on(voxel::VoxelDomain(cfg.voxel), cfg, method, seed);
    return run_on(numeric::NumericDomain(cfg.numeric), cfg, method, seed);
}

ExperimentResult execute(const ExperimentConfig& cfg, Parallelism mode) {
    validate(cfg);
    ExperimentResult result;
    const std::size_t n_methods = cfg.methods.size();
    const std::size_t n_seeds = cfg.seeds.size();
    std::vector<RunOutput> runs(n_methods * n_seeds);
    std::vector<std::exception_ptr> errors(runs.size());

    const auto total = static_cast<std::ptrdiff_t>(runs.size());
    auto one = [&](std::ptrdiff_t k) {
        try {
            const auto m = static_cast<std::size_t>(k) / n_seeds;
            const auto s = static_cast<std::size_t>(k) % n_seeds;
            runs[k] = run_single(cfg, cfg.methods[m], cfg.seeds[s]);
        } catch (...) {
            errors[k] = std::current_exception();
        }
    };
    if (mode == Parallelism::OpenMP) {
        const int threads = cfg.threads > 0 ? cfg.threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(threads)
        for (std::ptrdiff_t k = 0; k < total; ++k) one(k);
    } else {
        for (std::ptrdiff_t k = 0; k < total; ++k) one(k);
    }
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);

    for (std::size_t m = 0; m < n_methods; ++m) {
        MethodResult mr;
        mr.method = cfg.methods[m];
        std::vector<GenerationRecord> finals;
        for (std::size_t s = 0; s < n_seeds; ++s) {
            auto& run = runs[m * n_seeds + s];
            finals.push_back(run.history.back());
            mr.runs.push_back(std::move(run));
        }
        mr.summary = summarize(mr.method.name, domain_name(cfg.domain), cfg.generations, cfg.seeds, finals,
                               mr.method.summarises_infeasible(), mr.method.reports_coverage());
        result.methods.push_back(std::move(mr));
    }
    return result;
}

void write_outputs(const ExperimentConfig& cfg, const ExperimentResult& result) {
    std::error_code ec;
    std::filesystem::create_directories(cfg.out_dir, ec);
    if (ec) throw IoError(fmt::format("cannot create '{}': {}", cfg.out_dir.string(), ec.message()));

    for (const auto& mr : result.methods) {
        const std::string& name = mr.method.name;
        for (const auto& run : mr.runs) {
            std::ostringstream hist;
            write_history(hist, run.history);
            write_file(cfg.out_dir / fmt::format("history_{}_{}.csv", name, run.seed), hist.str());
            if (!run.arms.empty()) {
                std::ostringstream arms;
                arms << "generation,arm,label,reward,elite_infeas_fitness,avg_infeas_fitness\n";
                for (const auto& a : run.arms)
                    arms << a.generation << ',' << a.arm << ',' << a.label << ',' << format_real(a.reward) << ','
                         << format_real(a.elite_infeasible_fitness) << ',' << format_real(a.avg_infeasible_fitness)
                         << '\n';
                write_file(cfg.out_dir / fmt::format("arms_{}_{}.csv", name, run.seed), arms.str());
            }
            if (!run.ledger_csv.empty())
                write_file(cfg.out_dir / fmt::format("ledger_{}_{}.csv", name, run.seed), run.ledger_csv);
            if (!run.grid_csv.empty())
                write_file(cfg.out_dir / fmt::format("grid_{}_{}.csv", name, run.seed), run.grid_csv);
            if (!run.elite_structure.empty())
                write_file(cfg.out_dir / fmt::format("elite_{}_{}.txt", name, run.seed), run.elite_structure);
        }
        std::ostringstream summary;
        write_summary(summary, mr.summary);
        write_file(cfg.out_dir / fmt::format("summary_{}.csv", name), summary.str());
    }
}

ExperimentResult run_experiment(const ExperimentConfig& cfg, Parallelism mode) {
    auto result = execute(cfg, mode);
    write_outputs(cfg, result);
    return result;
}

}  // namespace cqd
