// Command-line experiment runner.
//
//   cqd run --config configs/voxel.json [--method Mu-FI2Pop] [--seeds 20] [--out-dir results]
//   cqd compare --inputs results/summary_FI2Pop.csv results/summary_Mu-FI2Pop.csv

#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "cqd/compare.hpp"
#include "cqd/config.hpp"
#include "cqd/experiment.hpp"

namespace {

std::vector<cqd::Method> parse_methods(const std::string& list) {
    std::vector<cqd::Method> out;
    if (list == "all") return cqd::all_methods();
    std::stringstream ss(list);
    std::string name;
    while (std::getline(ss, name, ','))
        if (!name.empty()) out.push_back(cqd::method_by_name(name));
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Constrained quality-diversity experiments (FI-2Pop, SIFA, CMAP-Elites)"};
    app.require_subcommand(1);

    auto* run = app.add_subcommand("run", "Run an experiment matrix and write CSV results");
    std::string config_path, method, out_dir;
    std::size_t seeds = 0;
    int generations = 0;
    std::uint64_t base_seed = 0;
    int threads = -1;
    bool serial = false;
    run->add_option("--config", config_path, "JSON experiment config")->required()->check(CLI::ExistingFile);
    run->add_option("--method", method, "Method name, comma-separated list, or 'all'");
    run->add_option("--seeds", seeds, "Number of sequential seeds")->check(CLI::PositiveNumber);
    auto* base_opt = run->add_option("--base-seed", base_seed, "First seed of the sequence");
    run->add_option("--generations", generations, "Generations per run")->check(CLI::PositiveNumber);
    run->add_option("--out-dir", out_dir, "Output directory");
    run->add_option("--threads", threads, "OpenMP threads for the seed loop (0 = runtime default)");
    run->add_flag("--serial", serial, "Run seeds one after another on the calling thread");

    auto* cmp = app.add_subcommand("compare", "Compare summary files with paired sign tests");
    std::vector<std::string> inputs;
    cmp->add_option("--inputs", inputs, "summary_<method>.csv files")->required()->expected(2, -1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (*run) {
            auto cfg = cqd::load_config(config_path);
            if (!method.empty()) cfg.methods = parse_methods(method);
            if (*base_opt) {
                cfg.base_seed = base_seed;
                cfg.seeds = cqd::sequential_seeds(base_seed, cfg.seeds.size());
            }
            if (seeds > 0) cfg.seeds = cqd::sequential_seeds(cfg.base_seed, seeds);
            if (generations > 0) cfg.generations = generations;
            if (!out_dir.empty()) cfg.out_dir = out_dir;
            if (threads >= 0) cfg.threads = threads;

            const auto result =
                cqd::run_experiment(cfg, serial ? cqd::Parallelism::Serial : cqd::Parallelism::OpenMP);
            for (const auto& m : result.methods) {
                const auto& s = m.summary;
                std::cout << fmt::format("{:<16} elite {:.4f} ± {:.4f}  avg {:.4f} ± {:.4f}", s.method,
                                         s.elite_feasible.mean, s.elite_feasible.std, s.avg_feasible.mean,
                                         s.avg_feasible.std);
                if (s.coverage) std::cout << fmt::format("  coverage {:.4f} ± {:.4f}", s.coverage->mean, s.coverage->std);
                std::cout << '\n';
            }
            std::cout << "results written to " << cfg.out_dir.string() << '\n';
        } else if (*cmp) {
            std::vector<cqd::Summary> summaries;
            for (const auto& p : inputs) summaries.push_back(cqd::read_summary(p));
            cqd::write_report(std::cout, cqd::compare(std::move(summaries)));
        }
    } catch (const cqd::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
