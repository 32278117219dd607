#include "cqd/config.hpp"

#include <fstream>
#include <set>

#include <fmt/format.h>

namespace cqd {

using nlohmann::json;

const std::vector<Method>& all_methods() {
    static const std::vector<Method> methods = [] {
        using A = Algorithm;
        using S = Statistic;
        using E = EmitterMode;
        return std::vector<Method>{
            {"FI2Pop", A::Fi2Pop, false, S::Mean, E::Random},
            {"M-FI2Pop", A::Fi2Pop, true, S::Max, E::Random},
            {"Mu-FI2Pop", A::Fi2Pop, true, S::Mean, E::Random},
            {"m-FI2Pop", A::Fi2Pop, true, S::Min, E::Random},
            {"CMAPElites", A::CmapElites, false, S::Mean, E::Random},
            {"M-CMAPElites", A::CmapElites, true, S::Max, E::Random},
            {"Mu-CMAPElites", A::CmapElites, true, S::Mean, E::Random},
            {"m-CMAPElites", A::CmapElites, true, S::Min, E::Random},
            {"EM-CMAPElites", A::CmapElites, true, S::Max, E::Optimizing},
            {"EMu-CMAPElites", A::CmapElites, true, S::Mean, E::Optimizing},
            {"Em-CMAPElites", A::CmapElites, true, S::Min, E::Optimizing},
            {"EB-CMAPElites", A::CmapElites, true, S::Mean, E::Bandit},
        };
    }();
    return methods;
}

Method method_by_name(std::string_view name) {
    for (const auto& m : all_methods())
        if (m.name == name) return m;
    throw ConfigError("method", fmt::format("unknown method '{}'", name));
}

std::vector<std::uint64_t> sequential_seeds(std::uint64_t base, std::size_t count) {
    std::vector<std::uint64_t> seeds(count);
    for (std::size_t i = 0; i < count; ++i) seeds[i] = base + i;
    return seeds;
}

ExperimentConfig default_config() {
    ExperimentConfig cfg;
    cfg.methods = all_methods();
    cfg.seeds = sequential_seeds(0, 20);
    return cfg;
}

GridConfig ExperimentConfig::effective_grid() const {
    GridConfig g = qd.grid;
    if (!grid_ranges_set && domain == DomainKind::Numeric) {
        g.bc1_range = {numeric.lower, numeric.upper};
        g.bc2_range = {numeric.lower, numeric.upper};
    }
    return g;
}

namespace {

/// Walks one JSON object, remembering which keys were read so leftovers can
/// be reported as unknown.
class ObjectReader {
public:
    ObjectReader(const json& obj, std::string path) : obj_(obj), path_(std::move(path)) {
        if (!obj_.is_object()) throw ConfigError(path_.empty() ? "<root>" : path_, "expected an object");
    }

    /// Throws for any key that was never read.
    void finish() const {
        for (const auto& [key, value] : obj_.items())
            if (!seen_.contains(key)) throw ConfigError(field(key), "unknown key");
    }

    std::string field(std::string_view key) const {
        return path_.empty() ? std::string(key) : fmt::format("{}.{}", path_, key);
    }

    const json* get(std::string_view key) {
        seen_.insert(std::string(key));
        auto it = obj_.find(key);
        return it == obj_.end() ? nullptr : &*it;
    }

    void number(std::string_view key, double& out) {
        if (const json* v = get(key)) {
            if (!v->is_number()) throw ConfigError(field(key), "expected a number");
            out = v->get<double>();
        }
    }

    template <typename Int>
    void integer(std::string_view key, Int& out) {
        if (const json* v = get(key)) {
            if (!v->is_number_integer()) throw ConfigError(field(key), "expected an integer");
            if constexpr (std::is_unsigned_v<Int>) {
                if (v->is_number_unsigned() || v->get<std::int64_t>() >= 0)
                    out = static_cast<Int>(v->get<std::uint64_t>());
                else
                    throw ConfigError(field(key), "must be non-negative");
            } else {
                out = static_cast<Int>(v->get<std::int64_t>());
            }
        }
    }

    void boolean(std::string_view key, bool& out) {
        if (const json* v = get(key)) {
            if (!v->is_boolean()) throw ConfigError(field(key), "expected true or false");
            out = v->get<bool>();
        }
    }

    bool interval(std::string_view key, Interval& out) {
        const json* v = get(key);
        if (!v) return false;
        if (!v->is_array() || v->size() != 2 || !(*v)[0].is_number() || !(*v)[1].is_number())
            throw ConfigError(field(key), "expected [lo, hi]");
        out = {(*v)[0].get<double>(), (*v)[1].get<double>()};
        return true;
    }

    void array4(std::string_view key, std::array<double, 4>& out) {
        const json* v = get(key);
        if (!v) return;
        if (!v->is_array() || v->size() != 4) throw ConfigError(field(key), "expected 4 numbers");
        for (std::size_t k = 0; k < 4; ++k) {
            if (!(*v)[k].is_number()) throw ConfigError(fmt::format("{}[{}]", field(key), k), "expected a number");
            out[k] = (*v)[k].get<double>();
        }
    }

private:
    const json& obj_;
    std::string path_;
    std::set<std::string, std::less<>> seen_;
};

void parse_variation(ObjectReader& r, VariationConfig& v) {
    r.number("crossover_probability", v.crossover_probability);
    r.number("mutation_probability", v.mutation_probability);
}

}  // namespace

ExperimentConfig parse_config(const json& doc) {
    ExperimentConfig cfg = default_config();
    ObjectReader root(doc, "");

    if (const json* m = root.get("method")) {
        cfg.methods.clear();
        if (m->is_string()) {
            if (m->get<std::string>() == "all")
                cfg.methods = all_methods();
            else
                cfg.methods.push_back(method_by_name(m->get<std::string>()));
        } else if (m->is_array()) {
            for (const auto& item : *m) {
                if (!item.is_string()) throw ConfigError("method", "expected method names");
                cfg.methods.push_back(method_by_name(item.get<std::string>()));
            }
        } else {
            throw ConfigError("method", "expected a name or a list of names");
        }
    }
    if (const json* d = root.get("domain")) {
        const auto name = d->is_string() ? d->get<std::string>() : std::string{};
        if (name == "voxel")
            cfg.domain = DomainKind::Voxel;
        else if (name == "numeric")
            cfg.domain = DomainKind::Numeric;
        else
            throw ConfigError("domain", "expected \"voxel\" or \"numeric\"");
    }
    root.integer("generations", cfg.generations);

    std::uint64_t& base_seed = cfg.base_seed;
    root.integer("base_seed", base_seed);
    if (const json* s = root.get("seeds")) {
        if (s->is_number_unsigned() || s->is_number_integer()) {
            if (s->get<std::int64_t>() < 1) throw ConfigError("seeds", "must be at least 1");
            cfg.seeds = sequential_seeds(base_seed, s->get<std::size_t>());
        } else if (s->is_array()) {
            cfg.seeds.clear();
            for (const auto& v : *s) {
                if (!v.is_number_integer()) throw ConfigError("seeds", "expected integer seeds");
                cfg.seeds.push_back(v.get<std::uint64_t>());
            }
        } else {
            throw ConfigError("seeds", "expected a count or a list of seeds");
        }
    } else {
        cfg.seeds = sequential_seeds(base_seed, cfg.seeds.size());
    }
    if (const json* o = root.get("out_dir")) {
        if (!o->is_string()) throw ConfigError("out_dir", "expected a path");
        cfg.out_dir = o->get<std::string>();
    }
    root.integer("threads", cfg.threads);

    if (const json* f = root.get("fi2pop")) {
        ObjectReader r(*f, "fi2pop");
        r.integer("offspring_per_generation", cfg.fi2pop.offspring_per_generation);
        parse_variation(r, cfg.fi2pop.variation);
        r.integer("population_capacity", cfg.fi2pop.population_capacity);
        r.integer("initial_samples", cfg.fi2pop.initial_samples);
        r.integer("init_budget", cfg.fi2pop.init_budget);
        r.finish();
    }
    if (const json* s = root.get("sifa")) {
        ObjectReader r(*s, "sifa");
        r.number("epsilon_init", cfg.sifa.epsilon_init);
        r.integer("train_epochs_per_update", cfg.sifa.train_epochs_per_update);
        r.number("learning_rate", cfg.sifa.learning_rate);
        r.boolean("dump_ledger", cfg.sifa.dump_ledger);
        r.finish();
    }
    if (const json* q = root.get("qd")) {
        ObjectReader r(*q, "qd");
        r.integer("bins_per_axis", cfg.qd.grid.bins_per_axis);
        const bool r1 = r.interval("bc1_range", cfg.qd.grid.bc1_range);
        const bool r2 = r.interval("bc2_range", cfg.qd.grid.bc2_range);
        cfg.grid_ranges_set = r1 || r2;
        r.integer("feasible_capacity", cfg.qd.grid.feasible_capacity);
        r.integer("infeasible_capacity", cfg.qd.grid.infeasible_capacity);
        r.integer("offspring_per_generation", cfg.qd.offspring_per_generation);
        parse_variation(r, cfg.qd.variation);
        r.integer("initial_samples", cfg.qd.initial_samples);
        r.integer("init_budget", cfg.qd.init_budget);
        r.number("bandit_epsilon", cfg.qd.bandit_epsilon);
        r.boolean("export_grid", cfg.export_grid);
        r.finish();
    }
    if (const json* v = root.get("voxel")) {
        ObjectReader r(*v, "voxel");
        r.integer("lattice", cfg.voxel.lattice);
        r.integer("genome_length", cfg.voxel.genome_length);
        r.number("initial_active_probability", cfg.voxel.initial_active_probability);
        r.integer("initial_extent", cfg.voxel.initial_extent);
        r.boolean("export_elite", cfg.export_elite);
        if (const json* t = r.get("targets")) {
            ObjectReader tr(*t, "voxel.targets");
            tr.array4("center", cfg.voxel.targets.center);
            tr.array4("width", cfg.voxel.targets.width);
            tr.number("symmetry_weight", cfg.voxel.targets.symmetry_weight);
            tr.finish();
        }
        r.finish();
    }
    if (const json* n = root.get("numeric")) {
        ObjectReader r(*n, "numeric");
        r.integer("dimension", cfg.numeric.dimension);
        r.number("lower", cfg.numeric.lower);
        r.number("upper", cfg.numeric.upper);
        r.number("mutation_sigma", cfg.numeric.mutation_sigma);
        if (const json* cs = r.get("constraints")) {
            if (!cs->is_array()) throw ConfigError("numeric.constraints", "expected a list");
            cfg.numeric.constraints.clear();
            for (std::size_t j = 0; j < cs->size(); ++j) {
                const std::string path = fmt::format("numeric.constraints[{}]", j);
                ObjectReader cr((*cs)[j], path);
                numeric::HalfSpace h;
                const json* a = cr.get("a");
                if (!a || !a->is_array()) throw ConfigError(path + ".a", "expected a coefficient list");
                for (const auto& x : *a) {
                    if (!x.is_number()) throw ConfigError(path + ".a", "expected numbers");
                    h.a.push_back(x.get<double>());
                }
                cr.number("b", h.b);
                cr.finish();
                cfg.numeric.constraints.push_back(std::move(h));
            }
        }
        r.finish();
    }
    root.finish();
    return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config", fmt::format("cannot open '{}'", path.string()));
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("config", fmt::format("invalid JSON in '{}': {}", path.string(), e.what()));
    }
    return parse_config(doc);
}

namespace {

void validate_variation(const VariationConfig& v, const std::string& prefix) {
    if (v.crossover_probability < 0.0 || v.crossover_probability > 1.0)
        throw ConfigError(prefix + ".crossover_probability", "must lie in [0, 1]");
    if (v.mutation_probability < 0.0 || v.mutation_probability > 1.0)
        throw ConfigError(prefix + ".mutation_probability", "must lie in [0, 1]");
}

void validate_range(const Interval& r, const std::string& field) {
    if (!(r.hi > r.lo)) throw ConfigError(field, "range must satisfy lo < hi");
}

}  // namespace

void validate(const Fi2PopConfig& cfg) {
    if (cfg.generations < 1) throw ConfigError("generations", "must be at least 1");
    if (cfg.offspring_per_generation < 1) throw ConfigError("fi2pop.offspring_per_generation", "must be at least 1");
    if (cfg.population_capacity < 1) throw ConfigError("fi2pop.population_capacity", "must be at least 1");
    if (cfg.init_budget < 1) throw ConfigError("fi2pop.init_budget", "must be at least 1");
    validate_variation(cfg.variation, "fi2pop");
}

void validate(const QdConfig& cfg) {
    if (cfg.generations < 1) throw ConfigError("generations", "must be at least 1");
    if (cfg.offspring_per_generation < 1) throw ConfigError("qd.offspring_per_generation", "must be at least 1");
    if (cfg.grid.bins_per_axis < 1) throw ConfigError("qd.bins_per_axis", "must be at least 1");
    validate_range(cfg.grid.bc1_range, "qd.bc1_range");
    validate_range(cfg.grid.bc2_range, "qd.bc2_range");
    if (cfg.grid.feasible_capacity < 1) throw ConfigError("qd.feasible_capacity", "must be at least 1");
    if (cfg.grid.infeasible_capacity < 1) throw ConfigError("qd.infeasible_capacity", "must be at least 1");
    if (cfg.init_budget < 1) throw ConfigError("qd.init_budget", "must be at least 1");
    if (cfg.bandit_epsilon < 0.0 || cfg.bandit_epsilon > 1.0) throw ConfigError("qd.bandit_epsilon", "must lie in [0, 1]");
    validate_variation(cfg.variation, "qd");
}

void validate(const ExperimentConfig& cfg) {
    if (cfg.methods.empty()) throw ConfigError("method", "no method selected");
    if (cfg.generations < 1) throw ConfigError("generations", "must be at least 1");
    if (cfg.seeds.empty()) throw ConfigError("seeds", "at least one seed is required");
    if (std::set<std::uint64_t>(cfg.seeds.begin(), cfg.seeds.end()).size() != cfg.seeds.size())
        throw ConfigError("seeds", "seeds must be distinct");
    if (cfg.threads < 0) throw ConfigError("threads", "must be non-negative");

    Fi2PopConfig f = cfg.fi2pop;
    f.generations = cfg.generations;
    validate(f);
    QdConfig q = cfg.qd;
    q.generations = cfg.generations;
    q.grid = cfg.effective_grid();
    validate(q);

    if (!(cfg.sifa.epsilon_init > 0.0)) throw ConfigError("sifa.epsilon_init", "must be positive");
    if (!(cfg.sifa.learning_rate > 0.0)) throw ConfigError("sifa.learning_rate", "must be positive");
    if (cfg.sifa.train_epochs_per_update < 1) throw ConfigError("sifa.train_epochs_per_update", "must be at least 1");

    if (cfg.domain == DomainKind::Voxel) voxel::validate(cfg.voxel);
    else numeric::validate(cfg.numeric);

    for (const auto& m : cfg.methods) {
        if (m.emitter != EmitterMode::Random && m.algorithm != Algorithm::CmapElites)
            throw ConfigError("method", fmt::format("'{}' uses an emitter but is not a CMAP-Elites method", m.name));
        if (m.emitter == EmitterMode::Bandit && !m.sifa)
            throw ConfigError("method", fmt::format("'{}' needs the SIFA policy for its bandit", m.name));
    }
}

}  // namespace cqd
