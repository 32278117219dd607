#include <doctest.h>

#include <cmath>
#include <limits>
#include <map>
#include <sstream>

#include "cqd/bandit.hpp"
#include "cqd/cmap_elites.hpp"
#include "cqd/voxel.hpp"
#include "toy_domain.hpp"

using namespace cqd;

namespace {

Solution<int> at(double bc1, double bc2, double fitness, SolutionId id, bool feasible = true) {
    Solution<int> s;
    s.id = id;
    s.behavior = {bc1, bc2};
    s.fitness = fitness;
    s.feasibility = feasible ? Feasibility::feasible() : Feasibility::infeasible(1);
    return s;
}

// centre of cell (i, j) on the default [1,5]^2 32x32 grid
Behavior centre(std::size_t i, std::size_t j) {
    const double w = 4.0 / 32.0;
    return {1.0 + (static_cast<double>(i) + 0.5) * w, 1.0 + (static_cast<double>(j) + 0.5) * w};
}

Solution<int> in_cell(std::size_t i, std::size_t j, double fitness, SolutionId id, bool feasible = true) {
    const auto b = centre(i, j);
    return at(b.bc1, b.bc2, fitness, id, feasible);
}

}  // namespace

TEST_CASE("bin_index") {
    GridConfig g;
    CHECK(bin_index({1.0, 1.0}, g) == Cell{0, 0});
    CHECK(bin_index({5.0, 5.0}, g) == Cell{31, 31});
    CHECK(bin_index({9.0, 0.2}, g) == Cell{31, 0});
    CHECK(bin_index({1.125, 1.124}, g) == Cell{1, 0});
    CHECK_THROWS_AS(bin_index({std::nan(""), 1.0}, g), InvalidBehavior);
    CHECK_THROWS_AS(bin_index({1.0, std::numeric_limits<double>::infinity()}, g), InvalidBehavior);
}

TEST_CASE("grid insert") {
    Grid<int> grid(GridConfig{});
    SUBCASE("feasible into an empty bin") {
        grid.insert(at(1.0, 1.0, 2.0, 1));
        CHECK(grid.at({0, 0}).feasible.size() == 1);
        CHECK(grid.at({0, 0}).infeasible.empty());
    }
    SUBCASE("full bin of better solutions is unchanged") {
        for (SolutionId i = 0; i < 5; ++i) grid.insert(at(1.0, 1.0, 5.0, i));
        grid.insert(at(1.0, 1.0, 1.0, 99));
        const auto& pop = grid.at({0, 0}).feasible;
        REQUIRE(pop.size() == 5);
        for (const auto& m : pop.members()) CHECK(m.id != 99);
    }
    SUBCASE("infeasible goes to the infeasible subpopulation only") {
        grid.insert(at(1.0, 1.0, 0.5, 1, false));
        CHECK(grid.at({0, 0}).feasible.empty());
        CHECK(grid.at({0, 0}).infeasible.size() == 1);
        CHECK(grid.coverage() == 0.0);
    }
    SUBCASE("every member sits in the cell its behavior maps to") {
        Rng rng(4);
        for (SolutionId i = 0; i < 3000; ++i)
            grid.insert(at(rng.uniform(0.0, 6.0), rng.uniform(0.0, 6.0), rng.uniform(), i, rng.bernoulli(0.5)));
        for (const auto& b : grid.bins()) {
            CHECK(b.feasible.size() <= 5);
            CHECK(b.infeasible.size() <= 5);
            for (const auto* pop : {&b.feasible, &b.infeasible})
                for (const auto& m : pop->members()) CHECK(bin_index(m.behavior, grid.config()) == b.cell);
        }
    }
}

TEST_CASE("random emitter") {
    Grid<int> grid(GridConfig{});
    Rng rng(1);
    CHECK_THROWS_AS(random_emitter(grid, rng), EmptyGrid);

    grid.insert(in_cell(4, 7, 1.0, 0));
    CHECK(random_emitter(grid, rng) == Cell{4, 7});

    grid.insert(in_cell(9, 2, 1.0, 1, false));
    std::map<Cell, int> counts;
    for (int k = 0; k < 10000; ++k) ++counts[random_emitter(grid, rng)];
    CHECK(counts.size() == 2);
    for (const auto& [c, n] : counts) {
        CHECK(n >= 4700);
        CHECK(n <= 5300);
    }
}

TEST_CASE("optimizing emitter") {
    Grid<int> grid(GridConfig{});
    CHECK_THROWS_AS(optimizing_emitter(grid), EmptyGrid);
    SUBCASE("argmax") {
        grid.insert(in_cell(0, 0, 2.0, 0));
        grid.insert(in_cell(3, 1, 2.5, 1));
        CHECK(optimizing_emitter(grid) == Cell{3, 1});
    }
    SUBCASE("infeasible-only content") {
        grid.insert(in_cell(2, 2, 0.5, 0, false));
        CHECK(optimizing_emitter(grid) == Cell{2, 2});
    }
    SUBCASE("lexicographic tie-break") {
        grid.insert(in_cell(1, 1, 2.0, 0));
        grid.insert(in_cell(0, 3, 2.0, 1));
        CHECK(optimizing_emitter(grid) == Cell{0, 3});
    }
    SUBCASE("property: attains the global per-bin maximum") {
        Rng rng(3);
        for (int trial = 0; trial < 50; ++trial) {
            Grid<int> g(GridConfig{4, {1.0, 5.0}, {1.0, 5.0}, 2, 2});
            const int n = 1 + static_cast<int>(rng.uniform_index(10));
            for (int k = 0; k < n; ++k)
                g.insert(at(rng.uniform(1.0, 5.0), rng.uniform(1.0, 5.0), static_cast<double>(rng.uniform_index(4)),
                            static_cast<SolutionId>(k), rng.bernoulli(0.5)));
            double best = -1.0;
            Cell first{};
            for (const auto& b : g.bins())
                if (!b.empty() && b.best_fitness() > best) best = b.best_fitness(), first = b.cell;
            CHECK(optimizing_emitter(g) == first);
        }
    }
}

TEST_CASE("coverage") {
    Grid<int> grid(GridConfig{});
    CHECK(grid.coverage() == 0.0);
    SolutionId id = 0;
    for (std::size_t i = 0; i < 8; ++i)
        for (std::size_t j = 0; j < 8; ++j) grid.insert(in_cell(i, j, 1.0, id++));
    CHECK(grid.coverage() == 0.0625);
}

TEST_CASE("coverage ceiling under bc2 >= bc1") {
    Grid<int> grid(GridConfig{});
    SolutionId id = 0;
    const int steps = 400;
    for (int a = 0; a <= steps; ++a)
        for (int b = a; b <= steps; ++b) {
            const double m3 = 1.0 + 4.0 * a / steps;
            const double m4 = 1.0 + 4.0 * b / steps;
            grid.insert(at(m3, m4, 1.0, id++));
        }
    CHECK(grid.coverage() <= 0.5 + 1.0 / 32.0);
    for (const auto& b : grid.bins())
        if (!b.feasible.empty()) CHECK(b.cell.j >= b.cell.i);
}

TEST_CASE("grid csv lists non-empty cells") {
    Grid<int> grid(GridConfig{});
    grid.insert(in_cell(1, 2, 1.5, 0));
    grid.insert(in_cell(3, 4, 0.5, 1, false));
    std::ostringstream out;
    grid.write_csv(out);
    CHECK(out.str() == "i,j,best_feasible_fitness,feasible_count,infeasible_count\n1,2,1.5,1,0\n3,4,,0,1\n");
}

TEST_CASE("bandit select") {
    Rng rng(0);
    SUBCASE("greedy picks the best value") {
        BanditState b({{}, {}}, 0.0, 1.0, 0.1);
        b.set_estimate(0, 0.1, 1);
        b.set_estimate(1, 0.9, 1);
        CHECK(b.select(rng) == 1);
    }
    SUBCASE("greedy ties go to arm 0") {
        BanditState b(default_arms(), 0.0, 1.0, 0.1);
        CHECK(b.select(rng) == 0);
    }
    SUBCASE("epsilon 1 is uniform") {
        BanditState b({{}, {}, {}, {}}, 1.0, 1.0, 0.1);
        std::vector<int> counts(4);
        for (int k = 0; k < 10000; ++k) ++counts[b.select(rng)];
        for (int c : counts) {
            CHECK(c >= 2300);
            CHECK(c <= 2700);
        }
    }
}

TEST_CASE("bandit update") {
    SUBCASE("fitness gain only") {
        BanditState b(default_arms(), 0.2, 1.0, 0.05);
        CHECK(b.update(0, 1.1, 0.05) == doctest::Approx(0.1));
    }
    SUBCASE("no change") {
        BanditState b(default_arms(), 0.2, 1.0, 0.05);
        CHECK(b.update(0, 1.0, 0.05) == 0.0);
        CHECK(b.previous_avg_feasible_fitness() == 1.0);
    }
    SUBCASE("running mean") {
        BanditState b(default_arms(), 0.2, 1.0, 0.05);
        b.set_estimate(2, 0.0, 1);
        // reward 0.5 via a 50% fitness gain
        b.update(2, 1.5, 0.05);
        CHECK(b.values()[2] == doctest::Approx(0.25));
        CHECK(b.pulls()[2] == 2);
    }
    SUBCASE("zero baseline uses the guard") {
        CHECK(pct_increase(0.0, 1.0) == doctest::Approx(1.0 / kPctDelta));
        CHECK(pct_increase(2.0, 1.0) == -0.5);
    }
    SUBCASE("property: values equal the mean of each arm's rewards") {
        BanditState b(default_arms(), 0.3, 1.0, 0.05);
        Rng rng(6);
        std::vector<std::vector<double>> log(b.arms().size());
        for (int t = 0; t < 500; ++t) {
            const auto arm = b.select(rng);
            log[arm].push_back(b.update(arm, rng.uniform(0.5, 2.0), rng.uniform(0.01, 0.1)));
        }
        for (std::size_t a = 0; a < log.size(); ++a) {
            CHECK(b.pulls()[a] == log[a].size());
            if (log[a].empty()) continue;
            double s = 0.0;
            for (double r : log[a]) s += r;
            CHECK(b.values()[a] == doctest::Approx(s / static_cast<double>(log[a].size())).epsilon(1e-12));
        }
    }
}

TEST_CASE("default arms") {
    const auto arms = default_arms();
    REQUIRE(arms.size() == 6);
    CHECK(arms[0].emitter == EmitterKind::Random);
    CHECK(arms[3].emitter == EmitterKind::Optimizing);
    CHECK(arms[4].statistic == Statistic::Max);
}

TEST_CASE("qd_step") {
    StandardInfeasibleFitness policy;
    QdConfig cfg;
    Rng rng(0);
    SUBCASE("feasible-only bin breeds only feasible parents") {
        ToyDomain d{-1};
        QdState<int> st(cfg.grid);
        auto s = evaluate(-2, d);
        s.id = st.ids.next();
        st.grid.insert(s);
        const auto events = qd_step(st, EmitterKind::Random, d, policy, cfg, rng);
        CHECK(events.size() == cfg.offspring_per_generation);
        for (const auto& e : events) CHECK(e.parent_feasible);
        // children at g = -3 land in their own cell
        CHECK(st.grid.at(bin_index(evaluate(-3, d).behavior, cfg.grid)).feasible.size() == 5);
        CHECK(st.grid.at(bin_index(s.behavior, cfg.grid)).feasible.size() == 1);
    }
    SUBCASE("empty grid") {
        ToyDomain d{0};
        QdState<int> st(cfg.grid);
        CHECK_THROWS_AS(qd_step(st, EmitterKind::Random, d, policy, cfg, rng), EmptyGrid);
    }
}

TEST_CASE("CMAP-Elites runs are deterministic and coverage never drops") {
    voxel::VoxelDomain d;
    QdConfig cfg;
    for (auto mode : {EmitterMode::Random, EmitterMode::Optimizing, EmitterMode::Bandit}) {
        auto once = [&] {
            Rng rng(21);
            SifaPolicy sifa(voxel::kFeatureDim, rng.derive(0x5eed).seed());
            QdState<voxel::VoxelGenome> st(cfg.grid);
            std::vector<double> rewards;
            const auto h = run_cmap_elites(d, sifa, mode, cfg, rng, &st, &rewards);
            std::ostringstream grid;
            st.grid.write_csv(grid);
            return std::make_tuple(h, grid.str(), rewards);
        };
        const auto [h1, g1, r1] = once();
        const auto [h2, g2, r2] = once();
        CHECK(h1.size() == 50);
        CHECK(g1 == g2);
        CHECK(r1 == r2);
        for (std::size_t t = 1; t < h1.size(); ++t) CHECK(*h1[t].coverage >= *h1[t - 1].coverage);
        for (std::size_t t = 0; t < h1.size(); ++t) {
            CHECK(h1[t].avg_feasible_fitness == h2[t].avg_feasible_fitness);
            CHECK(h1[t].arm.has_value() == (mode == EmitterMode::Bandit));
        }
        if (mode == EmitterMode::Bandit) CHECK(r1.size() == 50);
    }
}

TEST_CASE("bandit mode requires the SIFA policy") {
    voxel::VoxelDomain d;
    StandardInfeasibleFitness policy;
    Rng rng(0);
    CHECK_THROWS_AS(run_cmap_elites(d, policy, EmitterMode::Bandit, QdConfig{}, rng), Error);
}
