#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cqd/numeric.hpp"
#include "cqd/voxel.hpp"

using namespace cqd;
using namespace cqd::voxel;

namespace {

constexpr BlockType C = BlockType::Cockpit, E = BlockType::Engine, T = BlockType::Thruster, A = BlockType::Armor,
                    K = BlockType::Container;

VoxelStructure st(std::vector<Block> b) { return VoxelStructure{std::move(b)}; }

VoxelStructure random_structure(Rng& rng, int lattice, std::size_t max_blocks) {
    VoxelStructure s;
    const std::size_t n = 1 + rng.uniform_index(max_blocks);
    for (std::size_t i = 0; i < n; ++i)
        s.blocks.push_back({rng.uniform_int(0, lattice - 1), rng.uniform_int(0, lattice - 1),
                            rng.uniform_int(0, lattice - 1), static_cast<BlockType>(rng.uniform_index(5))});
    return s;
}

// Dense-array recomputation of the reflection overlap.
double symmetry_oracle(const VoxelStructure& s) {
    bool occ[16][16][16] = {};
    int lo[3] = {99, 99, 99}, hi[3] = {-1, -1, -1};
    for (const auto& b : s.blocks) {
        occ[b.x][b.y][b.z] = true;
        const int c[3] = {b.x, b.y, b.z};
        for (int a = 0; a < 3; ++a) lo[a] = std::min(lo[a], c[a]), hi[a] = std::max(hi[a], c[a]);
    }
    double best = 0.0;
    for (int axis = 0; axis < 3; ++axis) {
        int filled = 0, hit = 0;
        for (int x = 0; x < 16; ++x)
            for (int y = 0; y < 16; ++y)
                for (int z = 0; z < 16; ++z) {
                    if (!occ[x][y][z]) continue;
                    ++filled;
                    int r[3] = {x, y, z};
                    r[axis] = lo[axis] + hi[axis] - r[axis];
                    hit += occ[r[0]][r[1]][r[2]];
                }
        best = std::max(best, static_cast<double>(hit) / filled);
    }
    return best;
}

double fitness_oracle(const VoxelStructure& s) {
    int lo[3] = {99, 99, 99}, hi[3] = {-1, -1, -1};
    bool occ[16][16][16] = {};
    int functional = 0, distinct = 0;
    for (const auto& b : s.blocks) {
        functional += b.type == C || b.type == E || b.type == T;
        if (!occ[b.x][b.y][b.z]) ++distinct;
        occ[b.x][b.y][b.z] = true;
        const int c[3] = {b.x, b.y, b.z};
        for (int a = 0; a < 3; ++a) lo[a] = std::min(lo[a], c[a]), hi[a] = std::max(hi[a], c[a]);
    }
    double e[3];
    for (int a = 0; a < 3; ++a) e[a] = hi[a] - lo[a] + 1;
    std::sort(e, e + 3);
    const double m[4] = {static_cast<double>(functional) / static_cast<double>(s.blocks.size()),
                         distinct / (e[0] * e[1] * e[2]), e[2] / e[1], e[2] / e[0]};
    const double mu[4] = {0.5, 0.5, 1.5, 2.0}, sd[4] = {0.2, 0.2, 0.5, 0.8};
    double f = 0.0;
    for (int k = 0; k < 4; ++k) f += std::exp(-(m[k] - mu[k]) * (m[k] - mu[k]) / (2 * sd[k] * sd[k]));
    return f + symmetry_oracle(s);
}

}  // namespace

TEST_CASE("decode") {
    VoxelGenome g(32);
    CHECK_THROWS_AS(decode(g), InvalidGenome);
    g[5] = {0, 0, 0, C, true};
    CHECK(decode(g).blocks.size() == 1);
    g[6] = {0, 0, 0, E, true};
    CHECK(decode(g).blocks.size() == 2);
    for (auto& x : g) x.active = true;
    CHECK(decode(g).blocks.size() == 32);
}

TEST_CASE("constraint_violations examples") {
    CHECK(constraint_violations(st({{0, 0, 0, C}, {1, 0, 0, E}, {2, 0, 0, T}})).total() == 0);
    CHECK(constraint_violations(st({{0, 0, 0, C}, {1, 0, 0, E}})).total() == 1);
    const auto v = constraint_violations(st({{0, 0, 0, C}, {0, 0, 0, C}}));
    CHECK(v.intersections == 1);
    CHECK(v.missing_required == 2);
    CHECK(v.total() == 3);
    // three blocks in one cell is still one intersection
    CHECK(constraint_violations(st({{0, 0, 0, C}, {0, 0, 0, E}, {0, 0, 0, T}})).intersections == 1);
}

TEST_CASE("constraint_violations brute force on a 2x2x2 lattice") {
    // every multiset of up to three blocks over 8 cells and 5 types
    std::vector<Block> all;
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            for (int z = 0; z < 2; ++z)
                for (int t = 0; t < 5; ++t) all.push_back({x, y, z, static_cast<BlockType>(t)});
    std::size_t checked = 0;
    auto check = [&](const std::vector<Block>& blocks) {
        bool distinct = true;
        for (std::size_t i = 0; i < blocks.size(); ++i)
            for (std::size_t j = i + 1; j < blocks.size(); ++j)
                if (blocks[i].x == blocks[j].x && blocks[i].y == blocks[j].y && blocks[i].z == blocks[j].z)
                    distinct = false;
        bool has[5] = {};
        for (const auto& b : blocks) has[static_cast<int>(b.type)] = true;
        const bool ok = distinct && has[0] && has[1] && has[2];
        CHECK((constraint_violations(st(blocks)).total() == 0) == ok);
        ++checked;
    };
    for (std::size_t i = 0; i < all.size(); ++i) {
        check({all[i]});
        for (std::size_t j = i; j < all.size(); ++j) {
            check({all[i], all[j]});
            for (std::size_t k = j; k < all.size(); ++k) check({all[i], all[j], all[k]});
        }
    }
    CHECK(checked == 40 + 820 + 11480);
}

TEST_CASE("metrics examples") {
    std::vector<Block> cube;
    int n = 0;
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            for (int z = 0; z < 2; ++z) cube.push_back({x, y, z, n++ < 4 ? E : A});
    auto m = metrics(st(cube));
    CHECK(m.functional_ratio == 0.5);
    CHECK(m.fill_ratio == 1.0);
    CHECK(m.major_medium == 1.0);
    CHECK(m.major_smallest == 1.0);
    CHECK(behavior(m) == Behavior{1.0, 1.0});

    m = metrics(st({{0, 0, 0, C}, {1, 0, 0, E}, {2, 0, 0, T}, {3, 0, 0, T}}));
    CHECK(m.functional_ratio == 1.0);
    CHECK(m.fill_ratio == 1.0);
    CHECK(m.major_medium == 4.0);
    CHECK(m.major_smallest == 4.0);
    CHECK(behavior(m) == Behavior{4.0, 4.0});

    m = metrics(st({{0, 0, 0, C}, {2, 0, 0, E}, {1, 1, 0, A}}));
    CHECK(m.fill_ratio == 0.5);
    CHECK(m.major_medium == 1.5);
    CHECK(m.major_smallest == 3.0);
    CHECK(behavior(m) == Behavior{1.5, 3.0});

    CHECK_THROWS_AS(metrics(st({})), InvalidStructure);
}

TEST_CASE("metric invariants on random structures") {
    Rng rng(12);
    for (int i = 0; i < 2000; ++i) {
        const auto s = random_structure(rng, 8, 32);
        const auto m = metrics(s);
        CHECK(m.major_smallest >= m.major_medium);
        CHECK(m.major_medium >= 1.0);
        CHECK(m.functional_ratio >= 0.0);
        CHECK(m.functional_ratio <= 1.0);
        CHECK(m.fill_ratio > 0.0);
        CHECK(m.fill_ratio <= 1.0);
    }
}

TEST_CASE("feasible_fitness") {
    SUBCASE("targets hit and symmetric") {
        MetricVector mv{0.5, 0.5, 1.5, 2.0};
        CHECK(feasible_fitness(mv, st({{0, 0, 0, C}}), {}) == doctest::Approx(5.0));
    }
    SUBCASE("one width away, no symmetry bonus") {
        MetricVector mv{0.7, 0.3, 2.0, 2.8};
        FitnessTargets t;
        t.symmetry_weight = 0.0;
        CHECK(feasible_fitness(mv, st({{0, 0, 0, C}}), t) == doctest::Approx(4.0 * std::exp(-0.5)));
        CHECK(4.0 * std::exp(-0.5) == doctest::Approx(2.4261).epsilon(1e-4));
    }
    SUBCASE("single block is symmetric") { CHECK(symmetry(st({{3, 4, 5, A}})) == 1.0); }
    SUBCASE("independent recomputation on random structures") {
        Rng rng(13);
        for (int i = 0; i < 1000; ++i) {
            const auto s = random_structure(rng, 8, 32);
            const double f = feasible_fitness(metrics(s), s, {});
            CHECK(f == doctest::Approx(fitness_oracle(s)).epsilon(1e-12));
            CHECK(f > 0.0);
            CHECK(f <= 5.0);
        }
    }
}

TEST_CASE("symmetry invariances") {
    Rng rng(14);
    for (int i = 0; i < 500; ++i) {
        auto s = random_structure(rng, 8, 20);
        const double base = symmetry(s);
        CHECK(base == symmetry_oracle(s));
        auto moved = s;
        const int dx = rng.uniform_int(0, 7), dy = rng.uniform_int(0, 7), dz = rng.uniform_int(0, 7);
        for (auto& b : moved.blocks) b.x += dx, b.y += dy, b.z += dz;
        CHECK(symmetry(moved) == base);
        auto relabeled = s;
        for (auto& b : relabeled.blocks) b.type = static_cast<BlockType>((static_cast<int>(b.type) + 2) % 5);
        CHECK(symmetry(relabeled) == base);
    }
}

TEST_CASE("features") {
    const auto f = features(st({{0, 0, 0, C}}), 32, 8);
    REQUIRE(f.size() == kFeatureDim);
    CHECK(f[0] == 1.0 / 32);
    for (int k = 1; k < 5; ++k) CHECK(f[k] == 0.0);
    CHECK(f[5] == 1.0 / 32);
    CHECK(f[11] == doctest::Approx(2.0 / 3.0));
    Rng rng(15);
    for (int i = 0; i < 500; ++i) {
        const auto s = random_structure(rng, 8, 32);
        const auto a = features(s, 32, 8);
        CHECK(a == features(s, 32, 8));
        CHECK(a.size() == kFeatureDim);
        for (double x : a) {
            CHECK(x >= 0.0);
            CHECK(x <= 1.0);
        }
    }
}

TEST_CASE("variation operators") {
    VoxelDomain d;
    Rng rng(16);
    const auto a = d.random_genome(rng);
    const auto b = d.random_genome(rng);
    SUBCASE("crossover children mix parents gene-wise") {
        for (int t = 0; t < 100; ++t) {
            const auto [c1, c2] = d.crossover(a, b, rng);
            REQUIRE(c1.size() == a.size());
            for (std::size_t i = 0; i < a.size(); ++i) {
                CHECK(((c1[i] == a[i] && c2[i] == b[i]) || (c1[i] == b[i] && c2[i] == a[i])));
            }
        }
    }
    SUBCASE("length mismatch") {
        VoxelGenome shorter(a.begin(), a.begin() + 10);
        CHECK_THROWS_AS(d.crossover(a, shorter, rng), GenomeMismatch);
    }
    SUBCASE("rate 0 is identity") { CHECK(d.mutate(a, 0.0, rng) == a); }
    SUBCASE("repair keeps at least one active gene") {
        VoxelGenome g(32);
        g[0] = {1, 1, 1, C, true};
        for (int t = 0; t < 500; ++t) {
            const auto m = d.mutate(g, 1.0, rng);
            CHECK(std::any_of(m.begin(), m.end(), [](const Gene& x) { return x.active; }));
            for (const auto& x : m) {
                CHECK(x.x >= 0);
                CHECK(x.x < 8);
            }
        }
    }
    SUBCASE("random genomes decode") {
        for (int t = 0; t < 200; ++t) CHECK_NOTHROW(decode(d.random_genome(rng)));
    }
}

TEST_CASE("structure export") {
    std::ostringstream out;
    write_structure(out, st({{1, 2, 3, T}, {0, 0, 0, K}}));
    CHECK(out.str() == "1 2 3 Thruster\n0 0 0 Container\n");
}

TEST_CASE("numeric domain") {
    using namespace cqd::numeric;
    SUBCASE("origin, no constraints") {
        NumericDomain d(NumericConfig{});
        const auto e = d.evaluate_genome({0.0, 0.0});
        CHECK(e.violations == 0);
        CHECK(e.feasible_fitness == 1.0);
    }
    SUBCASE("x1 <= 0") {
        NumericConfig cfg;
        cfg.constraints = {{{1.0, 0.0}, 0.0}};
        NumericDomain d(cfg);
        CHECK(d.evaluate_genome({1.0, 0.0}).violations == 1);
    }
    SUBCASE("two violated constraints") {
        NumericConfig cfg;
        cfg.constraints = {{{1.0, 0.0}, 0.0}, {{0.0, 1.0}, 0.0}};
        NumericDomain d(cfg);
        const auto e = d.evaluate_genome({1.0, 1.0});
        CHECK(e.violations == 2);
        CHECK(1.0 / e.violations == 0.5);
    }
    SUBCASE("fitness formula and clamped behavior") {
        NumericConfig cfg;
        cfg.dimension = 3;
        NumericDomain d(cfg);
        CHECK(d.fitness({1.0, 2.0, 2.0}) == doctest::Approx(std::exp(-9.0 / 6.0)));
        CHECK(d.evaluate_genome({9.0, -7.0, 0.0}).behavior == Behavior{5.0, -5.0});
        CHECK(d.feature_dim() == 4);
        CHECK_THROWS_AS(d.evaluate_genome({0.0}), InvalidGenome);
    }
    SUBCASE("mutation stays in the box") {
        NumericDomain d(NumericConfig{});
        Rng rng(3);
        std::vector<double> x{4.9, -4.9};
        for (int t = 0; t < 1000; ++t) {
            x = d.mutate(x, 1.0, rng);
            for (double v : x) {
                CHECK(v >= -5.0);
                CHECK(v <= 5.0);
            }
        }
    }
}
