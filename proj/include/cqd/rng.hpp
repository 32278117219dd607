#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>

namespace cqd {

/// Seeded random stream.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the
/// standard. All derived draws (bounded integers, reals, normals) are
/// computed here rather than through <random> distributions, whose
/// algorithms differ between standard library vendors.
class Rng {
public:
    explicit Rng(std::uint64_t seed);

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t draws() const noexcept { return draws_; }

    std::uint64_t next();

    /// Uniform in [0, n). n must be positive.
    std::size_t uniform_index(std::size_t n);
    /// Uniform in [lo, hi] for integers.
    int uniform_int(int lo, int hi);
    /// Uniform in [0, 1) with 53 bits of precision.
    double uniform();
    double uniform(double lo, double hi);
    /// Standard normal (Box-Muller, second variate cached).
    double normal();
    bool bernoulli(double p);

    /// Independent stream derived from this stream's seed and a tag.
    Rng derive(std::uint64_t tag) const;

private:
    std::uint64_t seed_;
    std::uint64_t draws_ = 0;
    std::mt19937_64 engine_;
    std::optional<double> cached_normal_;
};

/// SplitMix64 finalizer, used to decorrelate derived seeds.
std::uint64_t mix_seed(std::uint64_t x) noexcept;

}  // namespace cqd
