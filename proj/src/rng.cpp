#include "cqd/rng.hpp"

#include <cassert>
#include <cmath>
#include <limits>
#include <numbers>

namespace cqd {

std::uint64_t mix_seed(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

Rng::Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

std::uint64_t Rng::next() {
    ++draws_;
    return engine_();
}

std::size_t Rng::uniform_index(std::size_t n) {
    assert(n > 0);
    const auto bound = static_cast<std::uint64_t>(n);
    // rejection sampling on the largest multiple of bound
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x = next();
    while (x >= limit) x = next();
    return static_cast<std::size_t>(x % bound);
}

int Rng::uniform_int(int lo, int hi) {
    assert(hi >= lo);
    return lo + static_cast<int>(uniform_index(static_cast<std::size_t>(hi - lo) + 1));
}

double Rng::uniform() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) {
    return lo + (hi - lo) * uniform();
}

double Rng::normal() {
    if (cached_normal_) {
        const double z = *cached_normal_;
        cached_normal_.reset();
        return z;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    cached_normal_ = r * std::sin(theta);
    return r * std::cos(theta);
}

bool Rng::bernoulli(double p) {
    if (p <= 0.0) return false;
    if (p >= 1.0) return true;
    return uniform() < p;
}

Rng Rng::derive(std::uint64_t tag) const {
    return Rng(mix_seed(seed_ ^ mix_seed(tag)));
}

}  // namespace cqd
