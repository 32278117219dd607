#include "cqd/surrogate.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include <fmt/format.h>

#include "cqd/errors.hpp"
#include "cqd/rng.hpp"

namespace cqd {

namespace {

constexpr std::size_t H = SurrogateModel::kHidden;

void he_init(std::vector<double>& w, std::size_t fan_in, Rng& rng) {
    const double scale = std::sqrt(2.0 / static_cast<double>(fan_in));
    for (auto& x : w) x = scale * rng.normal();
}

}  // namespace

SurrogateModel::SurrogateModel(std::size_t input_dim, std::uint64_t seed, double learning_rate)
    : input_dim_(input_dim),
      learning_rate_(learning_rate),
      w1_(H * input_dim),
      b1_(H, 0.0),
      w2_(H * H),
      b2_(H, 0.0),
      w3_(H) {
    if (input_dim == 0) throw FeatureDimError("surrogate input dimension must be positive");
    Rng rng(seed);
    he_init(w1_, input_dim, rng);
    he_init(w2_, H, rng);
    he_init(w3_, H, rng);
}

void SurrogateModel::check_dim(std::span<const double> features) const {
    if (features.size() != input_dim_)
        throw FeatureDimError(fmt::format("expected {} features, got {}", input_dim_, features.size()));
}

double SurrogateModel::forward(std::span<const double> x, Activations& act) const {
    act.h1.assign(H, 0.0);
    act.h2.assign(H, 0.0);
    for (std::size_t h = 0; h < H; ++h) {
        double z = b1_[h];
        const double* row = &w1_[h * input_dim_];
        for (std::size_t i = 0; i < input_dim_; ++i) z += row[i] * x[i];
        act.h1[h] = z > 0.0 ? z : 0.0;
    }
    for (std::size_t h = 0; h < H; ++h) {
        double z = b2_[h];
        const double* row = &w2_[h * H];
        for (std::size_t j = 0; j < H; ++j) z += row[j] * act.h1[j];
        act.h2[h] = z > 0.0 ? z : 0.0;
    }
    double out = b3_;
    for (std::size_t h = 0; h < H; ++h) out += w3_[h] * act.h2[h];
    act.out = out;
    return out;
}

double SurrogateModel::predict(std::span<const double> features) const {
    check_dim(features);
    Activations act;
    return forward(features, act);
}

std::vector<double> SurrogateModel::predict_batch_serial(std::span<const std::vector<double>> rows) const {
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& r : rows) out.push_back(predict(r));
    return out;
}

std::vector<double> SurrogateModel::predict_batch(std::span<const std::vector<double>> rows) const {
    for (const auto& r : rows) check_dim(r);
    const auto n = static_cast<std::ptrdiff_t>(rows.size());
    std::vector<double> out(rows.size());
#pragma omp parallel if (rows.size() >= 64)
    {
        Activations act;
#pragma omp for schedule(static)
        for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = forward(rows[i], act);
    }
    return out;
}

double SurrogateModel::mse(std::span<const TrainingExample> examples) const {
    if (examples.empty()) throw NoData("no training examples");
    Activations act;
    double sum = 0.0;
    for (const auto& ex : examples) {
        check_dim(ex.features);
        const double d = forward(ex.features, act) - ex.target;
        sum += d * d;
    }
    return sum / static_cast<double>(examples.size());
}

void SurrogateModel::sgd_step(std::span<const double> x, double target, Activations& act) {
    const double out = forward(x, act);
    // d(loss)/d(out) for loss = (out - target)^2
    const double g_out = 2.0 * (out - target);

    std::array<double, H> g_h2{};
    for (std::size_t h = 0; h < H; ++h) g_h2[h] = act.h2[h] > 0.0 ? g_out * w3_[h] : 0.0;

    std::array<double, H> g_h1{};
    for (std::size_t h = 0; h < H; ++h) {
        if (g_h2[h] == 0.0) continue;
        const double* row = &w2_[h * H];
        for (std::size_t j = 0; j < H; ++j) g_h1[j] += g_h2[h] * row[j];
    }
    for (std::size_t j = 0; j < H; ++j)
        if (act.h1[j] <= 0.0) g_h1[j] = 0.0;

    const double lr = learning_rate_;
    for (std::size_t h = 0; h < H; ++h) w3_[h] -= lr * g_out * act.h2[h];
    b3_ -= lr * g_out;
    for (std::size_t h = 0; h < H; ++h) {
        if (g_h2[h] == 0.0) continue;
        double* row = &w2_[h * H];
        for (std::size_t j = 0; j < H; ++j) row[j] -= lr * g_h2[h] * act.h1[j];
        b2_[h] -= lr * g_h2[h];
    }
    for (std::size_t h = 0; h < H; ++h) {
        if (g_h1[h] == 0.0) continue;
        double* row = &w1_[h * input_dim_];
        for (std::size_t i = 0; i < input_dim_; ++i) row[i] -= lr * g_h1[h] * x[i];
        b1_[h] -= lr * g_h1[h];
    }
    ++steps_;
}

double SurrogateModel::train_increment(std::span<const TrainingExample> examples, std::size_t epochs) {
    if (examples.empty()) throw NoData("no training examples");
    for (const auto& ex : examples) {
        check_dim(ex.features);
        if (!std::isfinite(ex.target)) throw NonFiniteTarget("training target is not finite");
    }
    Activations act;
    for (std::size_t e = 0; e < epochs; ++e)
        for (const auto& ex : examples) sgd_step(ex.features, ex.target, act);
    ++updates_;
    return mse(examples);
}

std::vector<double> SurrogateModel::parameters() const {
    std::vector<double> p;
    p.reserve(w1_.size() + b1_.size() + w2_.size() + b2_.size() + w3_.size() + 1);
    for (const auto* v : {&w1_, &b1_, &w2_, &b2_, &w3_}) p.insert(p.end(), v->begin(), v->end());
    p.push_back(b3_);
    return p;
}

double acquire_fitness(const SurrogateModel& model, std::span<const double> features, double epsilon_init) {
    return std::max(model.predict(features), epsilon_init);
}

}  // namespace cqd
