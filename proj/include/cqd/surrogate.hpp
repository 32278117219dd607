#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "cqd/ledger.hpp"

namespace cqd {

/// Fully-connected regressor: input -> 32 ReLU -> 32 ReLU -> scalar.
///
/// Trained with per-example stochastic gradient descent on squared error,
/// visiting examples in the order given. Initialization is He-normal from a
/// seed, biases zero.
class SurrogateModel {
public:
    static constexpr std::size_t kHidden = 32;

    SurrogateModel(std::size_t input_dim, std::uint64_t seed, double learning_rate = 0.01);

    std::size_t input_dim() const noexcept { return input_dim_; }
    double learning_rate() const noexcept { return learning_rate_; }
    /// Gradient steps taken so far.
    std::uint64_t steps() const noexcept { return steps_; }
    /// Number of train_increment calls so far.
    std::uint64_t updates() const noexcept { return updates_; }
    bool trained() const noexcept { return updates_ > 0; }

    /// Throws FeatureDimError on a dimension mismatch.
    double predict(std::span<const double> features) const;

    /// Reference batch prediction on one thread.
    std::vector<double> predict_batch_serial(std::span<const std::vector<double>> rows) const;
    /// OpenMP batch prediction; identical results to predict_batch_serial.
    std::vector<double> predict_batch(std::span<const std::vector<double>> rows) const;

    /// Mean squared error over a dataset.
    double mse(std::span<const TrainingExample> examples) const;

    /// `epochs` passes of SGD over `examples`; returns the post-training MSE.
    /// Throws NoData on an empty dataset and NonFiniteTarget on NaN/inf targets.
    double train_increment(std::span<const TrainingExample> examples, std::size_t epochs);

    /// Flat parameter vector, for determinism checks.
    std::vector<double> parameters() const;

private:
    struct Activations {
        std::vector<double> h1;
        std::vector<double> h2;
        double out = 0.0;
    };

    void check_dim(std::span<const double> features) const;
    double forward(std::span<const double> x, Activations& act) const;
    void sgd_step(std::span<const double> x, double target, Activations& act);

    std::size_t input_dim_;
    double learning_rate_;
    std::uint64_t steps_ = 0;
    std::uint64_t updates_ = 0;

    // Row-major: w1_[h * input_dim_ + i], w2_[h * kHidden + j].
    std::vector<double> w1_, b1_, w2_, b2_, w3_;
    double b3_ = 0.0;
};

/// Surrogate prediction floored at `epsilon_init`.
double acquire_fitness(const SurrogateModel& model, std::span<const double> features, double epsilon_init);

}  // namespace cqd
