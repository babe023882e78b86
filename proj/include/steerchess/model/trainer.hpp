#pragma once

#include <memory>
#include <vector>

#include "steerchess/model/network.hpp"

namespace steerchess::model {

struct TrainResult {
    std::vector<double> loss_curve;
    int steps_run = 0;
    double final_acc_at_1 = 0.0;  // over the dataset's distinct inputs
};

struct TrainOptions {
    int steps = 2000;
    double lr = 0.05;
    int batch_size = 8;
    std::uint64_t seed = 0;
    // Evaluate every eval_interval steps; stop early once accuracy reaches
    // target_acc (0 disables early stopping).
    int eval_interval = 25;
    double target_acc = 0.0;
};

// Plain gradient descent over the conditioning parameters; deterministic
// under the seed. Throws on divergence (non-finite loss).
TrainResult train_toy(ConditioningModel& model, const std::vector<Example>& dataset,
                      const TrainOptions& options);

// Top-1 accuracy of the conditioned model over the dataset.
double dataset_accuracy(ConditioningModel& model, const std::vector<Example>& dataset);

// Accuracy of the frozen backbone alone (prompt ignored).
double frozen_accuracy(ConditioningModel& model, const std::vector<Example>& dataset);

// Synthetic steerability task: the prompt names one of two first moves from
// the start position; the target is that move. Balanced dataset of `rows`
// examples.
std::vector<Example> steerability_dataset(int rows);

}  // namespace steerchess::model
