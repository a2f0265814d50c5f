#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace eegspect::baseline {

struct TrainConfig {
  double learning_rate = 0.1;
  std::size_t epochs = 50;
  std::size_t batch_size = 32;
  std::uint64_t seed = 0;
};

struct LinearModel {
  std::vector<double> weights;
  double bias = 0.0;
  TrainConfig config;
  double final_loss = 0.0;  // mean BCE on the training set after training
};

// Logistic regression fit by mini-batch gradient descent on mean binary
// cross-entropy. Weights start at zero; shuffling is seeded, so training is
// bit-reproducible.
LinearModel train(const std::vector<std::vector<double>>& features,
                  const std::vector<int>& labels, const TrainConfig& config);

double predict_proba(const LinearModel& model, const std::vector<double>& x);

// Mean binary cross-entropy of the model on a dataset.
double mean_bce(const LinearModel& model,
                const std::vector<std::vector<double>>& features,
                const std::vector<int>& labels);

// Gradient of mean BCE at the model's parameters; last entry is d/d(bias).
std::vector<double> bce_gradient(const LinearModel& model,
                                 const std::vector<std::vector<double>>& features,
                                 const std::vector<int>& labels);

std::string model_to_json(const LinearModel& model);
LinearModel model_from_json(const std::string& text);

}  // namespace eegspect::baseline
