#include "eegspect/baseline.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "eegspect/util.hpp"
#include "json.hpp"

namespace eegspect::baseline {

namespace {
double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

void validate(const std::vector<std::vector<double>>& features,
              const std::vector<int>& labels) {
  if (features.empty()) throw std::invalid_argument("train: empty dataset");
  if (features.size() != labels.size()) {
    throw std::invalid_argument("train: features/labels length mismatch");
  }
  const std::size_t dim = features.front().size();
  bool saw_pos = false, saw_neg = false;
  for (std::size_t i = 0; i < features.size(); ++i) {
    if (features[i].size() != dim) {
      throw std::invalid_argument("train: inconsistent feature lengths");
    }
    for (double v : features[i]) {
      if (!std::isfinite(v)) {
        throw std::invalid_argument("train: non-finite feature value");
      }
    }
    if (labels[i] != 0 && labels[i] != 1) {
      throw std::invalid_argument("train: labels must be 0 or 1");
    }
    (labels[i] == 1 ? saw_pos : saw_neg) = true;
  }
  if (!saw_pos || !saw_neg) {
    throw std::invalid_argument("train: need at least one sample per class");
  }
}
}  // namespace

double predict_proba(const LinearModel& model, const std::vector<double>& x) {
  if (x.size() != model.weights.size()) {
    throw std::invalid_argument("predict: feature length mismatch");
  }
  double z = model.bias;
  for (std::size_t i = 0; i < x.size(); ++i) z += model.weights[i] * x[i];
  return sigmoid(z);
}

double mean_bce(const LinearModel& model,
                const std::vector<std::vector<double>>& features,
                const std::vector<int>& labels) {
  double loss = 0.0;
  for (std::size_t i = 0; i < features.size(); ++i) {
    const double p = predict_proba(model, features[i]);
    const double eps = 1e-12;
    loss += labels[i] == 1 ? -std::log(std::max(p, eps))
                           : -std::log(std::max(1.0 - p, eps));
  }
  return loss / static_cast<double>(features.size());
}

std::vector<double> bce_gradient(const LinearModel& model,
                                 const std::vector<std::vector<double>>& features,
                                 const std::vector<int>& labels) {
  const std::size_t dim = model.weights.size();
  std::vector<double> grad(dim + 1, 0.0);
  for (std::size_t i = 0; i < features.size(); ++i) {
    const double err = predict_proba(model, features[i]) - labels[i];
    for (std::size_t j = 0; j < dim; ++j) grad[j] += err * features[i][j];
    grad[dim] += err;
  }
  const double inv_n = 1.0 / static_cast<double>(features.size());
  for (auto& g : grad) g *= inv_n;
  return grad;
}

LinearModel train(const std::vector<std::vector<double>>& features,
                  const std::vector<int>& labels, const TrainConfig& config) {
  validate(features, labels);
  const std::size_t n = features.size();
  const std::size_t dim = features.front().size();
  const std::size_t batch = config.batch_size == 0 ? n : config.batch_size;

  LinearModel model;
  model.config = config;
  model.weights.assign(dim, 0.0);
  model.bias = 0.0;

  Rng rng(config.seed);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> grad(dim + 1);

  for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
    rng.shuffle(order);
    for (std::size_t begin = 0; begin < n; begin += batch) {
      const std::size_t end = std::min(begin + batch, n);
      std::fill(grad.begin(), grad.end(), 0.0);
      for (std::size_t b = begin; b < end; ++b) {
        const auto& x = features[order[b]];
        const double err = predict_proba(model, x) - labels[order[b]];
        for (std::size_t j = 0; j < dim; ++j) grad[j] += err * x[j];
        grad[dim] += err;
      }
      const double scale =
          config.learning_rate / static_cast<double>(end - begin);
      for (std::size_t j = 0; j < dim; ++j) model.weights[j] -= scale * grad[j];
      model.bias -= scale * grad[dim];
    }
  }
  model.final_loss = mean_bce(model, features, labels);
  return model;
}

std::string model_to_json(const LinearModel& model) {
  nlohmann::ordered_json j;
  j["weights"] = model.weights;
  j["bias"] = model.bias;
  j["config"] = {{"learning_rate", model.config.learning_rate},
                 {"epochs", model.config.epochs},
                 {"batch_size", model.config.batch_size},
                 {"seed", model.config.seed}};
  j["final_loss"] = model.final_loss;
  return j.dump(2) + "\n";
}

LinearModel model_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  LinearModel model;
  model.weights = j.at("weights").get<std::vector<double>>();
  model.bias = j.at("bias").get<double>();
  const auto& c = j.at("config");
  model.config.learning_rate = c.at("learning_rate").get<double>();
  model.config.epochs = c.at("epochs").get<std::size_t>();
  model.config.batch_size = c.at("batch_size").get<std::size_t>();
  model.config.seed = c.at("seed").get<std::uint64_t>();
  model.final_loss = j.value("final_loss", 0.0);
  return model;
}

}  // namespace eegspect::baseline
