#pragma once

#include <optional>
#include <string>
#include <vector>

namespace eegspect::eval {

struct ConfusionMatrix {
  std::size_t tp = 0;
  std::size_t tn = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;

  std::size_t total() const { return tp + tn + fp + fn; }
};

// Metrics are empty when their denominator is zero, never silently 0.
struct MetricsReport {
  std::optional<double> accuracy;
  std::optional<double> precision;
  std::optional<double> sensitivity;
  std::optional<double> specificity;
  std::optional<double> f1;
};

struct RocPoint {
  double fpr = 0.0;
  double tpr = 0.0;
  double threshold = 0.0;
};

struct RocCurve {
  std::vector<RocPoint> points;  // threshold descending, (0,0) to (1,1)
  double auc = 0.0;
};

// Positive class is "seizure" (label 1).
ConfusionMatrix confusion(const std::vector<int>& labels,
                          const std::vector<int>& predictions);

MetricsReport metrics(const ConfusionMatrix& cm);

// Thresholds sweep the distinct scores descending (plus a +inf sentinel);
// AUC by trapezoidal integration, which makes it exactly the Mann-Whitney
// pair probability with ties counted one half.
RocCurve roc(const std::vector<double>& scores, const std::vector<int>& labels);

struct NamedMetrics {
  std::string name;
  // metric name -> mean value (empty when undefined for every fold)
  std::vector<std::pair<std::string, std::optional<double>>> values;

  std::optional<double> value(const std::string& metric) const;
};

// Descending by the chosen metric; ties break lexicographically by name;
// undefined values sort last.
std::vector<NamedMetrics> rank_models(const std::vector<NamedMetrics>& entries,
                                      const std::string& metric);

struct MeanStd {
  double mean = 0.0;
  double stddev = 0.0;  // sample standard deviation
  std::size_t count = 0;
};

MeanStd aggregate(const std::vector<double>& values);

std::string roc_to_csv(const RocCurve& curve);

}  // namespace eegspect::eval
