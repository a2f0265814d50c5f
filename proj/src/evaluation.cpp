#include "eegspect/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace eegspect::eval {

ConfusionMatrix confusion(const std::vector<int>& labels,
                          const std::vector<int>& predictions) {
  if (labels.empty() || labels.size() != predictions.size()) {
    throw std::invalid_argument("confusion: need equal nonempty inputs");
  }
  ConfusionMatrix cm;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if ((labels[i] != 0 && labels[i] != 1) ||
        (predictions[i] != 0 && predictions[i] != 1)) {
      throw std::invalid_argument("confusion: values must be 0 or 1");
    }
    if (labels[i] == 1) {
      (predictions[i] == 1 ? cm.tp : cm.fn) += 1;
    } else {
      (predictions[i] == 0 ? cm.tn : cm.fp) += 1;
    }
  }
  return cm;
}

namespace {
std::optional<double> ratio(std::size_t num, std::size_t denom) {
  if (denom == 0) return std::nullopt;
  return static_cast<double>(num) / static_cast<double>(denom);
}
}  // namespace

MetricsReport metrics(const ConfusionMatrix& cm) {
  if (cm.total() == 0) {
    throw std::invalid_argument("metrics: empty confusion matrix");
  }
  MetricsReport r;
  r.accuracy = ratio(cm.tp + cm.tn, cm.total());
  r.precision = ratio(cm.tp, cm.tp + cm.fp);
  r.sensitivity = ratio(cm.tp, cm.tp + cm.fn);
  r.specificity = ratio(cm.tn, cm.tn + cm.fp);
  if (r.precision && r.sensitivity && (*r.precision + *r.sensitivity) > 0.0) {
    r.f1 = 2.0 * *r.precision * *r.sensitivity /
           (*r.precision + *r.sensitivity);
  }
  return r;
}

RocCurve roc(const std::vector<double>& scores,
             const std::vector<int>& labels) {
  if (scores.size() != labels.size() || scores.empty()) {
    throw std::invalid_argument("roc: need equal nonempty inputs");
  }
  std::size_t pos = 0, neg = 0;
  for (int l : labels) {
    if (l != 0 && l != 1) {
      throw std::invalid_argument("roc: labels must be 0 or 1");
    }
    (l == 1 ? pos : neg) += 1;
  }
  if (pos == 0 || neg == 0) {
    throw std::invalid_argument("roc: need both classes present");
  }

  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return scores[a] > scores[b];
  });

  RocCurve curve;
  curve.points.push_back({0.0, 0.0, std::numeric_limits<double>::infinity()});

  // Walk tied-score groups; accumulate twice the trapezoid numerator in
  // integer arithmetic so AUC is exact.
  std::size_t tp = 0, fp = 0;
  unsigned long long twice_area = 0;
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    std::size_t group_tp = 0, group_fp = 0;
    while (j < order.size() && scores[order[j]] == scores[order[i]]) {
      (labels[order[j]] == 1 ? group_tp : group_fp) += 1;
      ++j;
    }
    const std::size_t prev_tp = tp;
    tp += group_tp;
    fp += group_fp;
    twice_area += static_cast<unsigned long long>(group_fp) * (prev_tp + tp);
    curve.points.push_back({static_cast<double>(fp) / static_cast<double>(neg),
                            static_cast<double>(tp) / static_cast<double>(pos),
                            scores[order[i]]});
    i = j;
  }
  curve.auc = static_cast<double>(twice_area) /
              (2.0 * static_cast<double>(pos) * static_cast<double>(neg));
  return curve;
}

std::optional<double> NamedMetrics::value(const std::string& metric) const {
  for (const auto& [name, v] : values) {
    if (name == metric) return v;
  }
  return std::nullopt;
}

std::vector<NamedMetrics> rank_models(const std::vector<NamedMetrics>& entries,
                                      const std::string& metric) {
  if (entries.empty()) {
    throw std::invalid_argument("rank_models: empty table");
  }
  bool known = false;
  for (const auto& e : entries) {
    for (const auto& [name, v] : e.values) {
      if (name == metric) known = true;
    }
  }
  if (!known) {
    throw std::invalid_argument("rank_models: unknown metric " + metric);
  }
  std::vector<NamedMetrics> out = entries;
  std::stable_sort(out.begin(), out.end(),
                   [&](const NamedMetrics& a, const NamedMetrics& b) {
                     const auto va = a.value(metric);
                     const auto vb = b.value(metric);
                     if (va.has_value() != vb.has_value()) {
                       return va.has_value();  // defined before undefined
                     }
                     if (va && vb && *va != *vb) return *va > *vb;
                     return a.name < b.name;
                   });
  return out;
}

MeanStd aggregate(const std::vector<double>& values) {
  MeanStd out;
  out.count = values.size();
  if (values.empty()) return out;
  out.mean = std::accumulate(values.begin(), values.end(), 0.0) /
             static_cast<double>(values.size());
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - out.mean) * (v - out.mean);
    out.stddev = std::sqrt(ss / static_cast<double>(values.size() - 1));
  }
  return out;
}

std::string roc_to_csv(const RocCurve& curve) {
  std::ostringstream out;
  out << "fpr,tpr,threshold\n";
  for (const auto& p : curve.points) {
    out << p.fpr << ',' << p.tpr << ',';
    if (std::isinf(p.threshold)) {
      out << "inf";
    } else {
      out << p.threshold;
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace eegspect::eval
