#include "eegspect/splits.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

#include "eegspect/util.hpp"
#include "json.hpp"

namespace eegspect::splits {

namespace {

// Integer sizes summing to n, each within one of n*fraction, by largest
// remainder; deterministic tie-break on index order.
std::vector<std::size_t> largest_remainder(std::size_t n,
                                           const std::vector<double>& fractions) {
  std::vector<std::size_t> sizes(fractions.size());
  std::vector<std::pair<double, std::size_t>> fracs;
  std::size_t assigned = 0;
  for (std::size_t i = 0; i < fractions.size(); ++i) {
    const double exact = static_cast<double>(n) * fractions[i];
    sizes[i] = static_cast<std::size_t>(std::floor(exact + 1e-12));
    assigned += sizes[i];
    fracs.emplace_back(exact - std::floor(exact + 1e-12), i);
  }
  std::stable_sort(fracs.begin(), fracs.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  for (std::size_t r = 0; assigned < n; ++r, ++assigned) {
    sizes[fracs[r % fracs.size()].second] += 1;
  }
  return sizes;
}

// Partitions shuffled per-class index pools into `set_sizes.size()` sets,
// keeping each set's class mix proportional to what is still unassigned.
std::vector<std::vector<std::size_t>> stratified_assign(
    const std::vector<int>& labels, const std::vector<std::size_t>& set_sizes,
    Rng& rng) {
  std::map<int, std::vector<std::size_t>> pools;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    pools[labels[i]].push_back(i);
  }
  for (auto& [label, pool] : pools) rng.shuffle(pool);

  std::vector<int> class_ids;
  std::vector<std::size_t> remaining;
  std::vector<std::size_t> consumed;
  for (auto& [label, pool] : pools) {
    class_ids.push_back(label);
    remaining.push_back(pool.size());
    consumed.push_back(0);
  }

  std::vector<std::vector<std::size_t>> sets(set_sizes.size());
  for (std::size_t j = 0; j < set_sizes.size(); ++j) {
    const std::size_t want = set_sizes[j];
    std::size_t total_remaining = 0;
    for (auto r : remaining) total_remaining += r;
    if (want > total_remaining) {
      throw std::logic_error("split sizes exceed available samples");
    }
    // Class quota for this set by largest remainder over remaining counts.
    std::vector<std::size_t> quota(class_ids.size());
    std::vector<std::pair<double, std::size_t>> fracs;
    std::size_t assigned = 0;
    for (std::size_t c = 0; c < class_ids.size(); ++c) {
      const double exact = total_remaining == 0
                               ? 0.0
                               : static_cast<double>(want) *
                                     static_cast<double>(remaining[c]) /
                                     static_cast<double>(total_remaining);
      quota[c] = static_cast<std::size_t>(std::floor(exact + 1e-12));
      quota[c] = std::min(quota[c], remaining[c]);
      assigned += quota[c];
      fracs.emplace_back(exact - std::floor(exact + 1e-12), c);
    }
    std::stable_sort(fracs.begin(), fracs.end(), [](const auto& a, const auto& b) {
      return a.first > b.first;
    });
    for (std::size_t r = 0; assigned < want; ++r) {
      const std::size_t c = fracs[r % fracs.size()].second;
      if (quota[c] < remaining[c]) {
        quota[c] += 1;
        ++assigned;
      }
    }
    for (std::size_t c = 0; c < class_ids.size(); ++c) {
      auto& pool = pools[class_ids[c]];
      for (std::size_t i = 0; i < quota[c]; ++i) {
        sets[j].push_back(pool[consumed[c] + i]);
      }
      consumed[c] += quota[c];
      remaining[c] -= quota[c];
    }
    std::sort(sets[j].begin(), sets[j].end());
  }
  return sets;
}

// Moves one index from the set with the largest surplus over its real
// target into each empty set.
void fill_empty_sets(std::vector<std::vector<std::size_t>>& sets,
                     const std::vector<double>& targets) {
  for (std::size_t j = 0; j < sets.size(); ++j) {
    if (!sets[j].empty()) continue;
    std::size_t donor = sets.size();
    double best_surplus = -1e300;
    for (std::size_t d = 0; d < sets.size(); ++d) {
      if (d == j || sets[d].size() < 2) continue;
      const double surplus = static_cast<double>(sets[d].size()) - targets[d];
      if (surplus > best_surplus) {
        best_surplus = surplus;
        donor = d;
      }
    }
    if (donor == sets.size()) {
      throw std::invalid_argument("too few samples to populate every split");
    }
    sets[j].push_back(sets[donor].back());
    sets[donor].pop_back();
    std::sort(sets[j].begin(), sets[j].end());
  }
}

void check_labels(std::size_t n, const std::vector<int>& labels) {
  if (labels.size() != n) {
    throw std::invalid_argument("labels length must equal n");
  }
}

std::vector<std::size_t> json_indices(const nlohmann::json& arr) {
  std::vector<std::size_t> out;
  for (const auto& v : arr) out.push_back(v.get<std::size_t>());
  return out;
}

}  // namespace

SplitPlan holdout_split(std::size_t n, const std::vector<int>& labels,
                        std::uint64_t seed) {
  if (n < 10) throw std::invalid_argument("holdout_split needs n >= 10");
  check_labels(n, labels);
  {
    std::map<int, std::size_t> counts;
    for (int l : labels) counts[l] += 1;
    for (const auto& [label, count] : counts) {
      if (count < 5) {
        throw std::invalid_argument(
            "class " + std::to_string(label) +
            " has fewer samples than split slots");
      }
    }
  }
  // tuning fit/val, then train/val/test over the remaining 80%.
  const std::vector<double> fractions = {0.20 * 0.80, 0.20 * 0.20,
                                         0.80 * 0.64, 0.80 * 0.16,
                                         0.80 * 0.20};
  const auto sizes = largest_remainder(n, fractions);
  Rng rng(seed);
  auto sets = stratified_assign(labels, sizes, rng);
  std::vector<double> targets;
  for (double f : fractions) targets.push_back(static_cast<double>(n) * f);
  fill_empty_sets(sets, targets);

  SplitPlan plan;
  plan.seed = seed;
  plan.tuning_fit = std::move(sets[0]);
  plan.tuning_val = std::move(sets[1]);
  plan.train = std::move(sets[2]);
  plan.val = std::move(sets[3]);
  plan.test = std::move(sets[4]);
  return plan;
}

FoldPlan kfold(std::size_t n, const std::vector<int>& labels, std::size_t k,
               std::uint64_t seed) {
  if (k < 2) throw std::invalid_argument("kfold needs k >= 2");
  if (k > n) throw std::invalid_argument("kfold needs k <= n");
  check_labels(n, labels);
  const std::vector<double> fractions(k, 1.0 / static_cast<double>(k));
  const auto sizes = largest_remainder(n, fractions);
  Rng rng(seed);
  auto sets = stratified_assign(labels, sizes, rng);

  FoldPlan plan;
  plan.seed = seed;
  plan.folds = std::move(sets);
  return plan;
}

std::string split_plan_to_json(const SplitPlan& plan) {
  nlohmann::ordered_json j;
  j["seed"] = plan.seed;
  j["tuning"]["fit"] = plan.tuning_fit;
  j["tuning"]["val"] = plan.tuning_val;
  j["train"] = plan.train;
  j["val"] = plan.val;
  j["test"] = plan.test;
  return j.dump(2) + "\n";
}

std::string fold_plan_to_json(const FoldPlan& plan) {
  nlohmann::ordered_json j;
  j["seed"] = plan.seed;
  j["folds"] = plan.folds;
  return j.dump(2) + "\n";
}

SplitPlan split_plan_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  SplitPlan plan;
  plan.seed = j.at("seed").get<std::uint64_t>();
  plan.tuning_fit = json_indices(j.at("tuning").at("fit"));
  plan.tuning_val = json_indices(j.at("tuning").at("val"));
  plan.train = json_indices(j.at("train"));
  plan.val = json_indices(j.at("val"));
  plan.test = json_indices(j.at("test"));
  return plan;
}

FoldPlan fold_plan_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  FoldPlan plan;
  plan.seed = j.at("seed").get<std::uint64_t>();
  for (const auto& fold : j.at("folds")) {
    plan.folds.push_back(json_indices(fold));
  }
  return plan;
}

}  // namespace eegspect::splits
