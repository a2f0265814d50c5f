#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace eegspect::splits {

struct SplitPlan {
  std::uint64_t seed = 0;
  std::vector<std::size_t> tuning_fit;
  std::vector<std::size_t> tuning_val;
  std::vector<std::size_t> train;
  std::vector<std::size_t> val;
  std::vector<std::size_t> test;
};

struct FoldPlan {
  std::uint64_t seed = 0;
  std::vector<std::vector<std::size_t>> folds;  // disjoint test index sets
};

// 20% tuning holdout (split 80/20 into fit/val), remaining 80% divided
// 64/16/20 into train/val/test. Stratified by label, reproducible from the
// seed; index lists come out sorted.
SplitPlan holdout_split(std::size_t n, const std::vector<int>& labels,
                        std::uint64_t seed);

// Stratified k folds with sizes differing by at most one.
FoldPlan kfold(std::size_t n, const std::vector<int>& labels, std::size_t k,
               std::uint64_t seed);

std::string split_plan_to_json(const SplitPlan& plan);
std::string fold_plan_to_json(const FoldPlan& plan);
SplitPlan split_plan_from_json(const std::string& text);
FoldPlan fold_plan_from_json(const std::string& text);

}  // namespace eegspect::splits
