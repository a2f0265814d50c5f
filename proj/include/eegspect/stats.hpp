#pragma once

#include <map>
#include <string>
#include <vector>

namespace eegspect::stats {

struct TestResult {
  double statistic = 0.0;
  double p_value = 1.0;
  std::size_t df = 0;
  bool degenerate = false;  // all values tied, statistic forced to 0
};

struct PairwiseMatrix {
  std::vector<std::string> names;
  std::vector<std::vector<double>> p_adjusted;  // symmetric, diagonal 1
};

enum class Adjustment { Bonferroni, Holm };

// Survival function of the chi-square distribution (regularized upper
// incomplete gamma), good to ~1e-12.
double chi_square_sf(double x, std::size_t df);

double normal_sf(double z);

// P(range of k iid standard normals > q), by numerical integration of the
// range distribution; accurate to about 1e-7.
double studentized_range_sf(double q, std::size_t k);

// Midranks of the pooled sample plus the tie-correction sum Σ(t³ - t).
std::vector<double> midranks(const std::vector<double>& values);

// Rank-based k-group test for unpaired samples, midranks and tie correction
// applied; p from chi-square with k-1 degrees of freedom.
TestResult kruskal_wallis(const std::vector<std::vector<double>>& groups);

// Pairwise post hoc for kruskal_wallis: z from mean-rank differences with
// pooled tie-corrected variance, two-sided normal p, then the multiple
// comparison adjustment (capped at 1).
PairwiseMatrix dunn(const std::vector<std::vector<double>>& groups,
                    Adjustment adjustment = Adjustment::Bonferroni);

// Rank-based test for b blocks x k paired treatments, within-block midranks
// and tie correction; p from chi-square with k-1 degrees of freedom.
TestResult friedman(const std::vector<std::vector<double>>& blocks);

// Pairwise post hoc for friedman via the studentized range with infinite
// degrees of freedom.
PairwiseMatrix nemenyi(const std::vector<std::vector<double>>& blocks);

// One per-fold accuracy series per (architecture, representation, window).
struct BatteryCell {
  std::string architecture;
  std::string representation;
  std::string window;
  std::vector<double> fold_values;
};

struct BatteryTest {
  std::string test;      // "kruskal_wallis" or "friedman"
  std::string grouping;  // e.g. "windows|architecture=cnn,representation=time"
  TestResult result;
  PairwiseMatrix pairwise;
};

struct BatteryReport {
  std::vector<BatteryTest> tests;
  std::vector<std::string> skipped;  // groupings with fewer than two groups
  double alpha = 0.05;
};

// Runs the full battery over a complete table: unpaired tests across window
// sizes (per architecture x representation) and across representations (per
// architecture x window), and the paired test across architectures (per
// representation x window) with folds as blocks.
BatteryReport run_battery(const std::vector<BatteryCell>& table,
                          double alpha = 0.05);

std::string battery_to_json(const BatteryReport& report);

// Appendix-style square matrix: group names as header row and column,
// "X" on the diagonal, fixed six-decimal p-values elsewhere.
std::string pairwise_to_csv(const PairwiseMatrix& matrix);

}  // namespace eegspect::stats
