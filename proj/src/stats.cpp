#include "eegspect/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace eegspect::stats {

namespace {
constexpr double kPi = 3.141592653589793238462643383279;

// Regularized lower incomplete gamma by series expansion (x < a + 1).
double gamma_p_series(double a, double x) {
  double term = 1.0 / a;
  double sum = term;
  for (int n = 1; n < 1000; ++n) {
    term *= x / (a + n);
    sum += term;
    if (std::abs(term) < std::abs(sum) * 1e-16) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Regularized upper incomplete gamma by Lentz continued fraction (x >= a+1).
double gamma_q_cf(double a, double x) {
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 1000; ++i) {
    const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < 1e-16) break;
  }
  return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}
}  // namespace

double chi_square_sf(double x, std::size_t df) {
  if (df == 0) throw std::invalid_argument("chi_square_sf: df must be >= 1");
  if (x <= 0.0) return 1.0;
  const double a = static_cast<double>(df) / 2.0;
  const double y = x / 2.0;
  if (y < a + 1.0) return 1.0 - gamma_p_series(a, y);
  return gamma_q_cf(a, y);
}

double normal_sf(double z) { return 0.5 * std::erfc(z / std::sqrt(2.0)); }

namespace {
double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }
double normal_pdf(double z) {
  return std::exp(-0.5 * z * z) / std::sqrt(2.0 * kPi);
}
}  // namespace

double studentized_range_sf(double q, std::size_t k) {
  if (k < 2) throw std::invalid_argument("studentized_range_sf: k must be >= 2");
  if (q <= 0.0) return 1.0;
  // P(range <= q) = k * Int phi(z) * [Phi(z) - Phi(z-q)]^(k-1) dz.
  const double lo = -9.0, hi = 9.0;
  const int steps = 4096;  // Simpson, even count
  const double h = (hi - lo) / steps;
  double sum = 0.0;
  for (int i = 0; i <= steps; ++i) {
    const double z = lo + h * i;
    const double inner = normal_cdf(z) - normal_cdf(z - q);
    const double f =
        normal_pdf(z) * std::pow(std::max(inner, 0.0),
                                 static_cast<double>(k - 1));
    const double w = (i == 0 || i == steps) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
    sum += w * f;
  }
  const double cdf = static_cast<double>(k) * sum * h / 3.0;
  return std::min(1.0, std::max(0.0, 1.0 - cdf));
}

std::vector<double> midranks(const std::vector<double>& values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(n, 0.0);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j < n && values[order[j]] == values[order[i]]) ++j;
    const double rank = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
    for (std::size_t t = i; t < j; ++t) ranks[order[t]] = rank;
    i = j;
  }
  return ranks;
}

namespace {
// Σ(t³ - t) over tie groups of the pooled values.
double tie_sum(const std::vector<double>& values) {
  std::vector<double> sorted = values;
  std::sort(sorted.begin(), sorted.end());
  double sum = 0.0;
  std::size_t i = 0;
  while (i < sorted.size()) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    const double t = static_cast<double>(j - i);
    sum += t * t * t - t;
    i = j;
  }
  return sum;
}

struct RankedGroups {
  std::vector<std::vector<double>> ranks;  // per group
  double n = 0.0;
  double ties = 0.0;  // Σ(t³ - t)
};

RankedGroups rank_groups(const std::vector<std::vector<double>>& groups) {
  if (groups.size() < 2) {
    throw std::invalid_argument("need at least two groups");
  }
  std::vector<double> pooled;
  for (const auto& g : groups) {
    if (g.empty()) throw std::invalid_argument("empty group");
    pooled.insert(pooled.end(), g.begin(), g.end());
  }
  if (pooled.size() < 3) {
    throw std::invalid_argument("need at least three observations");
  }
  const auto ranks = midranks(pooled);
  RankedGroups out;
  out.n = static_cast<double>(pooled.size());
  out.ties = tie_sum(pooled);
  std::size_t pos = 0;
  for (const auto& g : groups) {
    out.ranks.emplace_back(ranks.begin() + pos, ranks.begin() + pos + g.size());
    pos += g.size();
  }
  return out;
}
}  // namespace

TestResult kruskal_wallis(const std::vector<std::vector<double>>& groups) {
  const auto ranked = rank_groups(groups);
  const double n = ranked.n;

  TestResult result;
  result.df = groups.size() - 1;

  double h = 0.0;
  for (const auto& r : ranked.ranks) {
    double sum = std::accumulate(r.begin(), r.end(), 0.0);
    h += sum * sum / static_cast<double>(r.size());
  }
  h = 12.0 / (n * (n + 1.0)) * h - 3.0 * (n + 1.0);

  const double correction = 1.0 - ranked.ties / (n * n * n - n);
  if (correction <= 0.0) {
    // Every pooled value identical.
    result.statistic = 0.0;
    result.p_value = 1.0;
    result.degenerate = true;
    return result;
  }
  result.statistic = h / correction;
  result.p_value = chi_square_sf(result.statistic, result.df);
  return result;
}

PairwiseMatrix dunn(const std::vector<std::vector<double>>& groups,
                    Adjustment adjustment) {
  const auto ranked = rank_groups(groups);
  const double n = ranked.n;
  const std::size_t k = groups.size();

  std::vector<double> mean_rank(k);
  std::vector<double> sizes(k);
  for (std::size_t g = 0; g < k; ++g) {
    mean_rank[g] =
        std::accumulate(ranked.ranks[g].begin(), ranked.ranks[g].end(), 0.0) /
        static_cast<double>(ranked.ranks[g].size());
    sizes[g] = static_cast<double>(ranked.ranks[g].size());
  }

  // Pooled variance term with tie correction.
  const double variance_base =
      n * (n + 1.0) / 12.0 - ranked.ties / (12.0 * (n - 1.0));

  PairwiseMatrix matrix;
  matrix.names.resize(k);
  for (std::size_t g = 0; g < k; ++g) {
    matrix.names[g] = "group" + std::to_string(g);
  }
  matrix.p_adjusted.assign(k, std::vector<double>(k, 1.0));

  const std::size_t m = k * (k - 1) / 2;
  std::vector<std::pair<double, std::pair<std::size_t, std::size_t>>> raw;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      double p = 1.0;
      if (variance_base > 0.0) {
        const double se =
            std::sqrt(variance_base * (1.0 / sizes[i] + 1.0 / sizes[j]));
        const double z = std::abs(mean_rank[i] - mean_rank[j]) / se;
        p = 2.0 * normal_sf(z);
      }
      raw.push_back({p, {i, j}});
    }
  }

  if (adjustment == Adjustment::Bonferroni) {
    for (const auto& [p, ij] : raw) {
      const double adj = std::min(1.0, p * static_cast<double>(m));
      matrix.p_adjusted[ij.first][ij.second] = adj;
      matrix.p_adjusted[ij.second][ij.first] = adj;
    }
  } else {  // Holm step-down
    std::vector<std::size_t> order(raw.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return raw[a].first < raw[b].first;
    });
    double running = 0.0;
    for (std::size_t rank = 0; rank < order.size(); ++rank) {
      const auto& [p, ij] = raw[order[rank]];
      const double adj =
          std::min(1.0, p * static_cast<double>(m - rank));
      running = std::max(running, adj);
      matrix.p_adjusted[ij.first][ij.second] = running;
      matrix.p_adjusted[ij.second][ij.first] = running;
    }
  }
  return matrix;
}

namespace {
struct BlockRanks {
  std::vector<double> rank_sums;  // per treatment
  double tie_correction = 1.0;
  std::size_t b = 0;
  std::size_t k = 0;
};

BlockRanks rank_blocks(const std::vector<std::vector<double>>& blocks) {
  if (blocks.size() < 2) {
    throw std::invalid_argument("friedman: need at least two blocks");
  }
  const std::size_t k = blocks.front().size();
  if (k < 2) {
    throw std::invalid_argument("friedman: need at least two treatments");
  }
  BlockRanks out;
  out.b = blocks.size();
  out.k = k;
  out.rank_sums.assign(k, 0.0);
  double ties = 0.0;
  for (const auto& block : blocks) {
    if (block.size() != k) {
      throw std::invalid_argument("friedman: missing cells in block");
    }
    const auto ranks = midranks(block);
    for (std::size_t j = 0; j < k; ++j) out.rank_sums[j] += ranks[j];
    ties += tie_sum(block);
  }
  const double b = static_cast<double>(out.b);
  const double kd = static_cast<double>(k);
  out.tie_correction = 1.0 - ties / (b * (kd * kd * kd - kd));
  return out;
}
}  // namespace

TestResult friedman(const std::vector<std::vector<double>>& blocks) {
  const auto ranked = rank_blocks(blocks);
  const double b = static_cast<double>(ranked.b);
  const double k = static_cast<double>(ranked.k);

  TestResult result;
  result.df = ranked.k - 1;

  double ssq = 0.0;
  for (double r : ranked.rank_sums) ssq += r * r;
  const double stat = 12.0 / (b * k * (k + 1.0)) * ssq - 3.0 * b * (k + 1.0);

  if (ranked.tie_correction <= 0.0) {
    result.statistic = 0.0;
    result.p_value = 1.0;
    result.degenerate = true;
    return result;
  }
  result.statistic = stat / ranked.tie_correction;
  result.p_value = chi_square_sf(result.statistic, result.df);
  return result;
}

PairwiseMatrix nemenyi(const std::vector<std::vector<double>>& blocks) {
  const auto ranked = rank_blocks(blocks);
  const double b = static_cast<double>(ranked.b);
  const double k = static_cast<double>(ranked.k);

  PairwiseMatrix matrix;
  matrix.names.resize(ranked.k);
  for (std::size_t g = 0; g < ranked.k; ++g) {
    matrix.names[g] = "group" + std::to_string(g);
  }
  matrix.p_adjusted.assign(ranked.k, std::vector<double>(ranked.k, 1.0));

  const double se = std::sqrt(k * (k + 1.0) / (6.0 * b));
  for (std::size_t i = 0; i < ranked.k; ++i) {
    for (std::size_t j = i + 1; j < ranked.k; ++j) {
      const double mean_i = ranked.rank_sums[i] / b;
      const double mean_j = ranked.rank_sums[j] / b;
      const double q = std::abs(mean_i - mean_j) / se;
      const double p = studentized_range_sf(q * std::sqrt(2.0), ranked.k);
      matrix.p_adjusted[i][j] = p;
      matrix.p_adjusted[j][i] = p;
    }
  }
  return matrix;
}

namespace {
std::vector<std::string> sorted_unique(std::vector<std::string> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

const BatteryCell* find_cell(const std::vector<BatteryCell>& table,
                             const std::string& arch, const std::string& rep,
                             const std::string& win) {
  for (const auto& cell : table) {
    if (cell.architecture == arch && cell.representation == rep &&
        cell.window == win) {
      return &cell;
    }
  }
  return nullptr;
}
}  // namespace

BatteryReport run_battery(const std::vector<BatteryCell>& table, double alpha) {
  if (table.empty()) throw std::invalid_argument("run_battery: empty table");
  BatteryReport report;
  report.alpha = alpha;

  std::vector<std::string> archs, reps, wins;
  for (const auto& cell : table) {
    archs.push_back(cell.architecture);
    reps.push_back(cell.representation);
    wins.push_back(cell.window);
  }
  archs = sorted_unique(archs);
  reps = sorted_unique(reps);
  wins = sorted_unique(wins);

  auto gather = [&](const std::vector<std::string>& group_names,
                    auto&& cell_for) {
    std::vector<std::vector<double>> groups;
    for (const auto& name : group_names) {
      const BatteryCell* cell = cell_for(name);
      if (!cell) {
        throw std::invalid_argument("run_battery: incomplete table");
      }
      groups.push_back(cell->fold_values);
    }
    return groups;
  };

  // Unpaired comparisons across window sizes, one per (arch, rep).
  if (wins.size() >= 2) {
    for (const auto& arch : archs) {
      for (const auto& rep : reps) {
        auto groups = gather(wins, [&](const std::string& w) {
          return find_cell(table, arch, rep, w);
        });
        BatteryTest test;
        test.test = "kruskal_wallis";
        test.grouping =
            "windows|architecture=" + arch + ",representation=" + rep;
        test.result = kruskal_wallis(groups);
        test.pairwise = dunn(groups);
        test.pairwise.names = wins;
        report.tests.push_back(std::move(test));
      }
    }
  } else {
    report.skipped.push_back("windows: fewer than two window sizes");
  }

  // Unpaired comparisons across representations, one per (arch, window).
  if (reps.size() >= 2) {
    for (const auto& arch : archs) {
      for (const auto& win : wins) {
        auto groups = gather(reps, [&](const std::string& r) {
          return find_cell(table, arch, r, win);
        });
        BatteryTest test;
        test.test = "kruskal_wallis";
        test.grouping = "representations|architecture=" + arch + ",window=" + win;
        test.result = kruskal_wallis(groups);
        test.pairwise = dunn(groups);
        test.pairwise.names = reps;
        report.tests.push_back(std::move(test));
      }
    }
  } else {
    report.skipped.push_back("representations: fewer than two representations");
  }

  // Paired comparison across architectures (folds as blocks), one per
  // (representation, window).
  if (archs.size() >= 2) {
    for (const auto& rep : reps) {
      for (const auto& win : wins) {
        auto groups = gather(archs, [&](const std::string& a) {
          return find_cell(table, a, rep, win);
        });
        const std::size_t folds = groups.front().size();
        for (const auto& g : groups) {
          if (g.size() != folds) {
            throw std::invalid_argument(
                "run_battery: unequal fold counts for paired test");
          }
        }
        std::vector<std::vector<double>> blocks(
            folds, std::vector<double>(groups.size()));
        for (std::size_t f = 0; f < folds; ++f) {
          for (std::size_t a = 0; a < groups.size(); ++a) {
            blocks[f][a] = groups[a][f];
          }
        }
        BatteryTest test;
        test.test = "friedman";
        test.grouping = "architectures|representation=" + rep + ",window=" + win;
        test.result = friedman(blocks);
        test.pairwise = nemenyi(blocks);
        test.pairwise.names = archs;
        report.tests.push_back(std::move(test));
      }
    }
  } else {
    report.skipped.push_back("architectures: fewer than two architectures");
  }

  return report;
}

std::string battery_to_json(const BatteryReport& report) {
  nlohmann::ordered_json root;
  root["alpha"] = report.alpha;
  root["tests"] = nlohmann::ordered_json::array();
  for (const auto& test : report.tests) {
    nlohmann::ordered_json jt;
    jt["test"] = test.test;
    jt["grouping"] = test.grouping;
    jt["statistic"] = test.result.statistic;
    jt["p"] = test.result.p_value;
    jt["df"] = test.result.df;
    jt["degenerate"] = test.result.degenerate;
    jt["pairwise"] = nlohmann::ordered_json::array();
    const auto& m = test.pairwise;
    for (std::size_t i = 0; i < m.names.size(); ++i) {
      for (std::size_t j = i + 1; j < m.names.size(); ++j) {
        jt["pairwise"].push_back({{"a", m.names[i]},
                                  {"b", m.names[j]},
                                  {"p_adj", m.p_adjusted[i][j]},
                                  {"significant",
                                   m.p_adjusted[i][j] < report.alpha}});
      }
    }
    root["tests"].push_back(std::move(jt));
  }
  root["skipped"] = report.skipped;
  return root.dump(2) + "\n";
}

std::string pairwise_to_csv(const PairwiseMatrix& matrix) {
  std::ostringstream out;
  for (const auto& name : matrix.names) out << ',' << name;
  out << '\n';
  out.setf(std::ios::fixed);
  out.precision(6);
  for (std::size_t i = 0; i < matrix.names.size(); ++i) {
    out << matrix.names[i];
    for (std::size_t j = 0; j < matrix.names.size(); ++j) {
      if (i == j) {
        out << ",X";
      } else {
        out << ',' << matrix.p_adjusted[i][j];
      }
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace eegspect::stats
