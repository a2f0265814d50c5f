#include "eegspect/windowing.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

namespace eegspect::windowing {

const char* label_name(Label label) {
  return label == Label::Seizure ? "seizure" : "nonseizure";
}

std::size_t SegmentationPlan::count(Label label) const {
  std::size_t n = 0;
  for (const auto& e : entries) {
    if (e.label == label) ++n;
  }
  return n;
}

namespace {
void validate_spec(const WindowSpec& spec) {
  if (spec.window_s < 1) {
    throw std::invalid_argument("window length must be positive");
  }
  if (spec.step_s < 1 || spec.step_s > spec.window_s) {
    throw std::invalid_argument("step must be in [1, window length]");
  }
  if (spec.nonseizure_ratio < 0.0) {
    throw std::invalid_argument("nonseizure ratio must be nonnegative");
  }
}

bool overlaps_any(long long start, long long window_s,
                  const std::vector<edf::SeizureAnnotation>& annotations) {
  const long long end = start + window_s;
  for (const auto& a : annotations) {
    if (start < a.end_s && a.start_s < end) return true;
  }
  return false;
}
}  // namespace

long long count_covering_windows(long long duration_s, const WindowSpec& spec) {
  validate_spec(spec);
  if (duration_s < spec.window_s) return 0;
  return (duration_s - spec.window_s) / spec.step_s + 1;
}

SegmentationPlan plan_segments(
    const std::vector<edf::SeizureAnnotation>& annotations,
    long long duration_s, const WindowSpec& spec) {
  validate_spec(spec);
  if (duration_s < spec.window_s) {
    throw std::invalid_argument("recording shorter than one window");
  }
  for (std::size_t i = 0; i < annotations.size(); ++i) {
    const auto& a = annotations[i];
    if (a.start_s < 0 || a.end_s <= a.start_s || a.end_s > duration_s) {
      throw std::invalid_argument("annotation outside recording bounds");
    }
    if (i > 0 && a.start_s < annotations[i - 1].end_s) {
      throw std::invalid_argument("annotations must be sorted and disjoint");
    }
  }

  const long long w = spec.window_s;
  const long long step = spec.step_s;
  const long long last_valid_start = duration_s - w;

  SegmentationPlan plan;
  plan.window_s = w;

  std::vector<PlanEntry> collected;
  for (const auto& seizure : annotations) {
    // Seizure windows: anchored at onset, advancing while they overlap.
    std::vector<long long> seizure_starts;
    for (long long start = seizure.start_s; start < seizure.end_s;
         start += step) {
      if (start > last_valid_start) break;
      seizure_starts.push_back(start);
    }
    for (long long start : seizure_starts) {
      collected.push_back({start, Label::Seizure});
    }

    const long long k = static_cast<long long>(seizure_starts.size());
    const long long total_target =
        std::llround(2.0 * spec.nonseizure_ratio * static_cast<double>(k));
    long long left_target = (total_target + 1) / 2;
    long long right_target = total_target - left_target;

    // Candidate flank windows, nearest first, stopping at the recording
    // bound or the first window that touches another seizure.
    std::vector<long long> left_candidates;
    for (long long start = seizure.start_s - w; start >= 0; start -= step) {
      if (overlaps_any(start, w, annotations)) break;
      left_candidates.push_back(start);
    }
    std::vector<long long> right_candidates;
    for (long long start = seizure.end_s; start <= last_valid_start;
         start += step) {
      if (overlaps_any(start, w, annotations)) break;
      right_candidates.push_back(start);
    }

    long long take_left =
        std::min<long long>(left_target, left_candidates.size());
    long long take_right =
        std::min<long long>(right_target, right_candidates.size());
    long long deficit = (left_target - take_left) + (right_target - take_right);
    if (deficit > 0) {
      const long long extra_right = std::min<long long>(
          deficit, static_cast<long long>(right_candidates.size()) - take_right);
      take_right += extra_right;
      deficit -= extra_right;
    }
    if (deficit > 0) {
      const long long extra_left = std::min<long long>(
          deficit, static_cast<long long>(left_candidates.size()) - take_left);
      take_left += extra_left;
      deficit -= extra_left;
    }
    if (deficit > 0) plan.shortfall = true;

    for (long long i = 0; i < take_left; ++i) {
      collected.push_back({left_candidates[i], Label::Nonseizure});
    }
    for (long long i = 0; i < take_right; ++i) {
      collected.push_back({right_candidates[i], Label::Nonseizure});
    }
  }

  std::sort(collected.begin(), collected.end(),
            [](const PlanEntry& a, const PlanEntry& b) {
              return a.start_s < b.start_s;
            });
  for (const auto& e : collected) {
    if (!plan.entries.empty() && plan.entries.back().start_s == e.start_s) {
      continue;  // identical window contributed by two seizures
    }
    plan.entries.push_back(e);
  }
  return plan;
}

std::vector<LabeledWindow> extract_windows(const edf::Recording& recording,
                                           const SegmentationPlan& plan,
                                           const WindowSpec& spec) {
  if (recording.channels.size() != edf::canonical_channels().size()) {
    throw std::invalid_argument("recording must have the 18 montage channels");
  }
  if (plan.window_s != spec.window_s) {
    throw std::invalid_argument("plan and spec window lengths differ");
  }
  const double samples_f = static_cast<double>(spec.window_s) * recording.fs;
  const auto window_samples = static_cast<std::size_t>(std::llround(samples_f));
  if (std::abs(samples_f - static_cast<double>(window_samples)) > 1e-9) {
    throw std::invalid_argument("window length is not a whole sample count");
  }

  std::vector<LabeledWindow> out;
  out.reserve(plan.entries.size());
  for (const auto& entry : plan.entries) {
    const auto begin = static_cast<std::size_t>(
        std::llround(static_cast<double>(entry.start_s) * recording.fs));
    if (begin + window_samples > recording.sample_count()) {
      throw std::out_of_range("planned window exceeds recording length");
    }
    LabeledWindow win;
    win.label = entry.label;
    win.source_id = recording.source_id;
    win.start_s = entry.start_s;
    win.window_s = spec.window_s;
    win.data.reserve(recording.channels.size());
    for (const auto& channel : recording.samples) {
      win.data.emplace_back(channel.begin() + static_cast<long>(begin),
                            channel.begin() + static_cast<long>(begin + window_samples));
    }
    out.push_back(std::move(win));
  }
  return out;
}

std::string plans_to_csv(const std::vector<SegmentationPlan>& plans) {
  std::ostringstream out;
  out << "source_id,start_s,window_s,label\n";
  for (const auto& plan : plans) {
    for (const auto& e : plan.entries) {
      out << plan.source_id << ',' << e.start_s << ',' << plan.window_s << ','
          << label_name(e.label) << '\n';
    }
  }
  return out.str();
}

}  // namespace eegspect::windowing
