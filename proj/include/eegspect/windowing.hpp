#pragma once

#include <string>
#include <vector>

#include "eegspect/edf.hpp"

namespace eegspect::windowing {

enum class Label { Nonseizure = 0, Seizure = 1 };

const char* label_name(Label label);

struct WindowSpec {
  long long window_s = 10;        // positive
  long long step_s = 1;           // positive, <= window_s
  double nonseizure_ratio = 0.5;  // flank share of the seizure window count

  long long overlap_s() const { return window_s - step_s; }
};

struct PlanEntry {
  long long start_s = 0;
  Label label = Label::Nonseizure;
};

struct SegmentationPlan {
  std::string source_id;
  long long window_s = 0;
  std::vector<PlanEntry> entries;  // starts strictly increasing
  bool shortfall = false;          // flanks could not supply full balance

  std::size_t count(Label label) const;
};

struct LabeledWindow {
  std::vector<std::vector<double>> data;  // [channel][sample]
  Label label = Label::Nonseizure;
  std::string source_id;
  long long start_s = 0;
  long long window_s = 0;
};

// Fixed windows covering a region of `duration_s`: floor((D - w) / step) + 1.
long long count_covering_windows(long long duration_s, const WindowSpec& spec);

// Seizure-centered segmentation. Seizure windows start at the seizure onset
// and advance by step_s while they still overlap the seizure, so trailing
// edge windows carry the seizure label. Each seizure then draws nonseizure
// windows from the flanks just before and after it, half of the seizure
// window count per side, stopping at recording bounds or a neighboring
// seizure; deficits extend the opposite flank and set `shortfall` when
// balance cannot be met.
SegmentationPlan plan_segments(const std::vector<edf::SeizureAnnotation>& annotations,
                               long long duration_s, const WindowSpec& spec);

std::vector<LabeledWindow> extract_windows(const edf::Recording& recording,
                                           const SegmentationPlan& plan,
                                           const WindowSpec& spec);

// CSV rows "source_id,start_s,window_s,label", one per planned window.
std::string plans_to_csv(const std::vector<SegmentationPlan>& plans);

}  // namespace eegspect::windowing
