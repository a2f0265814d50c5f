#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace eegspect::edf {

struct SeizureAnnotation {
  long long start_s = 0;  // inclusive
  long long end_s = 0;    // exclusive
};

struct Recording {
  std::vector<std::string> channels;            // channel names, unique
  std::vector<std::vector<double>> samples;     // [channel][sample], microvolts
  double fs = 0.0;                              // Hz
  std::vector<SeizureAnnotation> annotations;   // sorted, non-overlapping
  std::string source_id;

  std::size_t sample_count() const {
    return samples.empty() ? 0 : samples.front().size();
  }
  double duration_s() const {
    return fs > 0 ? static_cast<double>(sample_count()) / fs : 0.0;
  }
};

struct EdfSignalHeader {
  std::string label;
  double physical_min = 0.0;
  double physical_max = 0.0;
  int digital_min = 0;
  int digital_max = 0;
  std::size_t samples_per_record = 0;
};

struct EdfHeader {
  std::string version;
  long long record_count = 0;
  double record_duration_s = 0.0;
  std::vector<EdfSignalHeader> signals;

  std::size_t signal_count() const { return signals.size(); }
};

struct ParsedEdf {
  EdfHeader header;
  Recording recording;  // annotations left empty; source_id left empty
};

// Parses a complete EDF byte stream: 256-byte fixed header, 256 bytes per
// signal, then data records of 16-bit little-endian samples. Digital values
// are mapped to physical units via the per-signal linear calibration.
ParsedEdf parse_edf(const std::vector<std::uint8_t>& bytes);

ParsedEdf parse_edf_file(const std::string& path);

// Maps one digital sample to physical units.
double digital_to_physical(int digital, const EdfSignalHeader& sig);

// Seizure annotations per EDF file name, parsed from the summary text
// blocks ("File Name:", "Number of Seizures in File:", "Seizure N Start
// Time: X seconds", "Seizure N End Time: Y seconds").
std::map<std::string, std::vector<SeizureAnnotation>> parse_summary(
    const std::string& text);

// The 18 montage channels retained for processing, in canonical order.
const std::vector<std::string>& canonical_channels();

// Reorders the recording to exactly `wanted` (canonical order), discarding
// everything else. Matching ignores case and surrounding whitespace.
// Throws if any wanted channel is absent.
Recording select_channels(const Recording& recording,
                          const std::vector<std::string>& wanted =
                              canonical_channels());

}  // namespace eegspect::edf
