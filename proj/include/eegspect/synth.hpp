#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "eegspect/edf.hpp"

namespace eegspect::synth {

struct CorpusLayout {
  std::size_t recording_count = 6;
  long long recording_duration_s = 600;
  double fs = 256.0;
  // Seizure intervals per recording; defaults total 10 seizures / 600 s.
  std::vector<std::vector<edf::SeizureAnnotation>> seizures;
};

CorpusLayout default_layout();

// Writes EDF recordings plus a summary file in the annotation grammar used
// by the catalog. Background is pink noise; inside seizure intervals a
// strong theta-band oscillation is added so frequency-domain features
// separate the classes. Byte-identical output for a given seed.
std::vector<std::string> generate_corpus(std::uint64_t seed,
                                         const std::string& out_dir,
                                         const CorpusLayout& layout =
                                             default_layout());

// Serializes channels (microvolts) to EDF with 1-second records.
std::vector<std::uint8_t> encode_edf(
    const std::vector<std::string>& channel_names,
    const std::vector<std::vector<double>>& samples, double fs,
    double physical_min = -1000.0, double physical_max = 1000.0);

}  // namespace eegspect::synth
