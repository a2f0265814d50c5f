#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "eegspect/spectral.hpp"
#include "eegspect/windowing.hpp"

namespace eegspect::repr {

enum class RepresentationKind : std::uint8_t {
  Time = 0,
  WelchPSD = 1,
  MultitaperPSD = 2,
  MultitaperSpectrogram = 3,
};

const char* kind_name(RepresentationKind kind);
RepresentationKind kind_from_name(const std::string& name);

struct Provenance {
  std::string source_id;
  long long start_s = 0;
  long long window_s = 0;
};

struct FeatureTensor {
  RepresentationKind kind = RepresentationKind::Time;
  std::vector<std::size_t> dims;
  std::vector<double> data;  // row-major, product(dims) values
  windowing::Label label = windowing::Label::Nonseizure;
  Provenance provenance;

  std::size_t size() const { return data.size(); }
};

// Spectral knobs shared by the PSD and spectrogram representations.
struct SpectralParams {
  double multitaper_nw = 4.0;
  std::size_t multitaper_q = 7;
  spectral::MultitaperMode multitaper_mode = spectral::MultitaperMode::Coherent;

  double welch_seg_frac = 0.5;  // segment length as a fraction of the window
  double welch_overlap = 0.5;
  spectral::WindowKind welch_window = spectral::WindowKind::Hamming;

  double sgram_window_s = 0.25;  // taper length in seconds
  std::size_t sgram_hop = 1;     // samples
  double sgram_f_hi = 60.0;      // Hz
};

// Expected dims for a representation of an 18-channel window at rate fs.
std::vector<std::size_t> expected_dims(RepresentationKind kind, double fs,
                                       long long window_s,
                                       const SpectralParams& params);

// Builds feature tensors from labeled windows. Taper banks are cached per
// length and shared; the builder is safe to use from multiple threads.
class RepresentationBuilder {
 public:
  explicit RepresentationBuilder(SpectralParams params = {})
      : params_(params) {}

  const SpectralParams& params() const { return params_; }

  FeatureTensor build(const windowing::LabeledWindow& window,
                      RepresentationKind kind, double fs) const;

 private:
  std::shared_ptr<const spectral::TaperBank> bank_for(std::size_t length) const;

  SpectralParams params_;
  mutable std::mutex mutex_;
  mutable std::map<std::size_t, std::shared_ptr<const spectral::TaperBank>>
      banks_;
};

struct NormalizationStats {
  std::vector<std::size_t> dims;
  std::vector<double> mins;
  std::vector<double> maxs;
};

// Elementwise min/max over a (uniformly shaped) training set.
NormalizationStats fit_minmax(const std::vector<FeatureTensor>& training);

// (x - min) / (max - min), clamped to [0,1]; constant features map to 0.
FeatureTensor apply_minmax(const FeatureTensor& tensor,
                           const NormalizationStats& stats);

// Dataset file: "EEGT" magic, u16 version, then one record per tensor
// (kind u8, rank u8, dims u32le, label u8, provenance string, f64le payload)
// behind a u64le record count.
void write_dataset(const std::string& path,
                   const std::vector<FeatureTensor>& tensors);
std::vector<FeatureTensor> read_dataset(const std::string& path);

// "index,source_id,start_s,window_s,label,kind,dims" per record.
std::string dataset_manifest_csv(const std::vector<FeatureTensor>& tensors);

}  // namespace eegspect::repr
