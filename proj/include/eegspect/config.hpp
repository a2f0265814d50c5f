#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "eegspect/representation.hpp"

namespace eegspect::pipeline {

struct PipelineConfig {
  std::string dataset_dir;
  std::string output_dir = "out";

  std::vector<long long> window_sizes = {10};  // seconds
  long long step_s = 10;

  std::vector<repr::RepresentationKind> representations = {
      repr::RepresentationKind::Time,
      repr::RepresentationKind::WelchPSD,
      repr::RepresentationKind::MultitaperPSD,
  };

  repr::SpectralParams spectral;

  std::uint64_t split_seed = 20240101;
  std::size_t fold_count = 10;

  std::string baseline_name = "logreg";
  double baseline_lr = 0.5;
  std::size_t baseline_epochs = 40;
  std::size_t baseline_batch = 32;

  std::vector<spectral::FrequencyBand> bands = spectral::default_bands();
};

// Parses a TOML config (flat tables, scalar and array values; unknown keys
// rejected) and applies it over the defaults.
PipelineConfig load_config(const std::string& path);
PipelineConfig parse_config(const std::string& text);

// The default config as a commented TOML document.
std::string default_config_toml();

// Stable digest of the effective configuration.
std::uint64_t config_digest(const PipelineConfig& config);

}  // namespace eegspect::pipeline
