#include "eegspect/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "eegspect/util.hpp"

namespace fs = std::filesystem;

namespace eegspect::synth {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;

// Left-padded/space-filled ASCII field of fixed width.
void put_field(std::string& out, const std::string& value, std::size_t width) {
  std::string v = value;
  if (v.size() > width) v.resize(width);
  v.resize(width, ' ');
  out += v;
}

std::string format_real(double v) {
  std::ostringstream ss;
  ss << v;
  return ss.str();
}

// Paul Kellet's pink noise filter over seeded white noise.
class PinkNoise {
 public:
  explicit PinkNoise(Rng& rng) : rng_(rng) {}

  double next() {
    const double white = rng_.next_gaussian();
    b0_ = 0.99886 * b0_ + white * 0.0555179;
    b1_ = 0.99332 * b1_ + white * 0.0750759;
    b2_ = 0.96900 * b2_ + white * 0.1538520;
    b3_ = 0.86650 * b3_ + white * 0.3104856;
    b4_ = 0.55000 * b4_ + white * 0.5329522;
    b5_ = -0.7616 * b5_ - white * 0.0168980;
    const double pink = b0_ + b1_ + b2_ + b3_ + b4_ + b5_ + b6_ + white * 0.5362;
    b6_ = white * 0.115926;
    return pink;
  }

 private:
  Rng& rng_;
  double b0_ = 0, b1_ = 0, b2_ = 0, b3_ = 0, b4_ = 0, b5_ = 0, b6_ = 0;
};
}  // namespace

CorpusLayout default_layout() {
  CorpusLayout layout;
  layout.seizures = {
      {{100, 145}, {350, 425}},  // 45 s + 75 s
      {{90, 140}, {300, 370}},   // 50 s + 70 s
      {{120, 175}, {400, 465}},  // 55 s + 65 s
      {{80, 120}, {280, 360}},   // 40 s + 80 s
      {{200, 260}},              // 60 s
      {{150, 210}},              // 60 s
  };
  return layout;
}

std::vector<std::uint8_t> encode_edf(
    const std::vector<std::string>& channel_names,
    const std::vector<std::vector<double>>& samples, double fs,
    double physical_min, double physical_max) {
  if (channel_names.empty() || channel_names.size() != samples.size()) {
    throw std::invalid_argument("encode_edf: channel names/data mismatch");
  }
  const std::size_t total = samples.front().size();
  for (const auto& ch : samples) {
    if (ch.size() != total) {
      throw std::invalid_argument("encode_edf: ragged channel data");
    }
  }
  const auto spr = static_cast<std::size_t>(std::llround(fs));
  if (spr == 0 || total % spr != 0) {
    throw std::invalid_argument(
        "encode_edf: sample count must be whole 1-second records");
  }
  const std::size_t records = total / spr;
  const std::size_t ns = channel_names.size();

  constexpr int kDigMin = -32768;
  constexpr int kDigMax = 32767;

  std::string out;
  out.reserve(256 + 256 * ns + 2 * ns * total);
  put_field(out, "0", 8);
  put_field(out, "synthetic subject", 80);
  put_field(out, "synthetic eeg corpus", 80);
  put_field(out, "01.01.24", 8);
  put_field(out, "00.00.00", 8);
  put_field(out, std::to_string(256 + 256 * ns), 8);
  put_field(out, "", 44);
  put_field(out, std::to_string(records), 8);
  put_field(out, "1", 8);
  put_field(out, std::to_string(ns), 4);

  for (const auto& name : channel_names) put_field(out, name, 16);
  for (std::size_t i = 0; i < ns; ++i) put_field(out, "synthetic", 80);
  for (std::size_t i = 0; i < ns; ++i) put_field(out, "uV", 8);
  for (std::size_t i = 0; i < ns; ++i) {
    put_field(out, format_real(physical_min), 8);
  }
  for (std::size_t i = 0; i < ns; ++i) {
    put_field(out, format_real(physical_max), 8);
  }
  for (std::size_t i = 0; i < ns; ++i) {
    put_field(out, std::to_string(kDigMin), 8);
  }
  for (std::size_t i = 0; i < ns; ++i) {
    put_field(out, std::to_string(kDigMax), 8);
  }
  for (std::size_t i = 0; i < ns; ++i) put_field(out, "", 80);
  for (std::size_t i = 0; i < ns; ++i) {
    put_field(out, std::to_string(spr), 8);
  }
  for (std::size_t i = 0; i < ns; ++i) put_field(out, "", 32);

  const double scale = (static_cast<double>(kDigMax) - kDigMin) /
                       (physical_max - physical_min);
  for (std::size_t record = 0; record < records; ++record) {
    for (std::size_t ch = 0; ch < ns; ++ch) {
      const auto& data = samples[ch];
      for (std::size_t i = 0; i < spr; ++i) {
        const double phys =
            std::clamp(data[record * spr + i], physical_min, physical_max);
        const long long dig =
            std::llround((phys - physical_min) * scale) + kDigMin;
        const auto v = static_cast<std::int16_t>(
            std::clamp<long long>(dig, kDigMin, kDigMax));
        out.push_back(static_cast<char>(v & 0xff));
        out.push_back(static_cast<char>((v >> 8) & 0xff));
      }
    }
  }
  return {out.begin(), out.end()};
}

std::vector<std::string> generate_corpus(std::uint64_t seed,
                                         const std::string& out_dir,
                                         const CorpusLayout& layout) {
  fs::create_directories(out_dir);
  if (!fs::is_directory(out_dir)) {
    throw std::runtime_error("cannot create output directory: " + out_dir);
  }
  if (layout.seizures.size() != layout.recording_count) {
    throw std::invalid_argument("corpus layout: seizure list per recording");
  }

  // 18 montage channels plus two that the channel selection must discard.
  std::vector<std::string> channel_names = edf::canonical_channels();
  channel_names.push_back("EKG");
  channel_names.push_back("VNS");

  const auto total_samples = static_cast<std::size_t>(
      std::llround(static_cast<double>(layout.recording_duration_s) * layout.fs));

  std::vector<std::string> written;
  std::ostringstream summary;
  summary << "Data Sampling Rate: " << std::llround(layout.fs) << " Hz\n";
  summary << "*************************\n";

  for (std::size_t rec = 0; rec < layout.recording_count; ++rec) {
    // Independent stream per recording so files do not depend on order.
    Rng rng(seed ^ (0x9e3779b97f4a7c15ULL * (rec + 1)));
    const auto& seizures = layout.seizures[rec];

    std::vector<std::vector<double>> samples(
        channel_names.size(), std::vector<double>(total_samples));
    for (std::size_t ch = 0; ch < channel_names.size(); ++ch) {
      PinkNoise noise(rng);
      auto& data = samples[ch];
      for (auto& v : data) v = 10.0 * noise.next();
    }

    // Seizures: add a strong theta oscillation to every montage channel,
    // with per-seizure frequency and per-channel phase.
    for (const auto& seizure : seizures) {
      const double freq = 4.5 + 2.0 * rng.next_double();  // within 3.5-7.5 Hz
      for (std::size_t ch = 0; ch < edf::canonical_channels().size(); ++ch) {
        const double phase = kTwoPi * rng.next_double();
        const double amplitude = 80.0 + 20.0 * rng.next_double();
        auto& data = samples[ch];
        const auto begin = static_cast<std::size_t>(seizure.start_s) *
                           static_cast<std::size_t>(layout.fs);
        const auto end = static_cast<std::size_t>(seizure.end_s) *
                         static_cast<std::size_t>(layout.fs);
        for (std::size_t i = begin; i < end && i < data.size(); ++i) {
          const double t = static_cast<double>(i) / layout.fs;
          data[i] += amplitude * std::sin(kTwoPi * freq * t + phase);
        }
      }
    }

    std::ostringstream name;
    name << "synth_" << (rec + 1 < 10 ? "0" : "") << (rec + 1) << ".edf";
    const std::string file_name = name.str();
    const auto bytes = encode_edf(channel_names, samples, layout.fs);
    const fs::path path = fs::path(out_dir) / file_name;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    written.push_back(path.string());

    summary << "\nFile Name: " << file_name << "\n";
    summary << "Number of Seizures in File: " << seizures.size() << "\n";
    for (std::size_t s = 0; s < seizures.size(); ++s) {
      summary << "Seizure " << (s + 1) << " Start Time: "
              << seizures[s].start_s << " seconds\n";
      summary << "Seizure " << (s + 1) << " End Time: " << seizures[s].end_s
              << " seconds\n";
    }
  }

  const fs::path summary_path = fs::path(out_dir) / "synth-summary.txt";
  std::ofstream out(summary_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + summary_path.string());
  out << summary.str();
  written.push_back(summary_path.string());
  return written;
}

}  // namespace eegspect::synth
