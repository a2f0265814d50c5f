#include "eegspect/representation.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace eegspect::repr {

const char* kind_name(RepresentationKind kind) {
  switch (kind) {
    case RepresentationKind::Time:
      return "time";
    case RepresentationKind::WelchPSD:
      return "welch_psd";
    case RepresentationKind::MultitaperPSD:
      return "multitaper_psd";
    case RepresentationKind::MultitaperSpectrogram:
      return "multitaper_spectrogram";
  }
  return "unknown";
}

RepresentationKind kind_from_name(const std::string& name) {
  if (name == "time") return RepresentationKind::Time;
  if (name == "welch_psd") return RepresentationKind::WelchPSD;
  if (name == "multitaper_psd") return RepresentationKind::MultitaperPSD;
  if (name == "multitaper_spectrogram") {
    return RepresentationKind::MultitaperSpectrogram;
  }
  throw std::invalid_argument("unknown representation: " + name);
}

namespace {
constexpr std::size_t kChannels = 18;

std::size_t window_samples(double fs, long long window_s) {
  return static_cast<std::size_t>(
      std::llround(static_cast<double>(window_s) * fs));
}

std::size_t product(const std::vector<std::size_t>& dims) {
  std::size_t p = 1;
  for (auto d : dims) p *= d;
  return p;
}
}  // namespace

std::vector<std::size_t> expected_dims(RepresentationKind kind, double fs,
                                       long long window_s,
                                       const SpectralParams& params) {
  const std::size_t n = window_samples(fs, window_s);
  switch (kind) {
    case RepresentationKind::Time:
      return {kChannels, n};
    case RepresentationKind::WelchPSD:
    case RepresentationKind::MultitaperPSD:
      return {kChannels, n / 2};
    case RepresentationKind::MultitaperSpectrogram: {
      const auto w = static_cast<std::size_t>(
          std::llround(params.sgram_window_s * fs));
      const double resolution = fs / static_cast<double>(w);
      std::size_t bins = 0;
      while (bins < w / 2 &&
             static_cast<double>(bins) * resolution <= params.sgram_f_hi) {
        ++bins;
      }
      const std::size_t frames = (n - 1) / params.sgram_hop + 1;
      return {kChannels, bins, frames};
    }
  }
  throw std::invalid_argument("unknown representation kind");
}

std::shared_ptr<const spectral::TaperBank> RepresentationBuilder::bank_for(
    std::size_t length) const {
  std::lock_guard<std::mutex> lock(mutex_);
  auto it = banks_.find(length);
  if (it != banks_.end()) return it->second;
  auto bank = std::make_shared<spectral::TaperBank>(
      spectral::dpss(length, params_.multitaper_nw, params_.multitaper_q));
  banks_[length] = bank;
  return bank;
}

FeatureTensor RepresentationBuilder::build(
    const windowing::LabeledWindow& window, RepresentationKind kind,
    double fs) const {
  if (window.data.size() != kChannels) {
    throw std::invalid_argument("window must have the 18 montage channels");
  }
  const std::size_t n = window_samples(fs, window.window_s);
  for (const auto& channel : window.data) {
    if (channel.size() != n) {
      throw std::invalid_argument("window sample count does not match spec");
    }
  }

  FeatureTensor tensor;
  tensor.kind = kind;
  tensor.label = window.label;
  tensor.provenance = {window.source_id, window.start_s, window.window_s};

  switch (kind) {
    case RepresentationKind::Time: {
      tensor.dims = {kChannels, n};
      tensor.data.reserve(kChannels * n);
      for (const auto& channel : window.data) {
        tensor.data.insert(tensor.data.end(), channel.begin(), channel.end());
      }
      break;
    }
    case RepresentationKind::WelchPSD: {
      const auto seg_len = std::max<std::size_t>(
          1, static_cast<std::size_t>(
                 std::llround(params_.welch_seg_frac * static_cast<double>(n))));
      tensor.dims = {kChannels, n / 2};
      tensor.data.reserve(product(tensor.dims));
      for (const auto& channel : window.data) {
        const auto psd = spectral::welch_psd(channel, fs, seg_len,
                                             params_.welch_overlap,
                                             params_.welch_window, n);
        tensor.data.insert(tensor.data.end(), psd.values.begin(),
                           psd.values.end());
      }
      break;
    }
    case RepresentationKind::MultitaperPSD: {
      const auto bank = bank_for(n);
      tensor.dims = {kChannels, n / 2};
      tensor.data.reserve(product(tensor.dims));
      for (const auto& channel : window.data) {
        const auto psd = spectral::multitaper_psd(channel, fs, *bank,
                                                  params_.multitaper_mode);
        tensor.data.insert(tensor.data.end(), psd.values.begin(),
                           psd.values.end());
      }
      break;
    }
    case RepresentationKind::MultitaperSpectrogram: {
      const auto w = static_cast<std::size_t>(
          std::llround(params_.sgram_window_s * fs));
      const auto bank = bank_for(w);
      bool dims_set = false;
      for (const auto& channel : window.data) {
        const auto grid = spectral::multitaper_spectrogram(
            channel, fs, *bank, params_.sgram_hop, params_.sgram_f_hi);
        if (!dims_set) {
          tensor.dims = {kChannels, grid.freqs.size(), grid.times.size()};
          tensor.data.reserve(product(tensor.dims));
          dims_set = true;
        }
        for (const auto& row : grid.values) {
          tensor.data.insert(tensor.data.end(), row.begin(), row.end());
        }
      }
      break;
    }
  }

  if (tensor.data.size() != product(tensor.dims)) {
    throw std::logic_error("tensor payload does not match dims");
  }
  return tensor;
}

NormalizationStats fit_minmax(const std::vector<FeatureTensor>& training) {
  if (training.empty()) {
    throw std::invalid_argument("fit_minmax: empty training set");
  }
  const auto& first = training.front();
  NormalizationStats stats;
  stats.dims = first.dims;
  stats.mins = first.data;
  stats.maxs = first.data;
  for (std::size_t t = 1; t < training.size(); ++t) {
    const auto& tensor = training[t];
    if (tensor.dims != stats.dims || tensor.kind != first.kind) {
      throw std::invalid_argument("fit_minmax: mixed tensor shapes");
    }
    for (std::size_t i = 0; i < tensor.data.size(); ++i) {
      stats.mins[i] = std::min(stats.mins[i], tensor.data[i]);
      stats.maxs[i] = std::max(stats.maxs[i], tensor.data[i]);
    }
  }
  return stats;
}

FeatureTensor apply_minmax(const FeatureTensor& tensor,
                           const NormalizationStats& stats) {
  if (tensor.dims != stats.dims) {
    throw std::invalid_argument("apply_minmax: shape mismatch");
  }
  FeatureTensor out = tensor;
  for (std::size_t i = 0; i < out.data.size(); ++i) {
    const double range = stats.maxs[i] - stats.mins[i];
    if (range <= 0.0) {
      out.data[i] = 0.0;
    } else {
      out.data[i] =
          std::clamp((tensor.data[i] - stats.mins[i]) / range, 0.0, 1.0);
    }
  }
  return out;
}

namespace {
constexpr char kMagic[4] = {'E', 'E', 'G', 'T'};
constexpr std::uint16_t kFormatVersion = 1;

void put_u16(std::string& out, std::uint16_t v) {
  out.push_back(static_cast<char>(v & 0xff));
  out.push_back(static_cast<char>((v >> 8) & 0xff));
}

void put_u32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void put_u64(std::string& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void put_f64(std::string& out, double v) {
  std::uint64_t bits;
  std::memcpy(&bits, &v, 8);
  put_u64(out, bits);
}

class Cursor {
 public:
  Cursor(const std::string& data) : data_(data) {}

  const char* take(std::size_t n) {
    if (pos_ + n > data_.size()) {
      throw std::runtime_error("truncated tensor dataset");
    }
    const char* p = data_.data() + pos_;
    pos_ += n;
    return p;
  }

  std::uint16_t u16() {
    const auto* p = reinterpret_cast<const unsigned char*>(take(2));
    return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
  }
  std::uint32_t u32() {
    const auto* p = reinterpret_cast<const unsigned char*>(take(4));
    std::uint32_t v = 0;
    for (int i = 3; i >= 0; --i) v = (v << 8) | p[i];
    return v;
  }
  std::uint64_t u64() {
    const auto* p = reinterpret_cast<const unsigned char*>(take(8));
    std::uint64_t v = 0;
    for (int i = 7; i >= 0; --i) v = (v << 8) | p[i];
    return v;
  }
  double f64() {
    const std::uint64_t bits = u64();
    double v;
    std::memcpy(&v, &bits, 8);
    return v;
  }
  bool done() const { return pos_ == data_.size(); }

 private:
  const std::string& data_;
  std::size_t pos_ = 0;
};

// Provenance packs into one tab-separated string field.
std::string encode_provenance(const Provenance& p) {
  return p.source_id + "\t" + std::to_string(p.start_s) + "\t" +
         std::to_string(p.window_s);
}

Provenance decode_provenance(const std::string& s) {
  const auto t1 = s.find('\t');
  const auto t2 = s.find('\t', t1 == std::string::npos ? t1 : t1 + 1);
  if (t1 == std::string::npos || t2 == std::string::npos) {
    throw std::runtime_error("malformed tensor provenance");
  }
  Provenance p;
  p.source_id = s.substr(0, t1);
  p.start_s = std::stoll(s.substr(t1 + 1, t2 - t1 - 1));
  p.window_s = std::stoll(s.substr(t2 + 1));
  return p;
}
}  // namespace

void write_dataset(const std::string& path,
                   const std::vector<FeatureTensor>& tensors) {
  std::string out;
  out.append(kMagic, 4);
  put_u16(out, kFormatVersion);
  put_u64(out, tensors.size());
  for (const auto& t : tensors) {
    out.push_back(static_cast<char>(t.kind));
    out.push_back(static_cast<char>(t.dims.size()));
    for (auto d : t.dims) put_u32(out, static_cast<std::uint32_t>(d));
    out.push_back(static_cast<char>(t.label));
    const std::string prov = encode_provenance(t.provenance);
    put_u32(out, static_cast<std::uint32_t>(prov.size()));
    out.append(prov);
    for (double v : t.data) put_f64(out, v);
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot write dataset: " + path);
  file.write(out.data(), static_cast<std::streamsize>(out.size()));
}

std::vector<FeatureTensor> read_dataset(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot read dataset: " + path);
  std::string data((std::istreambuf_iterator<char>(file)),
                   std::istreambuf_iterator<char>());
  Cursor cur(data);
  if (std::memcmp(cur.take(4), kMagic, 4) != 0) {
    throw std::runtime_error("not a tensor dataset: " + path);
  }
  if (cur.u16() != kFormatVersion) {
    throw std::runtime_error("unsupported tensor dataset version");
  }
  const std::uint64_t count = cur.u64();
  std::vector<FeatureTensor> tensors;
  tensors.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    FeatureTensor t;
    t.kind = static_cast<RepresentationKind>(*cur.take(1));
    const auto rank = static_cast<std::size_t>(
        static_cast<unsigned char>(*cur.take(1)));
    t.dims.resize(rank);
    for (auto& d : t.dims) d = cur.u32();
    t.label = static_cast<windowing::Label>(*cur.take(1));
    const std::uint32_t prov_len = cur.u32();
    t.provenance = decode_provenance(std::string(cur.take(prov_len), prov_len));
    const std::size_t n = product(t.dims);
    t.data.resize(n);
    for (auto& v : t.data) v = cur.f64();
    tensors.push_back(std::move(t));
  }
  if (!cur.done()) {
    throw std::runtime_error("trailing bytes in tensor dataset: " + path);
  }
  return tensors;
}

std::string dataset_manifest_csv(const std::vector<FeatureTensor>& tensors) {
  std::ostringstream out;
  out << "index,source_id,start_s,window_s,label,kind,dims\n";
  for (std::size_t i = 0; i < tensors.size(); ++i) {
    const auto& t = tensors[i];
    out << i << ',' << t.provenance.source_id << ',' << t.provenance.start_s
        << ',' << t.provenance.window_s << ',' << windowing::label_name(t.label)
        << ',' << kind_name(t.kind) << ',';
    for (std::size_t d = 0; d < t.dims.size(); ++d) {
      if (d) out << 'x';
      out << t.dims[d];
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace eegspect::repr
