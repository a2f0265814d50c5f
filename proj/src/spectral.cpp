#include "eegspect/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace eegspect::spectral {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;

std::vector<double> one_sided_freqs(std::size_t fft_len, double fs) {
  const std::size_t bins = fft_len / 2;
  std::vector<double> freqs(std::max<std::size_t>(bins, 1));
  for (std::size_t k = 0; k < freqs.size(); ++k) {
    freqs[k] = static_cast<double>(k) * fs / static_cast<double>(fft_len);
  }
  return freqs;
}

// Reflect padding without repeating the edge sample: [x1..] | x | [..x-2].
std::vector<double> reflect_pad(const std::vector<double>& x, std::size_t left,
                                std::size_t right) {
  const std::size_t n = x.size();
  if (n < 2 && (left > 0 || right > 0)) {
    throw std::invalid_argument("reflect_pad: signal too short to pad");
  }
  if (left >= n || right >= n) {
    throw std::invalid_argument("reflect_pad: pad exceeds signal length");
  }
  std::vector<double> out;
  out.reserve(n + left + right);
  for (std::size_t i = left; i > 0; --i) out.push_back(x[i]);
  out.insert(out.end(), x.begin(), x.end());
  for (std::size_t i = 0; i < right; ++i) out.push_back(x[n - 2 - i]);
  return out;
}
}  // namespace

std::vector<FrequencyBand> default_bands() {
  return {
      {"delta", 0.5, 3.5},     {"theta", 3.5, 7.5},   {"alpha", 7.5, 12.5},
      {"beta", 12.5, 30.0},    {"low_gamma", 30.0, 60.0},
      {"high_gamma", 80.0, 1e9},
  };
}

WindowKind window_kind_from_name(const std::string& name) {
  if (name == "hamming") return WindowKind::Hamming;
  if (name == "hann") return WindowKind::Hann;
  if (name == "rectangular") return WindowKind::Rectangular;
  throw std::invalid_argument("unknown window kind: " + name);
}

std::vector<double> make_window(WindowKind kind, std::size_t len) {
  std::vector<double> h(len, 1.0);
  if (len <= 1) return h;
  const double denom = static_cast<double>(len - 1);
  switch (kind) {
    case WindowKind::Hamming:
      for (std::size_t i = 0; i < len; ++i) {
        h[i] = 0.54 - 0.46 * std::cos(kTwoPi * static_cast<double>(i) / denom);
      }
      break;
    case WindowKind::Hann:
      for (std::size_t i = 0; i < len; ++i) {
        h[i] = 0.5 - 0.5 * std::cos(kTwoPi * static_cast<double>(i) / denom);
      }
      break;
    case WindowKind::Rectangular:
      break;
  }
  return h;
}

Spectrum welch_psd(const std::vector<double>& x, double fs, std::size_t seg_len,
                   double overlap_frac, WindowKind window_kind,
                   std::size_t fft_len) {
  if (seg_len == 0 || seg_len > x.size()) {
    throw std::invalid_argument("welch_psd: segment length out of range");
  }
  if (overlap_frac < 0.0 || overlap_frac >= 1.0) {
    throw std::invalid_argument("welch_psd: overlap must be in [0,1)");
  }
  if (fft_len < seg_len) {
    throw std::invalid_argument("welch_psd: fft length shorter than segment");
  }
  const auto window = make_window(window_kind, seg_len);
  double win_energy = 0.0;
  for (double h : window) win_energy += h * h;

  std::size_t hop = static_cast<std::size_t>(
      std::lround(static_cast<double>(seg_len) * (1.0 - overlap_frac)));
  hop = std::max<std::size_t>(hop, 1);

  const std::size_t bins = fft_len / 2;
  std::vector<double> acc(bins, 0.0);
  std::size_t segments = 0;
  std::vector<cdouble> buf(fft_len);
  for (std::size_t start = 0; start + seg_len <= x.size(); start += hop) {
    std::fill(buf.begin(), buf.end(), cdouble(0, 0));
    for (std::size_t i = 0; i < seg_len; ++i) {
      buf[i] = x[start + i] * window[i];
    }
    const auto spec = dft(buf);
    for (std::size_t k = 0; k < bins; ++k) acc[k] += std::norm(spec[k]);
    ++segments;
  }
  Spectrum out;
  out.freqs = one_sided_freqs(fft_len, fs);
  out.resolution = fs / static_cast<double>(fft_len);
  out.values.resize(bins);
  const double scale = 1.0 / (static_cast<double>(segments) * win_energy);
  for (std::size_t k = 0; k < bins; ++k) out.values[k] = acc[k] * scale;
  return out;
}

std::vector<std::vector<cdouble>> multitaper_components(
    const std::vector<double>& x, const TaperBank& bank) {
  if (x.size() != bank.length) {
    throw std::invalid_argument(
        "multitaper_components: signal and taper lengths differ");
  }
  std::vector<std::vector<cdouble>> rows;
  rows.reserve(bank.count());
  std::vector<double> tapered(x.size());
  for (const auto& taper : bank.tapers) {
    for (std::size_t i = 0; i < x.size(); ++i) tapered[i] = taper[i] * x[i];
    rows.push_back(dft(tapered));
  }
  return rows;
}

std::vector<cdouble> multitaper_average(
    const std::vector<std::vector<cdouble>>& components) {
  if (components.empty()) {
    throw std::invalid_argument("multitaper_average: no taper rows");
  }
  const std::size_t n = components.front().size();
  std::vector<cdouble> avg(n, cdouble(0, 0));
  for (const auto& row : components) {
    for (std::size_t k = 0; k < n; ++k) avg[k] += row[k];
  }
  const double inv_q = 1.0 / static_cast<double>(components.size());
  for (auto& v : avg) v *= inv_q;
  return avg;
}

Spectrum multitaper_psd(const std::vector<double>& x, double fs,
                        const TaperBank& bank, MultitaperMode mode) {
  const auto components = multitaper_components(x, bank);
  const std::size_t n = x.size();
  const std::size_t bins = n / 2;
  Spectrum out;
  out.freqs = one_sided_freqs(n, fs);
  out.resolution = fs / static_cast<double>(n);
  out.values.assign(std::max<std::size_t>(bins, 1), 0.0);
  if (mode == MultitaperMode::Coherent) {
    const auto avg = multitaper_average(components);
    for (std::size_t k = 0; k < out.values.size(); ++k) {
      out.values[k] = std::norm(avg[k]);
    }
  } else {
    const double inv_q = 1.0 / static_cast<double>(components.size());
    for (const auto& row : components) {
      for (std::size_t k = 0; k < out.values.size(); ++k) {
        out.values[k] += std::norm(row[k]) * inv_q;
      }
    }
  }
  return out;
}

SpectrogramGrid stft(const std::vector<double>& x, double fs,
                     const std::vector<double>& window, std::size_t hop) {
  const std::size_t w = window.size();
  if (hop == 0) throw std::invalid_argument("stft: hop must be positive");
  if (w == 0 || w > x.size()) {
    throw std::invalid_argument("stft: window length out of range");
  }
  const std::size_t frames = (x.size() - w) / hop + 1;
  const std::size_t bins = w / 2;
  SpectrogramGrid grid;
  grid.window_len = w;
  grid.hop = hop;
  grid.freqs = one_sided_freqs(w, fs);
  grid.times.resize(frames);
  grid.values.assign(std::max<std::size_t>(bins, 1),
                     std::vector<double>(frames, 0.0));
  std::vector<double> seg(w);
  for (std::size_t t = 0; t < frames; ++t) {
    const std::size_t start = t * hop;
    grid.times[t] = static_cast<double>(start) / fs;
    for (std::size_t i = 0; i < w; ++i) seg[i] = x[start + i] * window[i];
    const auto spec = dft(seg);
    for (std::size_t k = 0; k < grid.values.size(); ++k) {
      grid.values[k][t] = std::norm(spec[k]);
    }
  }
  return grid;
}

SpectrogramGrid multitaper_spectrogram(const std::vector<double>& x, double fs,
                                       const TaperBank& bank, std::size_t hop,
                                       double f_hi) {
  const std::size_t w = bank.length;
  if (hop == 0) {
    throw std::invalid_argument("multitaper_spectrogram: hop must be positive");
  }
  if (w == 0 || w > x.size() + w - 1) {
    throw std::invalid_argument("multitaper_spectrogram: bad window length");
  }
  // Pad so frames cover every input sample; left + right = w - 1 makes
  // hop=1 produce exactly x.size() columns.
  const std::size_t pad_left = w / 2;
  const std::size_t pad_right = (w - 1) - pad_left;
  const auto padded = reflect_pad(x, pad_left, pad_right);
  const std::size_t frames = (padded.size() - w) / hop + 1;

  const std::size_t all_bins = std::max<std::size_t>(w / 2, 1);
  const double resolution = fs / static_cast<double>(w);
  std::size_t bins = 0;
  while (bins < all_bins && static_cast<double>(bins) * resolution <= f_hi) {
    ++bins;
  }
  if (bins == 0) {
    throw std::invalid_argument("multitaper_spectrogram: empty frequency range");
  }

  SpectrogramGrid grid;
  grid.window_len = w;
  grid.hop = hop;
  grid.freqs.resize(bins);
  for (std::size_t k = 0; k < bins; ++k) {
    grid.freqs[k] = static_cast<double>(k) * resolution;
  }
  grid.times.resize(frames);
  grid.values.assign(bins, std::vector<double>(frames, 0.0));

  const double inv_q = 1.0 / static_cast<double>(bank.count());
  std::vector<double> tapered(w);
  std::vector<cdouble> avg(w);
  for (std::size_t t = 0; t < frames; ++t) {
    const std::size_t start = t * hop;
    grid.times[t] = static_cast<double>(t * hop) / fs;
    std::fill(avg.begin(), avg.end(), cdouble(0, 0));
    for (const auto& taper : bank.tapers) {
      for (std::size_t i = 0; i < w; ++i) {
        tapered[i] = taper[i] * padded[start + i];
      }
      const auto spec = dft(tapered);
      for (std::size_t k = 0; k < w; ++k) avg[k] += spec[k];
    }
    for (std::size_t k = 0; k < bins; ++k) {
      grid.values[k][t] = std::norm(avg[k] * inv_q);
    }
  }
  return grid;
}

double band_power(const Spectrum& spectrum, const FrequencyBand& band) {
  if (band.lo < 0.0 || band.hi <= band.lo) {
    throw std::invalid_argument("band_power: invalid band");
  }
  double sum = 0.0;
  std::size_t hits = 0;
  for (std::size_t k = 0; k < spectrum.freqs.size(); ++k) {
    if (spectrum.freqs[k] >= band.lo && spectrum.freqs[k] < band.hi) {
      sum += spectrum.values[k];
      ++hits;
    }
  }
  if (hits == 0) {
    throw std::invalid_argument("band_power: band outside spectrum range");
  }
  return sum * spectrum.resolution;
}

}  // namespace eegspect::spectral
