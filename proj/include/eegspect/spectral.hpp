#pragma once

#include <complex>
#include <string>
#include <vector>

#include "eegspect/dpss.hpp"
#include "eegspect/fft.hpp"

namespace eegspect::spectral {

struct Spectrum {
  std::vector<double> freqs;   // Hz, strictly increasing, uniform
  std::vector<double> values;  // power per bin
  double resolution = 0.0;     // Hz between bins
};

struct SpectrogramGrid {
  std::vector<double> freqs;                // Hz
  std::vector<double> times;                // seconds
  std::vector<std::vector<double>> values;  // [freq][time], power >= 0
  std::size_t window_len = 0;               // samples
  std::size_t hop = 0;                      // samples
};

struct FrequencyBand {
  std::string name;
  double lo = 0.0;  // Hz, inclusive
  double hi = 0.0;  // Hz, exclusive
};

// The six canonical EEG bands (delta through high gamma).
std::vector<FrequencyBand> default_bands();

enum class WindowKind { Hamming, Hann, Rectangular };

WindowKind window_kind_from_name(const std::string& name);
std::vector<double> make_window(WindowKind kind, std::size_t len);

// Averaged periodogram over overlapping windowed segments. One-sided bins
// k = 0..fft_len/2-1 at k*fs/fft_len; each periodogram is divided by the
// window energy sum(h^2) so white noise comes out flat.
Spectrum welch_psd(const std::vector<double>& x, double fs, std::size_t seg_len,
                   double overlap_frac, WindowKind window_kind,
                   std::size_t fft_len);

// DFT of each tapered copy of x: row l is dft(tapers[l] * x).
std::vector<std::vector<cdouble>> multitaper_components(
    const std::vector<double>& x, const TaperBank& bank);

// Coherent average across tapers: X[k] = mean_l Y[l][k].
std::vector<cdouble> multitaper_average(
    const std::vector<std::vector<cdouble>>& components);

enum class MultitaperMode {
  // |mean_l Y_l|^2: squared magnitude of the coherent taper average.
  Coherent,
  // mean_l |Y_l|^2: the conventional incoherent power average.
  Incoherent,
};

Spectrum multitaper_psd(const std::vector<double>& x, double fs,
                        const TaperBank& bank,
                        MultitaperMode mode = MultitaperMode::Coherent);

// Sliding-window power spectrogram, frames fully inside the signal.
SpectrogramGrid stft(const std::vector<double>& x, double fs,
                     const std::vector<double>& window, std::size_t hop);

// Multitaper spectrogram: the taper bank slides as the analysis window,
// per-frame spectra are coherently averaged across tapers and squared.
// Input is reflect-padded so hop=1 yields exactly x.size() time columns;
// the frequency axis is truncated to [0, f_hi].
SpectrogramGrid multitaper_spectrogram(const std::vector<double>& x, double fs,
                                       const TaperBank& bank, std::size_t hop,
                                       double f_hi = 60.0);

// Sum of PSD values with bin frequency in [band.lo, band.hi), times the
// bin resolution.
double band_power(const Spectrum& spectrum, const FrequencyBand& band);

}  // namespace eegspect::spectral
