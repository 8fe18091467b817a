#ifndef SDC_DSP_HPP
#define SDC_DSP_HPP

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "sdc/errors.hpp"
#include "sdc/tensor.hpp"

namespace sdc {

// Mono full-scale PCM.
struct Waveform {
  std::vector<float> samples;
  int sample_rate = 16000;

  int64_t size() const { return static_cast<int64_t>(samples.size()); }
  double duration_s() const {
    return static_cast<double>(samples.size()) / sample_rate;
  }
};

struct Spectrogram {
  // frames x freq_bins, row-major.
  std::vector<std::complex<float>> complex_bins;
  int64_t frames = 0;
  int window_size = 0;
  int hop_size = 0;
  bool centered = false;
  std::string window_kind = "hann_periodic";

  int freq_bins() const { return window_size / 2 + 1; }
  std::complex<float>& at(int64_t f, int k) {
    return complex_bins[static_cast<size_t>(f) * freq_bins() + k];
  }
  const std::complex<float>& at(int64_t f, int k) const {
    return complex_bins[static_cast<size_t>(f) * freq_bins() + k];
  }
};

struct MelSpec {
  Tensor<float> log_mels;  // frames x n_mels
  int window_size = 0;
  int n_mels = 0;
  float floor = 1e-5f;
};

// Periodic Hann window of length n.
std::vector<float> hann_periodic(int n);

// Triangular mel filterbank (HTK mel scale), n_mels x (n_fft/2+1).
// Every row has a positive sum; covers 0..sample_rate/2.
Tensor<float> mel_filterbank(int n_mels, int n_fft, int sample_rate);

// Analysis STFT. centered=false frames the signal from sample 0 with no
// padding: frames = (len - window)/hop + 1. centered=true reflect-pads
// window/2 on both sides so every input sample gets full window coverage.
Spectrogram stft(const Waveform& w, int window_size, int hop_size,
                 bool centered = false);

// Weighted overlap-add inverse, normalized by the accumulated squared
// window, then trimmed / zero-padded to `length` samples.
Waveform istft(const Spectrogram& s, int64_t length);

// Log mel-filterbank energies of the power spectrum, floor-clamped before
// the log. hop = window/4.
MelSpec log_mel(const Waveform& w, int window_size, int n_mels,
                float floor = 1e-5f);

// Integrated loudness: K-weighted, 400 ms blocks with 75% overlap,
// absolute gate -70 LUFS, relative gate -10 LU, mono weight 1.0.
double measure_lufs(const Waveform& w);

struct NormalizeResult {
  Waveform out;
  double gain_db = 0.0;
};

NormalizeResult normalize_lufs(const Waveform& w, double target_lufs);

// Rescale so max|x| == 10^(ceiling_db/20) when the input exceeds it.
Waveform peak_clamp(const Waveform& w, double ceiling_db = -0.5);

// Biquad coefficients (a0 normalized to 1).
struct Biquad {
  double b0, b1, b2, a1, a2;
};

// The two K-weighting stages at an arbitrary sample rate.
Biquad k_weight_shelf(int sample_rate);
Biquad k_weight_highpass(int sample_rate);

// Magnitude response of a biquad at frequency f (linear gain).
double biquad_gain_at(const Biquad& bq, double freq_hz, int sample_rate);

}  // namespace sdc

#endif  // SDC_DSP_HPP
