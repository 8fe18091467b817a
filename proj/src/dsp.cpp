#include "sdc/dsp.hpp"

#include <algorithm>
#include <cmath>

#include "sdc/fft.hpp"

namespace sdc {

std::vector<float> hann_periodic(int n) {
  std::vector<float> w(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i)
    w[static_cast<size_t>(i)] =
        0.5f * (1.0f - static_cast<float>(std::cos(2.0 * M_PI * i / n)));
  return w;
}

static double hz_to_mel(double f) { return 2595.0 * std::log10(1.0 + f / 700.0); }
static double mel_to_hz(double m) { return 700.0 * (std::pow(10.0, m / 2595.0) - 1.0); }

Tensor<float> mel_filterbank(int n_mels, int n_fft, int sample_rate) {
  if (n_mels < 1) throw ConfigError("mel_filterbank: n_mels must be >= 1");
  const int bins = n_fft / 2 + 1;
  const double fmax = sample_rate / 2.0;
  const double mel_max = hz_to_mel(fmax);
  std::vector<double> edges(static_cast<size_t>(n_mels) + 2);
  for (int i = 0; i < n_mels + 2; ++i)
    edges[static_cast<size_t>(i)] = mel_to_hz(mel_max * i / (n_mels + 1));

  Tensor<float> fb({n_mels, bins});
  const double bin_hz = static_cast<double>(sample_rate) / n_fft;
  for (int m = 0; m < n_mels; ++m) {
    const double lo = edges[static_cast<size_t>(m)];
    const double mid = edges[static_cast<size_t>(m) + 1];
    const double hi = edges[static_cast<size_t>(m) + 2];
    for (int k = 0; k < bins; ++k) {
      const double f = k * bin_hz;
      double v = 0.0;
      if (f > lo && f < hi)
        v = f <= mid ? (f - lo) / std::max(mid - lo, 1e-12)
                     : (hi - f) / std::max(hi - mid, 1e-12);
      fb.at(m, k) = static_cast<float>(v);
    }
    // Narrow filters can fall between FFT bins; keep the row non-empty by
    // claiming the nearest bin to the filter center.
    float row_sum = 0.0f;
    for (int k = 0; k < bins; ++k) row_sum += fb.at(m, k);
    if (row_sum <= 0.0f) {
      const int k = static_cast<int>(std::lround(mid / bin_hz));
      fb.at(m, std::clamp(k, 0, bins - 1)) = 1.0f;
    }
  }
  return fb;
}

Spectrogram stft(const Waveform& w, int window_size, int hop_size, bool centered) {
  if (window_size < 2 || (window_size & (window_size - 1)) != 0)
    throw ConfigError("stft: window_size must be a power of two >= 2");
  if (hop_size < 1 || hop_size > window_size)
    throw ConfigError("stft: need 1 <= hop_size <= window_size");
  if (w.size() < window_size)
    throw InputTooShort("stft: signal of " + std::to_string(w.size()) +
                        " samples is shorter than one window (" +
                        std::to_string(window_size) + ")");

  std::vector<float> x(w.samples);
  if (centered) {
    const int pad = window_size / 2;
    std::vector<float> padded(w.samples.size() + 2 * static_cast<size_t>(pad));
    const int64_t n = w.size();
    for (int i = 0; i < pad; ++i)
      padded[static_cast<size_t>(i)] = w.samples[static_cast<size_t>(pad - i)];
    std::copy(w.samples.begin(), w.samples.end(), padded.begin() + pad);
    for (int i = 0; i < pad; ++i)
      padded[static_cast<size_t>(pad + n + i)] =
          w.samples[static_cast<size_t>(n - 2 - i)];
    x = std::move(padded);
  }

  const int64_t len = static_cast<int64_t>(x.size());
  const int64_t frames = (len - window_size) / hop_size + 1;
  const std::vector<float> win = hann_periodic(window_size);
  Fft<float> fft(window_size);
  const int bins = window_size / 2 + 1;

  Spectrogram s;
  s.frames = frames;
  s.window_size = window_size;
  s.hop_size = hop_size;
  s.centered = centered;
  s.complex_bins.resize(static_cast<size_t>(frames) * bins);

  std::vector<float> frame(static_cast<size_t>(window_size));
  std::vector<std::complex<float>> out(static_cast<size_t>(bins));
  for (int64_t f = 0; f < frames; ++f) {
    const float* src = x.data() + f * hop_size;
    for (int i = 0; i < window_size; ++i)
      frame[static_cast<size_t>(i)] = src[i] * win[static_cast<size_t>(i)];
    fft.rfft(frame.data(), out.data());
    std::copy(out.begin(), out.end(),
              s.complex_bins.begin() + static_cast<size_t>(f) * bins);
  }
  return s;
}

Waveform istft(const Spectrogram& s, int64_t length) {
  if (s.window_size < 2 || s.hop_size < 1 || s.hop_size > s.window_size)
    throw FormatError("istft: inconsistent window/hop metadata");
  if (static_cast<int64_t>(s.complex_bins.size()) !=
      s.frames * static_cast<int64_t>(s.freq_bins()))
    throw FormatError("istft: bin count does not match frames x freq_bins");

  const int W = s.window_size;
  const int H = s.hop_size;
  const std::vector<float> win = hann_periodic(W);
  const int64_t synth_len = (s.frames - 1) * H + W;
  std::vector<double> acc(static_cast<size_t>(synth_len), 0.0);
  std::vector<double> norm(static_cast<size_t>(synth_len), 0.0);

  Fft<float> fft(W);
  std::vector<std::complex<float>> bins(static_cast<size_t>(s.freq_bins()));
  std::vector<float> frame(static_cast<size_t>(W));
  for (int64_t f = 0; f < s.frames; ++f) {
    std::copy(s.complex_bins.begin() + static_cast<size_t>(f) * s.freq_bins(),
              s.complex_bins.begin() + static_cast<size_t>(f + 1) * s.freq_bins(),
              bins.begin());
    fft.irfft(bins.data(), frame.data());
    const int64_t off = f * H;
    for (int i = 0; i < W; ++i) {
      const double wv = win[static_cast<size_t>(i)];
      acc[static_cast<size_t>(off + i)] += wv * frame[static_cast<size_t>(i)];
      norm[static_cast<size_t>(off + i)] += wv * wv;
    }
  }

  std::vector<float> y(static_cast<size_t>(synth_len));
  for (int64_t i = 0; i < synth_len; ++i) {
    const double n = norm[static_cast<size_t>(i)];
    y[static_cast<size_t>(i)] =
        n > 1e-10 ? static_cast<float>(acc[static_cast<size_t>(i)] / n) : 0.0f;
  }

  int64_t start = 0;
  if (s.centered) start = W / 2;

  Waveform out;
  out.samples.assign(static_cast<size_t>(length), 0.0f);
  for (int64_t i = 0; i < length; ++i) {
    const int64_t j = start + i;
    if (j < synth_len) out.samples[static_cast<size_t>(i)] = y[static_cast<size_t>(j)];
  }
  return out;
}

MelSpec log_mel(const Waveform& w, int window_size, int n_mels, float floor) {
  if (n_mels < 1) throw ConfigError("log_mel: n_mels must be >= 1");
  const Spectrogram s = stft(w, window_size, std::max(1, window_size / 4));
  const Tensor<float> fb = mel_filterbank(n_mels, window_size, w.sample_rate);
  const int bins = s.freq_bins();

  MelSpec out;
  out.window_size = window_size;
  out.n_mels = n_mels;
  out.floor = floor;
  out.log_mels = Tensor<float>({s.frames, n_mels});
  for (int64_t f = 0; f < s.frames; ++f) {
    for (int m = 0; m < n_mels; ++m) {
      double e = 0.0;
      for (int k = 0; k < bins; ++k) {
        const std::complex<float>& c = s.at(f, k);
        const double p = static_cast<double>(c.real()) * c.real() +
                         static_cast<double>(c.imag()) * c.imag();
        e += p * fb.at(m, k);
      }
      out.log_mels.at(f, m) =
          static_cast<float>(std::log(std::max(e, static_cast<double>(floor))));
    }
  }
  return out;
}

Biquad k_weight_shelf(int sample_rate) {
  // Pre-filter stage of the K-weighting curve, parameterized so that any
  // sample rate reproduces the response the standard tabulates at 48 kHz.
  const double G = 3.999843853973347;
  const double fc = 1681.974450955533;
  const double Q = 0.7071752369554196;
  const double K = std::tan(M_PI * fc / sample_rate);
  const double Vh = std::pow(10.0, G / 20.0);
  const double Vb = std::pow(Vh, 0.4996667741545416);
  const double a0 = 1.0 + K / Q + K * K;
  Biquad bq;
  bq.b0 = (Vh + Vb * K / Q + K * K) / a0;
  bq.b1 = 2.0 * (K * K - Vh) / a0;
  bq.b2 = (Vh - Vb * K / Q + K * K) / a0;
  bq.a1 = 2.0 * (K * K - 1.0) / a0;
  bq.a2 = (1.0 - K / Q + K * K) / a0;
  return bq;
}

Biquad k_weight_highpass(int sample_rate) {
  const double fc = 38.13547087602444;
  const double Q = 0.5003270373238773;
  const double K = std::tan(M_PI * fc / sample_rate);
  Biquad bq;
  bq.b0 = 1.0;
  bq.b1 = -2.0;
  bq.b2 = 1.0;
  bq.a1 = 2.0 * (K * K - 1.0) / (1.0 + K / Q + K * K);
  bq.a2 = (1.0 - K / Q + K * K) / (1.0 + K / Q + K * K);
  return bq;
}

double biquad_gain_at(const Biquad& bq, double freq_hz, int sample_rate) {
  const double w = 2.0 * M_PI * freq_hz / sample_rate;
  const std::complex<double> z1 = std::polar(1.0, -w);
  const std::complex<double> z2 = z1 * z1;
  const std::complex<double> num = bq.b0 + bq.b1 * z1 + bq.b2 * z2;
  const std::complex<double> den = 1.0 + bq.a1 * z1 + bq.a2 * z2;
  return std::abs(num / den);
}

static void biquad_filter(const Biquad& bq, const std::vector<float>& x,
                          std::vector<double>& y) {
  y.resize(x.size());
  double x1 = 0.0, x2 = 0.0, y1 = 0.0, y2 = 0.0;
  for (size_t i = 0; i < x.size(); ++i) {
    const double xn = static_cast<double>(x[i]);
    const double yn = bq.b0 * xn + bq.b1 * x1 + bq.b2 * x2 - bq.a1 * y1 - bq.a2 * y2;
    x2 = x1;
    x1 = xn;
    y2 = y1;
    y1 = yn;
    y[i] = yn;
  }
}

static void biquad_filter_inplace(const Biquad& bq, std::vector<double>& x) {
  double x1 = 0.0, x2 = 0.0, y1 = 0.0, y2 = 0.0;
  for (size_t i = 0; i < x.size(); ++i) {
    const double xn = x[i];
    const double yn = bq.b0 * xn + bq.b1 * x1 + bq.b2 * x2 - bq.a1 * y1 - bq.a2 * y2;
    x2 = x1;
    x1 = xn;
    y2 = y1;
    y1 = yn;
    x[i] = yn;
  }
}

double measure_lufs(const Waveform& w) {
  if (w.sample_rate <= 0) throw ConfigError("measure_lufs: bad sample rate");
  const int64_t block = static_cast<int64_t>(std::lround(0.400 * w.sample_rate));
  const int64_t hop = static_cast<int64_t>(std::lround(0.100 * w.sample_rate));
  if (w.size() < block)
    throw InputTooShort("measure_lufs: need at least 400 ms of audio");

  std::vector<double> kw;
  biquad_filter(k_weight_shelf(w.sample_rate), w.samples, kw);
  biquad_filter_inplace(k_weight_highpass(w.sample_rate), kw);

  std::vector<double> powers;
  for (int64_t start = 0; start + block <= static_cast<int64_t>(kw.size());
       start += hop) {
    double s = 0.0;
    for (int64_t i = start; i < start + block; ++i) s += kw[static_cast<size_t>(i)] * kw[static_cast<size_t>(i)];
    powers.push_back(s / static_cast<double>(block));
  }

  constexpr double kOffset = -0.691;
  constexpr double kAbsGate = -70.0;
  double sum = 0.0;
  int64_t count = 0;
  for (double z : powers) {
    if (kOffset + 10.0 * std::log10(std::max(z, 1e-30)) > kAbsGate) {
      sum += z;
      ++count;
    }
  }
  if (count == 0) throw SilentInput("measure_lufs: all blocks below the absolute gate");

  const double rel_gate = kOffset + 10.0 * std::log10(sum / count) - 10.0;
  double sum2 = 0.0;
  int64_t count2 = 0;
  for (double z : powers) {
    const double lj = kOffset + 10.0 * std::log10(std::max(z, 1e-30));
    if (lj > kAbsGate && lj > rel_gate) {
      sum2 += z;
      ++count2;
    }
  }
  if (count2 == 0) throw SilentInput("measure_lufs: all blocks gated out");
  return kOffset + 10.0 * std::log10(sum2 / count2);
}

NormalizeResult normalize_lufs(const Waveform& w, double target_lufs) {
  const double measured = measure_lufs(w);
  NormalizeResult r;
  r.gain_db = target_lufs - measured;
  const float g = static_cast<float>(std::pow(10.0, r.gain_db / 20.0));
  r.out = w;
  for (auto& s : r.out.samples) s *= g;
  return r;
}

Waveform peak_clamp(const Waveform& w, double ceiling_db) {
  float peak = 0.0f;
  for (float s : w.samples) peak = std::max(peak, std::abs(s));
  const double ceiling = std::pow(10.0, ceiling_db / 20.0);
  if (peak <= ceiling || peak == 0.0f) return w;
  const float g = static_cast<float>(ceiling / peak);
  Waveform out = w;
  for (auto& s : out.samples) s *= g;
  return out;
}

}  // namespace sdc
