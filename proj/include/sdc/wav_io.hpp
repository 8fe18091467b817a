#ifndef SDC_WAV_IO_HPP
#define SDC_WAV_IO_HPP

#include <string>

#include "sdc/dsp.hpp"

namespace sdc {

enum class WavEncoding { kPcm16, kFloat32 };

// Mono RIFF/WAVE. Reads 16-bit integer PCM and 32-bit float PCM.
Waveform read_wav(const std::string& path);

// Like read_wav but rejects files whose sample rate differs.
Waveform read_wav_expect(const std::string& path, int sample_rate);

void write_wav(const std::string& path, const Waveform& w,
               WavEncoding enc = WavEncoding::kFloat32);

}  // namespace sdc

#endif  // SDC_WAV_IO_HPP
