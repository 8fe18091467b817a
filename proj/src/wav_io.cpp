#include "sdc/wav_io.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>
#include <vector>

namespace sdc {

namespace {

void put_u32(std::vector<uint8_t>& v, uint32_t x) {
  v.push_back(static_cast<uint8_t>(x & 0xff));
  v.push_back(static_cast<uint8_t>((x >> 8) & 0xff));
  v.push_back(static_cast<uint8_t>((x >> 16) & 0xff));
  v.push_back(static_cast<uint8_t>((x >> 24) & 0xff));
}

void put_u16(std::vector<uint8_t>& v, uint16_t x) {
  v.push_back(static_cast<uint8_t>(x & 0xff));
  v.push_back(static_cast<uint8_t>((x >> 8) & 0xff));
}

uint32_t get_u32(const uint8_t* p) {
  return static_cast<uint32_t>(p[0]) | (static_cast<uint32_t>(p[1]) << 8) |
         (static_cast<uint32_t>(p[2]) << 16) | (static_cast<uint32_t>(p[3]) << 24);
}

uint16_t get_u16(const uint8_t* p) {
  return static_cast<uint16_t>(p[0] | (p[1] << 8));
}

}  // namespace

Waveform read_wav(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IOError("read_wav: cannot open " + path);
  std::vector<uint8_t> buf((std::istreambuf_iterator<char>(f)),
                           std::istreambuf_iterator<char>());
  if (buf.size() < 44 || std::memcmp(buf.data(), "RIFF", 4) != 0 ||
      std::memcmp(buf.data() + 8, "WAVE", 4) != 0)
    throw FormatError("read_wav: not a RIFF/WAVE file: " + path);

  uint16_t format = 0, channels = 0, bits = 0;
  uint32_t rate = 0;
  size_t data_off = 0, data_len = 0;
  size_t pos = 12;
  while (pos + 8 <= buf.size()) {
    const char* id = reinterpret_cast<const char*>(buf.data() + pos);
    const uint32_t sz = get_u32(buf.data() + pos + 4);
    if (std::memcmp(id, "fmt ", 4) == 0) {
      if (pos + 8 + 16 > buf.size()) throw FormatError("read_wav: truncated fmt chunk");
      format = get_u16(buf.data() + pos + 8);
      channels = get_u16(buf.data() + pos + 10);
      rate = get_u32(buf.data() + pos + 12);
      bits = get_u16(buf.data() + pos + 22);
    } else if (std::memcmp(id, "data", 4) == 0) {
      data_off = pos + 8;
      data_len = sz;
    }
    pos += 8 + sz + (sz & 1);
  }
  if (data_off == 0) throw FormatError("read_wav: no data chunk in " + path);
  if (data_off + data_len > buf.size())
    throw FormatError("read_wav: truncated data chunk in " + path);
  if (channels != 1)
    throw FormatError("read_wav: only mono supported, got " +
                      std::to_string(channels) + " channels");

  Waveform w;
  w.sample_rate = static_cast<int>(rate);
  const uint8_t* d = buf.data() + data_off;
  if (format == 1 && bits == 16) {
    const size_t n = data_len / 2;
    w.samples.resize(n);
    for (size_t i = 0; i < n; ++i) {
      int16_t v;
      std::memcpy(&v, d + 2 * i, 2);
      w.samples[i] = static_cast<float>(v) / 32768.0f;
    }
  } else if (format == 3 && bits == 32) {
    const size_t n = data_len / 4;
    w.samples.resize(n);
    std::memcpy(w.samples.data(), d, n * 4);
  } else {
    throw FormatError("read_wav: unsupported encoding (format=" +
                      std::to_string(format) + ", bits=" + std::to_string(bits) + ")");
  }
  return w;
}

Waveform read_wav_expect(const std::string& path, int sample_rate) {
  Waveform w = read_wav(path);
  if (w.sample_rate != sample_rate)
    throw FormatError("read_wav: " + path + " is " + std::to_string(w.sample_rate) +
                      " Hz, expected " + std::to_string(sample_rate) +
                      " Hz (resampling is not supported)");
  return w;
}

void write_wav(const std::string& path, const Waveform& w, WavEncoding enc) {
  const uint32_t n = static_cast<uint32_t>(w.samples.size());
  const uint16_t bytes_per = enc == WavEncoding::kPcm16 ? 2 : 4;
  const uint32_t data_len = n * bytes_per;

  std::vector<uint8_t> buf;
  buf.reserve(44 + data_len);
  buf.insert(buf.end(), {'R', 'I', 'F', 'F'});
  put_u32(buf, 36 + data_len);
  buf.insert(buf.end(), {'W', 'A', 'V', 'E', 'f', 'm', 't', ' '});
  put_u32(buf, 16);
  put_u16(buf, enc == WavEncoding::kPcm16 ? 1 : 3);
  put_u16(buf, 1);
  put_u32(buf, static_cast<uint32_t>(w.sample_rate));
  put_u32(buf, static_cast<uint32_t>(w.sample_rate) * bytes_per);
  put_u16(buf, bytes_per);
  put_u16(buf, static_cast<uint16_t>(bytes_per * 8));
  buf.insert(buf.end(), {'d', 'a', 't', 'a'});
  put_u32(buf, data_len);

  if (enc == WavEncoding::kPcm16) {
    for (float s : w.samples) {
      const float c = std::max(-1.0f, std::min(1.0f, s));
      const int16_t v = static_cast<int16_t>(std::lround(c * 32767.0f));
      buf.push_back(static_cast<uint8_t>(v & 0xff));
      buf.push_back(static_cast<uint8_t>((v >> 8) & 0xff));
    }
  } else {
    const size_t off = buf.size();
    buf.resize(off + data_len);
    std::memcpy(buf.data() + off, w.samples.data(), data_len);
  }

  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IOError("write_wav: cannot open " + path + " for writing");
  f.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
  if (!f) throw IOError("write_wav: short write to " + path);
}

}  // namespace sdc
