// io/wav.cpp

// Copyright 2026  The modspec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "modspec/io/wav.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <vector>

#include "modspec/common.hpp"

namespace modspec {

namespace {

std::uint32_t Le32(const unsigned char *p) {
  return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}
std::uint16_t Le16(const unsigned char *p) {
  return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

void Put32(std::ostream &os, std::uint32_t v) {
  unsigned char b[4] = {static_cast<unsigned char>(v), static_cast<unsigned char>(v >> 8),
                        static_cast<unsigned char>(v >> 16), static_cast<unsigned char>(v >> 24)};
  os.write(reinterpret_cast<const char *>(b), 4);
}
void Put16(std::ostream &os, std::uint16_t v) {
  unsigned char b[2] = {static_cast<unsigned char>(v), static_cast<unsigned char>(v >> 8)};
  os.write(reinterpret_cast<const char *>(b), 2);
}

WavInfo ParseHeader(std::istream &is, const std::string &path) {
  unsigned char riff[12];
  if (!is.read(reinterpret_cast<char *>(riff), 12))
    Fail(ErrorKind::kFormat, path + ": truncated RIFF header");
  if (std::memcmp(riff, "RIFF", 4) != 0 || std::memcmp(riff + 8, "WAVE", 4) != 0)
    Fail(ErrorKind::kFormat, path + ": not a RIFF/WAVE file");

  WavInfo info;
  bool have_fmt = false;
  std::uint64_t pos = 12;
  while (true) {
    unsigned char hdr[8];
    if (!is.read(reinterpret_cast<char *>(hdr), 8))
      Fail(ErrorKind::kFormat, path + ": no data chunk");
    pos += 8;
    const std::uint32_t size = Le32(hdr + 4);
    if (std::memcmp(hdr, "fmt ", 4) == 0) {
      if (size < 16) Fail(ErrorKind::kFormat, path + ": fmt chunk too small");
      std::vector<unsigned char> fmt(size);
      if (!is.read(reinterpret_cast<char *>(fmt.data()), size))
        Fail(ErrorKind::kFormat, path + ": truncated fmt chunk");
      info.format_tag = Le16(&fmt[0]);
      info.channels = Le16(&fmt[2]);
      info.sample_rate_hz = static_cast<int>(Le32(&fmt[4]));
      info.bits_per_sample = Le16(&fmt[14]);
      // WAVE_FORMAT_EXTENSIBLE stores the real tag in the sub-format GUID.
      if (info.format_tag == 0xFFFE && size >= 26) info.format_tag = Le16(&fmt[24]);
      have_fmt = true;
      pos += size;
    } else if (std::memcmp(hdr, "data", 4) == 0) {
      if (!have_fmt) Fail(ErrorKind::kFormat, path + ": data chunk before fmt chunk");
      info.data_bytes = size;
      info.data_offset = pos;
      return info;
    } else {
      is.seekg(size, std::ios::cur);
      pos += size;
    }
    if (size & 1u) {  // chunks are word aligned
      is.seekg(1, std::ios::cur);
      ++pos;
    }
  }
}

}  // namespace

WavInfo ReadWavInfo(const std::string &path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) Fail(ErrorKind::kIo, "cannot open " + path);
  return ParseHeader(is, path);
}

AudioBuffer ReadWav(const std::string &path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) Fail(ErrorKind::kIo, "cannot open " + path);
  const WavInfo info = ParseHeader(is, path);

  if (info.format_tag != 1)
    Fail(ErrorKind::kInput, path + ": unsupported encoding (format tag " +
                                std::to_string(info.format_tag) + "), expected PCM");
  if (info.channels != 1)
    Fail(ErrorKind::kInput, path + ": expected mono audio, found " +
                                std::to_string(info.channels) + " channels");
  if (info.bits_per_sample != 16)
    Fail(ErrorKind::kInput, path + ": expected 16-bit samples, found " +
                                std::to_string(info.bits_per_sample) + "-bit");
  if (info.sample_rate_hz != kSampleRateHz)
    Fail(ErrorKind::kInput, path + ": expected 16000 Hz, found " +
                                std::to_string(info.sample_rate_hz) + " Hz");

  const std::size_t n = info.data_bytes / 2;
  std::vector<unsigned char> raw(n * 2);
  if (!is.read(reinterpret_cast<char *>(raw.data()), static_cast<std::streamsize>(raw.size())))
    Fail(ErrorKind::kFormat, path + ": truncated sample data");

  AudioBuffer audio;
  audio.sample_rate_hz = info.sample_rate_hz;
  audio.samples.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto v = static_cast<std::int16_t>(Le16(&raw[2 * i]));
    audio.samples[i] = static_cast<float>(v) / 32768.0f;
  }
  return audio;
}

void WriteWav(const std::string &path, const AudioBuffer &audio) {
  std::ofstream os(path, std::ios::binary);
  if (!os) Fail(ErrorKind::kIo, "cannot create " + path);
  const std::uint32_t data_bytes = static_cast<std::uint32_t>(audio.size() * 2);
  os.write("RIFF", 4);
  Put32(os, 36 + data_bytes);
  os.write("WAVE", 4);
  os.write("fmt ", 4);
  Put32(os, 16);
  Put16(os, 1);
  Put16(os, 1);
  Put32(os, static_cast<std::uint32_t>(audio.sample_rate_hz));
  Put32(os, static_cast<std::uint32_t>(audio.sample_rate_hz) * 2);
  Put16(os, 2);
  Put16(os, 16);
  os.write("data", 4);
  Put32(os, data_bytes);
  for (float s : audio.samples) {
    double v = std::round(static_cast<double>(s) * 32768.0);
    v = std::clamp(v, -32768.0, 32767.0);
    Put16(os, static_cast<std::uint16_t>(static_cast<std::int16_t>(v)));
  }
  if (!os) Fail(ErrorKind::kIo, "write failed for " + path);
}

}  // namespace modspec
