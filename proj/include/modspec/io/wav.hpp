// modspec/io/wav.hpp

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

#ifndef MODSPEC_IO_WAV_HPP_
#define MODSPEC_IO_WAV_HPP_

#include <cstdint>
#include <string>

#include "modspec/audio.hpp"

namespace modspec {

struct WavInfo {
  int channels = 0;
  int sample_rate_hz = 0;
  int bits_per_sample = 0;
  int format_tag = 0;           // 1 = PCM
  std::uint64_t data_bytes = 0;
  std::uint64_t data_offset = 0;

  std::uint64_t frame_count() const {
    const int frame_bytes = channels * (bits_per_sample / 8);
    return frame_bytes > 0 ? data_bytes / frame_bytes : 0;
  }
  double duration_s() const {
    return sample_rate_hz > 0 ? static_cast<double>(frame_count()) / sample_rate_hz : 0.0;
  }
};

/// Parses the RIFF header only. Throws kIo / kFormat.
WavInfo ReadWavInfo(const std::string &path);

/// Reads 16-bit PCM mono 16 kHz audio, scaled by 1/32768. Stereo,
/// compressed, other bit depths and other rates are rejected (kInput) with
/// the offending value in the message.
AudioBuffer ReadWav(const std::string &path);

/// Writes 16-bit PCM mono; samples are scaled by 32768, rounded and clipped.
void WriteWav(const std::string &path, const AudioBuffer &audio);

}  // namespace modspec

#endif  // MODSPEC_IO_WAV_HPP_
