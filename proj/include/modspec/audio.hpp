// modspec/audio.hpp

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

#ifndef MODSPEC_AUDIO_HPP_
#define MODSPEC_AUDIO_HPP_

#include <cstddef>
#include <vector>

namespace modspec {

/// Every pipeline entry point expects audio at this rate. Resampling is not
/// provided.
inline constexpr int kSampleRateHz = 16000;

/// Mono samples in normalized amplitude (roughly [-1, 1]).
struct AudioBuffer {
  std::vector<float> samples;
  int sample_rate_hz = kSampleRateHz;

  std::size_t size() const { return samples.size(); }
  bool empty() const { return samples.empty(); }
  double duration_s() const {
    return static_cast<double>(samples.size()) / sample_rate_hz;
  }
};

/// Throws kConfig on a rate other than 16 kHz, kEmptyInput on empty audio and
/// kNumerical on non-finite samples.
void ValidatePipelineAudio(const AudioBuffer &audio);

/// Mean of x^2 over the whole buffer, in double precision.
double MeanPower(const std::vector<float> &samples);

}  // namespace modspec

#endif  // MODSPEC_AUDIO_HPP_
