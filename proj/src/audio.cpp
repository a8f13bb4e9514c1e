// audio.cpp

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

#include "modspec/audio.hpp"

#include <cmath>
#include <string>

#include "modspec/common.hpp"

namespace modspec {

void ValidatePipelineAudio(const AudioBuffer &audio) {
  if (audio.sample_rate_hz != kSampleRateHz)
    Fail(ErrorKind::kConfig, "expected a sample rate of 16000 Hz, got " +
                                 std::to_string(audio.sample_rate_hz));
  if (audio.empty()) Fail(ErrorKind::kEmptyInput, "audio buffer is empty");
  for (float s : audio.samples)
    if (!std::isfinite(s))
      Fail(ErrorKind::kNumerical, "audio contains non-finite samples");
}

double MeanPower(const std::vector<float> &samples) {
  if (samples.empty()) return 0.0;
  double acc = 0.0;
  for (float s : samples) acc += static_cast<double>(s) * s;
  return acc / static_cast<double>(samples.size());
}

}  // namespace modspec
