// dsp/segment.cpp

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

#include "modspec/dsp/segment.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace modspec {

std::size_t SegmentCount(std::size_t num_samples) {
  if (num_samples <= static_cast<std::size_t>(kWindowSamples)) return 1;
  std::size_t excess = num_samples - kWindowSamples;
  return (excess + kHopSamples - 1) / kHopSamples + 1;
}

std::vector<double> PeriodicHann(int length) {
  std::vector<double> w(length);
  for (int n = 0; n < length; ++n)
    w[n] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * n / length);
  return w;
}

std::vector<WindowedSegment> SegmentUtterance(const AudioBuffer &audio) {
  ValidatePipelineAudio(audio);
  static const std::vector<double> hann = PeriodicHann(kWindowSamples);

  const std::size_t count = SegmentCount(audio.size());
  std::vector<WindowedSegment> segments(count);
  for (std::size_t w = 0; w < count; ++w) {
    WindowedSegment &seg = segments[w];
    seg.window_index = static_cast<int>(w);
    seg.start_sample = static_cast<std::int64_t>(w) * kHopSamples;
    seg.samples.assign(kWindowSamples, 0.0);
    std::size_t start = static_cast<std::size_t>(seg.start_sample);
    std::size_t avail = std::min<std::size_t>(kWindowSamples, audio.size() - start);
    for (std::size_t n = 0; n < avail; ++n)
      seg.samples[n] = hann[n] * audio.samples[start + n];
  }
  return segments;
}

}  // namespace modspec
