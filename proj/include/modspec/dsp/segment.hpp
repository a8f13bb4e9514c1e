// modspec/dsp/segment.hpp

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

#ifndef MODSPEC_DSP_SEGMENT_HPP_
#define MODSPEC_DSP_SEGMENT_HPP_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "modspec/audio.hpp"

namespace modspec {

inline constexpr double kWindowSeconds = 1.5;
inline constexpr int kWindowSamples = 24000;  // 1.5 s at 16 kHz
inline constexpr int kHopSamples = 12000;     // 50% overlap

/// One Hann-weighted 1.5 s slice of an utterance.
struct WindowedSegment {
  std::vector<double> samples;  // exactly kWindowSamples
  std::int64_t start_sample = 0;
  int window_index = 0;
};

/// Number of analysis windows for an utterance of `num_samples` samples:
/// max(1, ceil((len - 24000) / 12000) + 1).
std::size_t SegmentCount(std::size_t num_samples);

/// Periodic Hann window, w[n] = 0.5 - 0.5 cos(2 pi n / N).
std::vector<double> PeriodicHann(int length);

/// Splits the utterance into 50%-overlapping Hann-weighted windows. The last
/// window is zero-padded before weighting.
std::vector<WindowedSegment> SegmentUtterance(const AudioBuffer &audio);

}  // namespace modspec

#endif  // MODSPEC_DSP_SEGMENT_HPP_
