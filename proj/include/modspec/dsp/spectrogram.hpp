// modspec/dsp/spectrogram.hpp

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

#ifndef MODSPEC_DSP_SPECTROGRAM_HPP_
#define MODSPEC_DSP_SPECTROGRAM_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Core>

namespace modspec {

inline constexpr int kFrameRateHz = 100;
inline constexpr int kFramesPerWindow = 150;
inline constexpr int kHopFrames = 75;
inline constexpr int kSamplesPerFrame = 160;

using FrameMatrix = Eigen::Matrix<float, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Half-open frame interval [start, end).
struct FrameRange {
  std::int64_t start = 0;
  std::int64_t end = 0;
  std::int64_t size() const { return end - start; }
  bool contains(std::int64_t t) const { return t >= start && t < end; }
  bool operator==(const FrameRange &) const = default;
};

/// Frames x bands matrix of log power envelopes.
struct FdlpSpectrogram {
  FrameMatrix frames;
  float frame_rate_hz = static_cast<float>(kFrameRateHz);
  std::optional<FrameRange> masked_frame_range;

  std::int64_t frame_count() const { return frames.rows(); }
  int band_count() const { return static_cast<int>(frames.cols()); }
};

/// ceil(num_samples / 160): frames at 100 Hz covering the utterance.
std::int64_t UtteranceFrameCount(std::size_t num_samples);

/// Hann window sampled at half-integer points, sin^2(pi (n + 1/2) / N). It
/// never touches zero and still sums to exactly one at 50% overlap.
std::vector<double> OverlapAddWindow(int length = kFramesPerWindow);

/// Log envelopes of one analysis window: bands x 150 frames.
struct EnvelopeBlock {
  int window_index = 0;
  Eigen::MatrixXd log_envelope;
  bool masked = false;
};

/// Weighted overlap-add of per-window log envelopes at a hop of 75 frames,
/// normalized by the summed window weight. Blocks must carry window indices
/// 0..n-1 (in any order); frames past `utterance_frames` are dropped.
FdlpSpectrogram OverlapAddSpectrogram(std::span<const EnvelopeBlock> blocks,
                                      std::int64_t utterance_frames);

}  // namespace modspec

#endif  // MODSPEC_DSP_SPECTROGRAM_HPP_
