// dsp/spectrogram.cpp

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

#include "modspec/dsp/spectrogram.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "modspec/common.hpp"

namespace modspec {

std::int64_t UtteranceFrameCount(std::size_t num_samples) {
  return static_cast<std::int64_t>((num_samples + kSamplesPerFrame - 1) / kSamplesPerFrame);
}

std::vector<double> OverlapAddWindow(int length) {
  std::vector<double> w(length);
  for (int n = 0; n < length; ++n) {
    double s = std::sin(std::numbers::pi * (n + 0.5) / length);
    w[n] = s * s;
  }
  return w;
}

FdlpSpectrogram OverlapAddSpectrogram(std::span<const EnvelopeBlock> blocks,
                                      std::int64_t utterance_frames) {
  if (blocks.empty()) Fail(ErrorKind::kSequence, "no envelope blocks to overlap-add");
  if (utterance_frames < 1) Fail(ErrorKind::kContract, "utterance_frames must be positive");

  std::vector<const EnvelopeBlock *> order;
  for (const auto &b : blocks) order.push_back(&b);
  std::sort(order.begin(), order.end(), [](const EnvelopeBlock *a, const EnvelopeBlock *b) {
    return a->window_index < b->window_index;
  });
  const Eigen::Index bands = order.front()->log_envelope.rows();
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (order[i]->window_index != static_cast<int>(i))
      Fail(ErrorKind::kSequence, "missing envelope block for window " + std::to_string(i));
    if (order[i]->log_envelope.rows() != bands ||
        order[i]->log_envelope.cols() != kFramesPerWindow)
      Fail(ErrorKind::kContract, "envelope block " + std::to_string(i) + " has the wrong shape");
  }

  static const std::vector<double> window = OverlapAddWindow(kFramesPerWindow);
  Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(utterance_frames, bands);
  std::vector<double> weight(utterance_frames, 0.0);

  FdlpSpectrogram out;
  for (const EnvelopeBlock *blk : order) {
    const std::int64_t start = static_cast<std::int64_t>(blk->window_index) * kHopFrames;
    const std::int64_t end = std::min<std::int64_t>(start + kFramesPerWindow, utterance_frames);
    for (std::int64_t t = start; t < end; ++t) {
      const double w = window[t - start];
      weight[t] += w;
      for (Eigen::Index b = 0; b < bands; ++b) acc(t, b) += w * blk->log_envelope(b, t - start);
    }
    if (blk->masked && start < end) {
      FrameRange r{start, end};
      if (out.masked_frame_range) {
        r.start = std::min(r.start, out.masked_frame_range->start);
        r.end = std::max(r.end, out.masked_frame_range->end);
      }
      out.masked_frame_range = r;
    }
  }

  out.frames.resize(utterance_frames, bands);
  for (std::int64_t t = 0; t < utterance_frames; ++t) {
    if (!(weight[t] > 0.0))
      Fail(ErrorKind::kSequence, "frame " + std::to_string(t) + " is not covered by any window");
    for (Eigen::Index b = 0; b < bands; ++b)
      out.frames(t, b) = static_cast<float>(acc(t, b) / weight[t]);
  }
  return out;
}

}  // namespace modspec
