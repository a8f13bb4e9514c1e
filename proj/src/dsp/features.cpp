// dsp/features.cpp

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

#include "modspec/dsp/features.hpp"

#include <random>
#include <string>

#include "modspec/common.hpp"
#include "modspec/dsp/segment.hpp"

namespace modspec {

UtteranceAnalysis AnalyzeUtterance(const AudioBuffer &audio, ExtractMode mode,
                                   const FdlpOptions &opts) {
  ValidatePipelineAudio(audio);
  if (mode == ExtractMode::kTraining && audio.size() < static_cast<std::size_t>(kWindowSamples))
    Fail(ErrorKind::kTooShort, "utterance of " + std::to_string(audio.size()) +
                                   " samples is shorter than one 1.5 s window");

  const SubbandFilterbank &bank = DefaultFilterbank();
  UtteranceAnalysis out;
  out.frame_count = UtteranceFrameCount(audio.size());
  for (const WindowedSegment &seg : SegmentUtterance(audio))
    out.windows.push_back(ComputeModulationSpectrum(seg, bank, opts));
  return out;
}

FdlpSpectrogram RenderSpectrogram(const UtteranceAnalysis &analysis,
                                  const std::optional<MaskSpec> &mask) {
  if (mask) {
    mask->Validate();
    if (!mask->window_index)
      Fail(ErrorKind::kContract, "RenderSpectrogram needs a resolved mask window");
    if (*mask->window_index >= static_cast<int>(analysis.windows.size()))
      Fail(ErrorKind::kConfig, "mask window " + std::to_string(*mask->window_index) +
                                   " is past the last window");
  }

  std::vector<EnvelopeBlock> blocks;
  blocks.reserve(analysis.windows.size());
  for (const ModulationSpectrum &spec : analysis.windows) {
    const bool masked = mask && *mask->window_index == spec.window_index;
    const ModulationSpectrum &src = masked ? ApplyModulationDropout(spec, *mask) : spec;
    EnvelopeBlock blk;
    blk.window_index = spec.window_index;
    blk.masked = masked;
    blk.log_envelope.resize(src.band_count, kFramesPerWindow);
    for (int b = 0; b < src.band_count; ++b) {
      auto env = SynthesizeLogEnvelope(src.band(b), kFramesPerWindow);
      for (int t = 0; t < kFramesPerWindow; ++t) blk.log_envelope(b, t) = env[t];
    }
    blocks.push_back(std::move(blk));
  }
  return OverlapAddSpectrogram(blocks, analysis.frame_count);
}

int ChooseMaskWindow(std::size_t window_count, std::uint64_t seed) {
  if (window_count == 0) Fail(ErrorKind::kEmptyInput, "no windows to mask");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, window_count - 1);
  return static_cast<int>(pick(rng));
}

FeaturePair RenderFeaturePair(const UtteranceAnalysis &analysis,
                              const std::optional<MaskSpec> &mask, std::uint64_t seed) {
  FeaturePair out;
  out.window_count = analysis.windows.size();
  out.clean = RenderSpectrogram(analysis, std::nullopt);
  if (!mask) {
    out.masked = out.clean;
    return out;
  }
  MaskSpec resolved = *mask;
  if (!resolved.window_index)
    resolved.window_index = ChooseMaskWindow(analysis.windows.size(), seed);
  out.masked_window = *resolved.window_index;
  out.masked = RenderSpectrogram(analysis, resolved);
  // The clean target carries the same annotation so the loss knows where to look.
  out.clean.masked_frame_range = out.masked.masked_frame_range;
  return out;
}

FeaturePair ExtractFeatures(const AudioBuffer &audio, const std::optional<MaskSpec> &mask,
                            std::uint64_t seed, ExtractMode mode, const FdlpOptions &opts) {
  if (mask) mask->Validate();
  return RenderFeaturePair(AnalyzeUtterance(audio, mode, opts), mask, seed);
}

FrameMatrix SubtractBandMeans(const FrameMatrix &frames) {
  if (frames.rows() == 0) return frames;
  Eigen::RowVectorXd mean = frames.cast<double>().colwise().mean();
  FrameMatrix out = (frames.cast<double>().rowwise() - mean).cast<float>();
  return out;
}

}  // namespace modspec
