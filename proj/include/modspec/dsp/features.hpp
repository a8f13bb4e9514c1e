// modspec/dsp/features.hpp

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

// End-to-end feature pipeline: audio -> per-window modulation spectra ->
// (optionally masked) FDLP spectrogram.

#ifndef MODSPEC_DSP_FEATURES_HPP_
#define MODSPEC_DSP_FEATURES_HPP_

#include <cstdint>
#include <optional>
#include <vector>

#include "modspec/audio.hpp"
#include "modspec/dsp/modulation.hpp"
#include "modspec/dsp/spectrogram.hpp"

namespace modspec {

enum class ExtractMode {
  kAnalysis,  // short utterances are zero-padded to one window
  kTraining,  // short utterances are rejected with kTooShort
};

/// Modulation spectra of every window of one utterance. Rendering a
/// spectrogram from this is cheap, so training caches it per utterance.
struct UtteranceAnalysis {
  std::vector<ModulationSpectrum> windows;
  std::int64_t frame_count = 0;
};

UtteranceAnalysis AnalyzeUtterance(const AudioBuffer &audio, ExtractMode mode,
                                   const FdlpOptions &opts = {});

/// Synthesizes and overlap-adds the log envelopes. When `mask` is given its
/// window_index must be set; that window's spectrum is passed through
/// ApplyModulationDropout first.
FdlpSpectrogram RenderSpectrogram(const UtteranceAnalysis &analysis,
                                  const std::optional<MaskSpec> &mask);

/// Uniform choice of the window to mask, deterministic in `seed`.
int ChooseMaskWindow(std::size_t window_count, std::uint64_t seed);

struct FeaturePair {
  FdlpSpectrogram masked;
  FdlpSpectrogram clean;
  std::size_t window_count = 0;
  int masked_window = -1;  // -1 when no mask was applied
};

/// Runs the whole pipeline. If `mask` has no window_index one is drawn with
/// ChooseMaskWindow(seed). Without a mask, `masked` equals `clean`.
FeaturePair ExtractFeatures(const AudioBuffer &audio, const std::optional<MaskSpec> &mask,
                            std::uint64_t seed, ExtractMode mode = ExtractMode::kAnalysis,
                            const FdlpOptions &opts = {});

/// Same, starting from a cached analysis.
FeaturePair RenderFeaturePair(const UtteranceAnalysis &analysis,
                              const std::optional<MaskSpec> &mask, std::uint64_t seed);

/// Per-band mean subtraction over the utterance.
FrameMatrix SubtractBandMeans(const FrameMatrix &frames);

}  // namespace modspec

#endif  // MODSPEC_DSP_FEATURES_HPP_
