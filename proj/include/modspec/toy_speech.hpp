// modspec/toy_speech.hpp

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

// Synthetic speech-like audio for smoke runs and tests where no recorded
// corpus is available: a source-filter babble of syllables at a few per
// second, plus simple noise clips for augmentation.

#ifndef MODSPEC_TOY_SPEECH_HPP_
#define MODSPEC_TOY_SPEECH_HPP_

#include <cstdint>

#include "modspec/audio.hpp"

namespace modspec {

struct ToySpeechOptions {
  double duration_s = 4.0;
  double syllable_rate_hz = 4.0;  // mean syllables per second while talking
  double f0_lo_hz = 100.0;
  double f0_hi_hz = 220.0;
  double pause_probability = 0.05;  // chance that a syllable slot is silent
  double amplitude_jitter = 0.3;    // syllable peak drawn from [1 - jitter, 1]
  double duration_jitter = 0.25;    // syllable length drawn from mean * [1 - j, 1 + j]
  double rms = 0.1;
};

/// Voiced syllables (glottal harmonics through three formant resonators)
/// with raised-cosine envelopes, optional fricative onsets, short pauses
/// and a faint noise floor. Deterministic in `seed`.
AudioBuffer SynthesizeToySpeech(std::uint64_t seed, const ToySpeechOptions &opts = {});

enum class ToyNoiseKind { kWhite, kBrown, kHum };

/// Stationary noise clip with unit-order RMS.
AudioBuffer SynthesizeToyNoise(ToyNoiseKind kind, double duration_s, std::uint64_t seed);

}  // namespace modspec

#endif  // MODSPEC_TOY_SPEECH_HPP_
