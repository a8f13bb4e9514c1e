// modspec/augment.hpp

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

// Additive-noise augmentation at a controlled signal-to-noise ratio.

#ifndef MODSPEC_AUGMENT_HPP_
#define MODSPEC_AUGMENT_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "modspec/audio.hpp"

namespace modspec {

struct AugmentPolicy {
  double apply_probability = 0.8;
  double snr_lo_db = 12.0;
  double snr_hi_db = 18.0;
  std::vector<std::string> noise_manifest;

  /// Throws kConfig on a probability outside [0, 1], snr_lo > snr_hi, or an
  /// empty manifest while the probability is positive.
  void Validate() const;
};

/// Noise clips loaded from a policy's manifest, indexed like the manifest.
struct NoiseBank {
  std::vector<AudioBuffer> clips;

  static NoiseBank Load(const std::vector<std::string> &paths);
};

/// Repeats (with a circular start offset) or crops `noise` to `length`.
std::vector<float> FitNoiseLength(const std::vector<float> &noise, std::size_t length,
                                  std::size_t offset = 0);

struct MixResult {
  AudioBuffer audio;
  bool skipped = false;  // zero-power noise: output is the input speech
  double gain = 0.0;     // applied to the noise
};

/// speech + g * noise with g chosen so that
/// 10 log10(P_speech / P_scaled_noise) = snr_db over the whole utterance.
/// `noise` must already be as long as `speech`.
MixResult MixAtSnr(const AudioBuffer &speech, const AudioBuffer &noise, double snr_db);

/// 10 log10(P_speech / P_noise).
double SnrDb(const std::vector<float> &speech, const std::vector<float> &noise);

struct AugmentResult {
  AudioBuffer audio;
  bool applied = false;
  std::optional<double> snr_db;
  int noise_index = -1;
};

/// With probability policy.apply_probability mixes in a uniformly drawn clip
/// from `bank` at an SNR drawn uniformly from [snr_lo_db, snr_hi_db].
/// Deterministic in `seed`. When nothing is applied the output is a bitwise
/// copy of `speech`.
AugmentResult MaybeAugment(const AudioBuffer &speech, const AugmentPolicy &policy,
                           const NoiseBank &bank, std::uint64_t seed);

}  // namespace modspec

#endif  // MODSPEC_AUGMENT_HPP_
