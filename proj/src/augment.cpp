// augment.cpp

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

#include "modspec/augment.hpp"

#include <cmath>
#include <iostream>
#include <limits>
#include <random>

#include "modspec/common.hpp"
#include "modspec/io/wav.hpp"

namespace modspec {

void AugmentPolicy::Validate() const {
  if (!(apply_probability >= 0.0 && apply_probability <= 1.0))
    Fail(ErrorKind::kConfig, "augment probability must lie in [0, 1]");
  if (!(snr_lo_db <= snr_hi_db))
    Fail(ErrorKind::kConfig, "augment SNR range is inverted");
  if (apply_probability > 0.0 && noise_manifest.empty())
    Fail(ErrorKind::kConfig,
         "augmentation is enabled but the noise manifest is empty");
}

NoiseBank NoiseBank::Load(const std::vector<std::string> &paths) {
  NoiseBank bank;
  for (const auto &p : paths) bank.clips.push_back(ReadWav(p));
  return bank;
}

std::vector<float> FitNoiseLength(const std::vector<float> &noise, std::size_t length,
                                  std::size_t offset) {
  std::vector<float> out(length, 0.0f);
  if (noise.empty()) return out;
  for (std::size_t i = 0; i < length; ++i) out[i] = noise[(offset + i) % noise.size()];
  return out;
}

double SnrDb(const std::vector<float> &speech, const std::vector<float> &noise) {
  return 10.0 * std::log10(MeanPower(speech) / MeanPower(noise));
}

MixResult MixAtSnr(const AudioBuffer &speech, const AudioBuffer &noise, double snr_db) {
  if (speech.sample_rate_hz != noise.sample_rate_hz)
    Fail(ErrorKind::kConfig, "speech and noise sample rates differ");
  if (speech.size() != noise.size())
    Fail(ErrorKind::kContract, "noise must be fitted to the speech length before mixing");

  MixResult res;
  const double p_noise = MeanPower(noise.samples);
  if (!(p_noise > 0.0)) {
    std::cerr << "WARNING: zero-power noise, augmentation skipped\n";
    res.audio = speech;
    res.skipped = true;
    return res;
  }
  const double p_speech = MeanPower(speech.samples);
  res.gain = std::sqrt(p_speech / (p_noise * std::pow(10.0, snr_db / 10.0)));
  res.audio.sample_rate_hz = speech.sample_rate_hz;
  res.audio.samples.resize(speech.size());
  for (std::size_t i = 0; i < speech.size(); ++i)
    res.audio.samples[i] =
        static_cast<float>(speech.samples[i] + res.gain * static_cast<double>(noise.samples[i]));
  return res;
}

AugmentResult MaybeAugment(const AudioBuffer &speech, const AugmentPolicy &policy,
                           const NoiseBank &bank, std::uint64_t seed) {
  policy.Validate();
  if (policy.apply_probability > 0.0 && bank.clips.empty())
    Fail(ErrorKind::kConfig, "noise bank is empty");

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  AugmentResult res;
  // Fixed draw order: decision, clip, SNR, offset.
  const double u = unit(rng);
  if (!(u < policy.apply_probability)) {
    res.audio = speech;
    return res;
  }
  std::uniform_int_distribution<std::size_t> pick(0, bank.clips.size() - 1);
  const std::size_t idx = pick(rng);
  const double snr = policy.snr_lo_db + (policy.snr_hi_db - policy.snr_lo_db) * unit(rng);
  const AudioBuffer &clip = bank.clips[idx];
  std::size_t offset = 0;
  if (!clip.samples.empty()) {
    std::uniform_int_distribution<std::size_t> off(0, clip.samples.size() - 1);
    offset = off(rng);
  }

  AudioBuffer noise;
  noise.sample_rate_hz = clip.sample_rate_hz;
  noise.samples = FitNoiseLength(clip.samples, speech.size(), offset);
  MixResult mix = MixAtSnr(speech, noise, snr);
  res.audio = std::move(mix.audio);
  res.noise_index = static_cast<int>(idx);
  if (!mix.skipped) {
    res.applied = true;
    res.snr_db = snr;
  }
  return res;
}

}  // namespace modspec
