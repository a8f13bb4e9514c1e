// toy_speech.cpp

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

#include "modspec/toy_speech.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "modspec/common.hpp"

namespace modspec {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Two-pole resonator with unity gain at its centre frequency.
class Resonator {
 public:
  Resonator(double freq_hz, double bandwidth_hz, double sr) {
    const double r = std::exp(-std::numbers::pi * bandwidth_hz / sr);
    a1_ = 2.0 * r * std::cos(kTwoPi * freq_hz / sr);
    a2_ = -r * r;
    g_ = 1.0 - r;
  }
  double operator()(double x) {
    const double y = g_ * x + a1_ * y1_ + a2_ * y2_;
    y2_ = y1_;
    y1_ = y;
    return y;
  }

 private:
  double a1_, a2_, g_;
  double y1_ = 0.0, y2_ = 0.0;
};

struct Vowel {
  double f1, f2, f3;
};

constexpr std::array<Vowel, 6> kVowels{{
    {730, 1090, 2440},  // a
    {270, 2290, 3010},  // i
    {300, 870, 2240},   // u
    {530, 1840, 2480},  // e
    {570, 840, 2410},   // o
    {660, 1720, 2410},  // ae
}};

void Normalize(std::vector<float> &x, double rms) {
  double p = 0.0;
  for (float v : x) p += static_cast<double>(v) * v;
  p /= std::max<std::size_t>(x.size(), 1);
  if (p <= 0.0) return;
  const double g = rms / std::sqrt(p);
  for (float &v : x) v = static_cast<float>(std::clamp(v * g, -0.99, 0.99));
}

}  // namespace

AudioBuffer SynthesizeToySpeech(std::uint64_t seed, const ToySpeechOptions &opts) {
  if (opts.duration_s <= 0.0 || opts.syllable_rate_hz <= 0.0 || opts.f0_lo_hz <= 0.0 ||
      opts.f0_hi_hz < opts.f0_lo_hz || opts.pause_probability < 0.0 ||
      opts.pause_probability >= 1.0 || opts.amplitude_jitter < 0.0 || opts.amplitude_jitter > 1.0 ||
      opts.duration_jitter < 0.0 || opts.duration_jitter >= 1.0)
    Fail(ErrorKind::kConfig, "invalid toy speech options");
  const double sr = kSampleRateHz;
  const auto n = static_cast<std::size_t>(std::llround(opts.duration_s * sr));
  std::mt19937_64 rng(MixSeed(seed));
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);

  std::vector<double> out(n, 0.0);
  const double speaker_f0 = opts.f0_lo_hz + (opts.f0_hi_hz - opts.f0_lo_hz) * u01(rng);
  const double mean_syl = 1.0 / opts.syllable_rate_hz;

  std::size_t pos = static_cast<std::size_t>(0.05 * sr * u01(rng));
  while (pos < n) {
    if (u01(rng) < opts.pause_probability) {
      pos += static_cast<std::size_t>((0.15 + 0.3 * u01(rng)) * sr);
      continue;
    }
    const double dur = mean_syl * (1.0 - opts.duration_jitter + 2.0 * opts.duration_jitter * u01(rng));
    const auto len = static_cast<std::size_t>(dur * sr);
    const Vowel &v = kVowels[static_cast<std::size_t>(u01(rng) * kVowels.size()) % kVowels.size()];
    const double scale = 0.9 + 0.2 * u01(rng);
    Resonator r1(v.f1 * scale, 80, sr), r2(v.f2 * scale, 100, sr), r3(v.f3 * scale, 150, sr);
    const double f0_start = speaker_f0 * (0.9 + 0.2 * u01(rng));
    const double f0_end = f0_start * (0.85 + 0.25 * u01(rng));
    const double amp = 1.0 - opts.amplitude_jitter * u01(rng);

    // Fricative onset: shaped noise ahead of the vowel.
    std::size_t fric = 0;
    if (u01(rng) < 0.4) fric = static_cast<std::size_t>((0.03 + 0.05 * u01(rng)) * sr);
    Resonator fr(3000 + 2500 * u01(rng), 1500, sr);
    double prev = 0.0;
    for (std::size_t i = 0; i < fric && pos + i < n; ++i) {
      const double w = std::sin(std::numbers::pi * (i + 0.5) / fric);
      const double e = gauss(rng);
      out[pos + i] += 0.25 * amp * w * fr(e - prev);
      prev = e;
    }
    pos += fric;

    double phase = 0.0;
    for (std::size_t i = 0; i < len && pos + i < n; ++i) {
      const double frac = static_cast<double>(i) / len;
      const double f0 = f0_start + (f0_end - f0_start) * frac;
      phase += kTwoPi * f0 / sr;
      if (phase > kTwoPi) phase -= kTwoPi;
      double src = 0.0;
      const int harmonics = static_cast<int>(4000.0 / f0);
      for (int h = 1; h <= harmonics; ++h) src += std::sin(h * phase) / h;
      const double env = 0.5 - 0.5 * std::cos(kTwoPi * std::min(frac, 1.0));
      const double y = r1(src) + 0.6 * r2(src) + 0.3 * r3(src);
      out[pos + i] += amp * env * y;
    }
    pos += len;
  }

  AudioBuffer audio;
  audio.sample_rate_hz = kSampleRateHz;
  audio.samples.resize(n);
  double peak = 0.0;
  for (double s : out) peak = std::max(peak, std::abs(s));
  const double floor = 1e-3 * std::max(peak, 1e-3);
  for (std::size_t i = 0; i < n; ++i)
    audio.samples[i] = static_cast<float>(out[i] + floor * gauss(rng));
  Normalize(audio.samples, opts.rms);
  return audio;
}

AudioBuffer SynthesizeToyNoise(ToyNoiseKind kind, double duration_s, std::uint64_t seed) {
  if (duration_s <= 0.0) Fail(ErrorKind::kConfig, "noise duration must be positive");
  const auto n = static_cast<std::size_t>(std::llround(duration_s * kSampleRateHz));
  std::mt19937_64 rng(MixSeed(seed));
  std::normal_distribution<double> gauss(0.0, 1.0);
  AudioBuffer audio;
  audio.sample_rate_hz = kSampleRateHz;
  audio.samples.resize(n);
  double state = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double v = 0.0;
    switch (kind) {
      case ToyNoiseKind::kWhite:
        v = gauss(rng);
        break;
      case ToyNoiseKind::kBrown:
        state = 0.995 * state + 0.1 * gauss(rng);
        v = state;
        break;
      case ToyNoiseKind::kHum: {
        const double t = static_cast<double>(i) / kSampleRateHz;
        v = std::sin(kTwoPi * 50 * t) + 0.5 * std::sin(kTwoPi * 150 * t) + 0.1 * gauss(rng);
        break;
      }
    }
    audio.samples[i] = static_cast<float>(v);
  }
  Normalize(audio.samples, 0.1);
  return audio;
}

}  // namespace modspec
