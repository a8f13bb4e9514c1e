// tests/dsp_test.cpp

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

#include <algorithm>
#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "modspec/common.hpp"
#include "modspec/dsp/fdlp.hpp"
#include "modspec/dsp/features.hpp"
#include "modspec/dsp/modulation.hpp"
#include "modspec/dsp/segment.hpp"
#include "modspec/dsp/spectrogram.hpp"
#include "modspec/dsp/subband.hpp"
#include "modspec/toy_speech.hpp"
#include "oracles.hpp"

namespace modspec {
namespace {

AudioBuffer Noise(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<float> g(0.f, 0.1f);
  AudioBuffer a;
  a.samples.resize(n);
  for (float &s : a.samples) s = g(rng);
  return a;
}

ErrorKind KindOf(const std::function<void()> &f) {
  try {
    f();
  } catch (const Error &e) {
    return e.kind();
  }
  ADD_FAILURE() << "no modspec::Error thrown";
  return ErrorKind::kIo;
}

// ------------------------------------------------------------- segmenting

TEST(Segment, WindowsFollowTheCountFormula) {
  // 36000 samples are covered by windows at 0 and 12000; one more sample
  // needs a third window at 24000 holding 12001 real samples.
  const AudioBuffer a = Noise(36000, 1);
  const auto segs = SegmentUtterance(a);
  ASSERT_EQ(segs.size(), 2u);
  EXPECT_EQ(segs[0].start_sample, 0);
  EXPECT_EQ(segs[1].start_sample, 12000);
  EXPECT_NE(segs[1].samples[23999 - 1], 0.0);

  const AudioBuffer b = Noise(36001, 1);
  const auto more = SegmentUtterance(b);
  ASSERT_EQ(more.size(), 3u);
  EXPECT_EQ(more[2].start_sample, 24000);
  for (const auto &s : more) EXPECT_EQ(s.samples.size(), 24000u);
  EXPECT_NE(more[2].samples[6000], 0.0);
  for (int n = 12001; n < 24000; ++n) ASSERT_EQ(more[2].samples[n], 0.0);
}

TEST(Segment, CountMatchesOffsetEnumeration) {
  // One window per hop offset until a window reaches the end of the signal.
  for (std::size_t len : {1u, 100u, 23999u, 24000u, 24001u, 35999u, 36000u, 36001u, 48000u, 100000u}) {
    std::size_t count = 1;
    for (std::size_t off = 0; off + 24000 < len; off += 12000) ++count;
    EXPECT_EQ(SegmentCount(len), count) << len;
    const double formula = std::max(1.0, std::ceil((double(len) - 24000.0) / 12000.0) + 1.0);
    EXPECT_EQ(SegmentCount(len), static_cast<std::size_t>(formula)) << len;
  }
}

TEST(Segment, SingleWindowAndZeros) {
  AudioBuffer a;
  a.samples.assign(24000, 0.f);
  const auto segs = SegmentUtterance(a);
  ASSERT_EQ(segs.size(), 1u);
  EXPECT_EQ(segs[0].start_sample, 0);
  for (double v : segs[0].samples) ASSERT_EQ(v, 0.0);
}

TEST(Segment, PeriodicHannMatchesDefinition) {
  const auto w = PeriodicHann(24000);
  for (int n = 0; n < 24000; n += 997)
    EXPECT_NEAR(w[n], 0.5 - 0.5 * std::cos(2 * oracle::kPi * n / 24000.0), 1e-15);
  const AudioBuffer a = Noise(24000, 2);
  const auto segs = SegmentUtterance(a);
  for (int n = 0; n < 24000; n += 1013) EXPECT_DOUBLE_EQ(segs[0].samples[n], a.samples[n] * w[n]);
}

TEST(Segment, RejectsBadAudio) {
  AudioBuffer a = Noise(100, 3);
  a.sample_rate_hz = 8000;
  EXPECT_EQ(KindOf([&] { SegmentUtterance(a); }), ErrorKind::kConfig);
  AudioBuffer empty;
  EXPECT_EQ(KindOf([&] { SegmentUtterance(empty); }), ErrorKind::kEmptyInput);
  AudioBuffer bad = Noise(100, 3);
  bad.samples[5] = std::nanf("");
  EXPECT_EQ(KindOf([&] { SegmentUtterance(bad); }), ErrorKind::kNumerical);
}

// --------------------------------------------------------------- sub-bands

TEST(Subband, SquaredWindowsPartitionUnity) {
  const SubbandFilterbank &bank = DefaultFilterbank();
  double worst = 0.0;
  for (int k = 0; k < bank.num_bins(); ++k) {
    double s = 0.0;
    for (int b = 0; b < bank.band_count(); ++b) s += bank.Weight(b, k) * bank.Weight(b, k);
    worst = std::max(worst, std::abs(s - 1.0));
  }
  EXPECT_LT(worst, 1e-10);
}

TEST(Subband, CentresAreMelSpacedAndIncreasing) {
  const SubbandFilterbank &bank = DefaultFilterbank();
  for (int b = 1; b < bank.band_count(); ++b) {
    EXPECT_GT(bank.center_hz(b), bank.center_hz(b - 1));
    if (b >= 2) {
      const double d1 = HzToMel(bank.center_hz(b)) - HzToMel(bank.center_hz(b - 1));
      const double d0 = HzToMel(bank.center_hz(b - 1)) - HzToMel(bank.center_hz(b - 2));
      EXPECT_NEAR(d1, d0, 1e-6);
    }
  }
  EXPECT_NEAR(MelToHz(HzToMel(1234.5)), 1234.5, 1e-9);
}

TEST(Subband, AnalyticSpectrumMatchesDirectDft) {
  std::mt19937_64 rng(4);
  std::normal_distribution<double> g;
  std::vector<double> x(64);
  for (double &v : x) v = g(rng);
  const auto fast = AnalyticSpectrum(x);
  const auto ref = oracle::Dft(x);
  ASSERT_EQ(fast.size(), 33u);
  for (int k = 0; k <= 32; ++k) {
    const double scale = (k == 0 || k == 32) ? 1.0 : 2.0;
    EXPECT_LT(std::abs(fast[k] - scale * ref[k]), 1e-9) << k;
  }
}

TEST(Subband, ToneLandsInCoveringBands) {
  WindowedSegment seg;
  seg.samples.resize(24000);
  const auto w = PeriodicHann(24000);
  for (int n = 0; n < 24000; ++n)
    seg.samples[n] = w[n] * std::sin(2 * oracle::kPi * 1000.0 * n / 16000.0);
  const auto bands = SubbandDecompose(seg);
  std::vector<double> energy;
  for (const auto &b : bands) {
    double e = 0.0;
    for (const auto &c : b.coeffs) e += std::norm(c);
    energy.push_back(e);
  }
  const double peak = *std::max_element(energy.begin(), energy.end());
  const SubbandFilterbank &bank = DefaultFilterbank();
  const int bin = 1000 * 24000 / 16000;
  int strong = 0;
  for (int b = 0; b < 20; ++b) {
    if (energy[b] >= 0.01 * peak) {
      ++strong;
      EXPECT_GT(bank.Weight(b, bin), 0.0) << "band " << b << " does not cover 1 kHz";
    }
  }
  EXPECT_GE(strong, 1);
  EXPECT_LE(strong, 2);
}

TEST(Subband, ZeroSegmentGivesZeroBands) {
  WindowedSegment seg;
  seg.samples.assign(24000, 0.0);
  for (const auto &b : SubbandDecompose(seg))
    for (const auto &c : b.coeffs) ASSERT_EQ(c, Complex(0.0));
}

// ------------------------------------------------------------------- FDLP

TEST(Levinson, ErrorsNonIncreasingAndReflectionsInsideUnitCircle) {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<Complex> x(500);
    for (auto &v : x) v = Complex(g(rng), g(rng));
    const auto r = SpectralAutocorrelation(x, 12, 500);
    const auto res = LevinsonDurbin(r, 12);
    ASSERT_EQ(res.errors.size(), 13u);
    for (int p = 1; p <= 12; ++p) EXPECT_LE(res.errors[p], res.errors[p - 1] * (1 + 1e-12));
    for (const auto &k : res.reflection) EXPECT_LT(std::abs(k), 1.0);
  }
}

TEST(Levinson, SolvesNormalEquations) {
  std::mt19937_64 rng(6);
  std::normal_distribution<double> g;
  std::vector<Complex> x(300);
  for (auto &v : x) v = Complex(g(rng), g(rng));
  const int p = 6;
  const auto r = SpectralAutocorrelation(x, p, 300);
  const auto res = LevinsonDurbin(r, p);
  // sum_i a_i R[m - i] = -R[m] with R[-l] = conj(R[l]).
  auto R = [&](int l) { return l >= 0 ? r[l] : std::conj(r[-l]); };
  for (int m = 1; m <= p; ++m) {
    Complex acc = R(m);
    for (int i = 1; i <= p; ++i) acc += res.coeffs[i - 1] * R(m - i);
    EXPECT_LT(std::abs(acc), 1e-10 * std::abs(r[0]));
  }
}

TEST(Fdlp, SpectralAutocorrelationMatchesDefinition) {
  std::vector<Complex> x{{1, 2}, {-1, 0.5}, {0.3, -0.7}, {2, 1}};
  const auto r = SpectralAutocorrelation(x, 2, 10);
  for (int l = 0; l <= 2; ++l) {
    Complex acc = 0.0;
    for (int k = l; k < 4; ++k) acc += std::conj(x[k]) * x[k - l];
    EXPECT_LT(std::abs(r[l] - acc / 100.0), 1e-15);
  }
}

TEST(Fdlp, WhiteNoiseOrderOneIsNearlyFlat) {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<Complex> x(2000);
    for (auto &v : x) v = Complex(g(rng), g(rng));
    const LpModel m = FitComplexFdlp(x, 1, 24000);
    EXPECT_LT(std::abs(m.lp_coeffs[0]), 0.1);
    double lo = 1e300, hi = 0.0;
    for (int i = 0; i < 200; ++i) {
      const double e = LpEnvelope(m, i / 200.0);
      lo = std::min(lo, e);
      hi = std::max(hi, e);
    }
    EXPECT_LT(hi / lo, 1.5);
  }
}

TEST(Fdlp, ZeroBandIsFlaggedDegenerate) {
  std::vector<Complex> x(100, Complex(0.0));
  const LpModel m = FitComplexFdlp(x, 10, 24000);
  EXPECT_TRUE(m.degenerate);
  EXPECT_EQ(m.gain, kGainFloor);
  for (const auto &a : m.lp_coeffs) EXPECT_EQ(a, Complex(0.0));
}

TEST(Fdlp, RejectsBadOrderAndNonFinite) {
  std::vector<Complex> x(10, Complex(1.0));
  EXPECT_EQ(KindOf([&] { FitComplexFdlp(x, 0); }), ErrorKind::kContract);
  EXPECT_EQ(KindOf([&] { FitComplexFdlp(x, 10); }), ErrorKind::kContract);
  x[3] = Complex(std::nan(""), 0.0);
  EXPECT_EQ(KindOf([&] { FitComplexFdlp(x, 2); }), ErrorKind::kNumerical);
}

// Builds the band spectrum of s[n] = sqrt(P(n/N)) e^{j 2 pi k0 n / N}.
std::vector<Complex> BandWithEnvelope(const std::function<double(double)> &power, int k0,
                                      int bins) {
  const int n = 24000;
  std::vector<oracle::cd> s(n);
  for (int i = 0; i < n; ++i)
    s[i] = std::sqrt(power(double(i) / n)) *
           std::exp(oracle::cd(0.0, 2 * oracle::kPi * double((long long)k0 * i % n) / n));
  const auto spec = oracle::Dft(s, k0 - bins / 2, bins);
  return {spec.begin(), spec.end()};
}

double EnvelopeCorrelation(const std::function<double(double)> &power) {
  const auto band = BandWithEnvelope(power, 3000, 200);
  const LpModel m = FitComplexFdlp(band, 60, 24000);
  const auto cep = LpToModulationCepstrum(m, 80);
  const auto loge = SynthesizeLogEnvelope(cep, 150);
  std::vector<double> fit, truth;
  for (int i = 0; i < 150; ++i) {
    fit.push_back(std::exp(loge[i]));
    truth.push_back(power(i / 150.0));
  }
  return oracle::Pearson(fit, truth);
}

TEST(Fdlp, RecoversSymmetricFourHertzEnvelope) {
  const double r = EnvelopeCorrelation(
      [](double t) { return 1.0 + 0.9 * std::cos(2 * oracle::kPi * 4.0 * t * 1.5 / 1.5); });
  EXPECT_GT(r, 0.9);
}

TEST(Fdlp, RecoversAsymmetricEnvelope) {
  const double r = EnvelopeCorrelation([](double t) {
    const double s = t * 1.5;  // seconds
    return 1.2 + 0.6 * std::sin(2 * oracle::kPi * 3.0 * s + 0.4) +
           0.3 * std::cos(2 * oracle::kPi * 7.3 * s) + 0.2 * std::sin(2 * oracle::kPi * 15.0 * s);
  });
  EXPECT_GT(r, 0.9);
}

TEST(Cepstrum, FlatModelHasOnlyDc) {
  LpModel m;
  m.gain = 3.0;
  const auto c = LpToModulationCepstrum(m, 80);
  EXPECT_NEAR(c[0].real(), std::log(9.0), 1e-15);
  for (int i = 1; i < 80; ++i) EXPECT_EQ(c[i], Complex(0.0));
}

TEST(Cepstrum, MatchesDenseGridOracle) {
  std::mt19937_64 rng(8);
  for (int order : {1, 3, 8}) {
    LpModel m;
    m.order = order;
    m.lp_coeffs = oracle::RandomStablePredictor(rng, order);
    m.gain = 0.7;
    const auto c = LpToModulationCepstrum(m, 80);
    const auto ref = oracle::DenseGridCepstrum(m.lp_coeffs, m.gain, 80);
    double worst = 0.0;
    for (int i = 0; i < 80; ++i) worst = std::max(worst, std::abs(c[i] - ref[i]));
    EXPECT_LT(worst, 1e-6) << "order " << order;
  }
}

TEST(Cepstrum, SynthesisEqualsModelLogEnvelope) {
  std::mt19937_64 rng(9);
  LpModel m;
  m.lp_coeffs = oracle::RandomStablePredictor(rng, 4, 0.6);
  m.order = 4;
  m.gain = 1.3;
  const auto loge = SynthesizeLogEnvelope(LpToModulationCepstrum(m, 80), 150);
  for (int i = 0; i < 150; ++i) EXPECT_NEAR(loge[i], std::log(LpEnvelope(m, i / 150.0)), 1e-9);
}

TEST(Cepstrum, ReflectionStepUpMatchesLevinson) {
  std::mt19937_64 rng(10);
  std::normal_distribution<double> g;
  std::vector<Complex> x(400);
  for (auto &v : x) v = Complex(g(rng), g(rng));
  const auto res = LevinsonDurbin(SpectralAutocorrelation(x, 5, 400), 5);
  const auto a = ReflectionToLp(res.reflection);
  for (int i = 0; i < 5; ++i) EXPECT_LT(std::abs(a[i] - res.coeffs[i]), 1e-12);
}

// ------------------------------------------------------------- modulation

TEST(Modulation, BinMapping) {
  EXPECT_DOUBLE_EQ(ModulationFrequencyHz(6), 4.0);
  EXPECT_NEAR(ModulationFrequencyHz(79), 52.6667, 1e-4);
  const BinRange r = ModulationBinRange(2.0, 8.0);
  EXPECT_EQ(r.lo, 3);
  EXPECT_EQ(r.hi, 12);
  const BinRange all = ModulationBinRange(0.0, 53.0);
  EXPECT_EQ(all.lo, 0);
  EXPECT_EQ(all.hi, 79);
  // Brute force: smallest m with m/1.5 >= lo, largest with m/1.5 <= hi.
  for (double lo : {0.0, 0.5, 1.0, 2.0, 3.3, 7.9}) {
    for (double hi : {lo, lo + 0.2, lo + 4.0, 20.0}) {
      int blo = 80, bhi = -1;
      for (int m = 0; m < 80; ++m) {
        if (m / 1.5 >= lo - 1e-12) blo = std::min(blo, m);
        if (m / 1.5 <= hi + 1e-12) bhi = std::max(bhi, m);
      }
      const BinRange got = ModulationBinRange(lo, hi);
      EXPECT_EQ(got.lo, blo) << lo << ":" << hi;
      EXPECT_EQ(got.hi, bhi) << lo << ":" << hi;
    }
  }
}

TEST(Modulation, MaskValidation) {
  MaskSpec m{9.0, 2.0, std::nullopt};
  EXPECT_EQ(KindOf([&] { m.Validate(); }), ErrorKind::kConfig);
  MaskSpec high{2.0, 60.0, std::nullopt};
  EXPECT_EQ(KindOf([&] { high.Validate(); }), ErrorKind::kConfig);
}

ModulationSpectrum RandomSpectrum(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  ModulationSpectrum s(20, 80, 0);
  for (auto &c : s.coeffs) c = Complex(g(rng), g(rng));
  return s;
}

TEST(Modulation, DropoutZeroesExactlyTheMaskedBins) {
  const ModulationSpectrum x = RandomSpectrum(11);
  const ModulationSpectrum y = ApplyModulationDropout(x, MaskSpec{});
  for (int b = 0; b < 20; ++b)
    for (int m = 0; m < 80; ++m) {
      if (m >= 3 && m <= 12) EXPECT_EQ(y.at(b, m), Complex(0.0));
      else EXPECT_EQ(y.at(b, m), x.at(b, m));
    }
}

TEST(Modulation, DropoutEmptyMaskIdempotentAndLinear) {
  const ModulationSpectrum x = RandomSpectrum(12), z = RandomSpectrum(13);
  const MaskSpec empty{2.1, 2.5, std::nullopt};
  ASSERT_TRUE(empty.bins().empty());
  EXPECT_EQ(ApplyModulationDropout(x, empty).coeffs, x.coeffs);
  const MaskSpec mask;
  const auto once = ApplyModulationDropout(x, mask);
  EXPECT_EQ(ApplyModulationDropout(once, mask).coeffs, once.coeffs);

  const Complex a(0.7, -1.1), b(-2.0, 0.3);
  ModulationSpectrum combo = x;
  for (std::size_t i = 0; i < combo.coeffs.size(); ++i) combo.coeffs[i] = a * x.coeffs[i] + b * z.coeffs[i];
  const auto lhs = ApplyModulationDropout(combo, mask);
  const auto dx = ApplyModulationDropout(x, mask), dz = ApplyModulationDropout(z, mask);
  for (std::size_t i = 0; i < lhs.coeffs.size(); ++i)
    EXPECT_LT(std::abs(lhs.coeffs[i] - (a * dx.coeffs[i] + b * dz.coeffs[i])), 1e-12);
}

TEST(Modulation, SynthesisDcAndFourHertz) {
  std::vector<Complex> c(80, Complex(0.0));
  c[0] = 1.0;
  for (double v : SynthesizeLogEnvelope(c, 150)) EXPECT_NEAR(v, 1.0, 1e-15);
  c[0] = 0.0;
  c[6] = 1.0;
  const auto x = SynthesizeLogEnvelope(c, 150);
  const auto spec = oracle::Dft(x);
  int peak = 1;
  for (int k = 1; k < 75; ++k)
    if (std::abs(spec[k]) > std::abs(spec[peak])) peak = k;
  EXPECT_EQ(peak, 6);
  EXPECT_DOUBLE_EQ(peak * 100.0 / 150.0, 4.0);
  int crossings = 0;
  for (int i = 0; i < 150; ++i) crossings += (x[i] > 0) != (x[(i + 1) % 150] > 0);
  EXPECT_EQ(crossings, 12);
}

TEST(Modulation, MaskedBinsVanishAfterSynthesis) {
  const auto spec = ApplyModulationDropout(RandomSpectrum(14), MaskSpec{});
  for (int b = 0; b < 20; ++b) {
    const auto x = SynthesizeLogEnvelope(spec.band(b), 150);
    const auto X = oracle::Dft(x);
    for (int k = 3; k <= 12; ++k) EXPECT_LT(std::abs(X[k]), 1e-9);
  }
}

// ------------------------------------------------------------ spectrogram

TEST(Spectrogram, HannWeightsSumToConstant) {
  const auto w = OverlapAddWindow(150);
  for (int n = 0; n < 75; ++n) EXPECT_NEAR(w[n] + w[n + 75], 1.0, 1e-10);
}

TEST(Spectrogram, FrameCount) {
  EXPECT_EQ(UtteranceFrameCount(16000), 100);
  EXPECT_EQ(UtteranceFrameCount(16001), 101);
  EXPECT_EQ(UtteranceFrameCount(24000), 150);
}

TEST(Spectrogram, SingleBlockReturnsBlock) {
  EnvelopeBlock blk;
  blk.log_envelope = Eigen::MatrixXd::Random(20, 150);
  const auto s = OverlapAddSpectrogram(std::span<const EnvelopeBlock>(&blk, 1), 150);
  for (int t = 0; t < 150; ++t)
    for (int b = 0; b < 20; ++b) EXPECT_NEAR(s.frames(t, b), blk.log_envelope(b, t), 1e-6);
  EXPECT_FALSE(s.masked_frame_range.has_value());
}

TEST(Spectrogram, ConstantBlocksStayConstant) {
  std::vector<EnvelopeBlock> blocks(3);
  for (int i = 0; i < 3; ++i) {
    blocks[i].window_index = i;
    blocks[i].log_envelope = Eigen::MatrixXd::Constant(20, 150, -2.5);
  }
  blocks[1].masked = true;
  const auto s = OverlapAddSpectrogram(blocks, 300);
  for (int t = 0; t < 300; ++t) EXPECT_NEAR(s.frames(t, 7), -2.5, 1e-6);
  ASSERT_TRUE(s.masked_frame_range.has_value());
  EXPECT_EQ(*s.masked_frame_range, (FrameRange{75, 225}));
}

TEST(Spectrogram, MissingWindowIsSequenceError) {
  std::vector<EnvelopeBlock> blocks(2);
  blocks[0].window_index = 0;
  blocks[1].window_index = 2;
  for (auto &b : blocks) b.log_envelope = Eigen::MatrixXd::Zero(20, 150);
  EXPECT_EQ(KindOf([&] { OverlapAddSpectrogram(blocks, 300); }), ErrorKind::kSequence);
}

// --------------------------------------------------------------- features

TEST(Features, DeterministicAndLocalMask) {
  const AudioBuffer a = SynthesizeToySpeech(15, {.duration_s = 4.0});
  const auto p1 = ExtractFeatures(a, MaskSpec{}, 99);
  const auto p2 = ExtractFeatures(a, MaskSpec{}, 99);
  EXPECT_EQ(p1.masked_window, p2.masked_window);
  EXPECT_TRUE(p1.masked.frames == p2.masked.frames);
  EXPECT_TRUE(p1.clean.frames == p2.clean.frames);

  ASSERT_TRUE(p1.masked.masked_frame_range.has_value());
  const FrameRange r = *p1.masked.masked_frame_range;
  EXPECT_EQ(r.start, 75 * p1.masked_window);
  EXPECT_EQ(r.size(), std::min<std::int64_t>(150, p1.clean.frame_count() - r.start));
  EXPECT_EQ(p1.clean.frame_count(), 400);
  bool differs_inside = false;
  for (std::int64_t t = 0; t < p1.clean.frame_count(); ++t)
    for (int b = 0; b < 20; ++b) {
      if (!r.contains(t)) ASSERT_EQ(p1.masked.frames(t, b), p1.clean.frames(t, b)) << t;
      else differs_inside |= p1.masked.frames(t, b) != p1.clean.frames(t, b);
    }
  EXPECT_TRUE(differs_inside);
}

TEST(Features, NoMaskMeansIdenticalOutputs) {
  const AudioBuffer a = SynthesizeToySpeech(16, {.duration_s = 2.0});
  const auto p = ExtractFeatures(a, std::nullopt, 1);
  EXPECT_TRUE(p.masked.frames == p.clean.frames);
  EXPECT_EQ(p.masked_window, -1);
  EXPECT_FALSE(p.masked.masked_frame_range.has_value());
}

TEST(Features, ShortUtterancePaddedForAnalysisRejectedForTraining) {
  const AudioBuffer a = Noise(8000, 17);
  const auto p = ExtractFeatures(a, std::nullopt, 0);
  EXPECT_EQ(p.clean.frame_count(), 50);
  EXPECT_EQ(p.window_count, 1u);
  EXPECT_EQ(KindOf([&] { ExtractFeatures(a, MaskSpec{}, 0, ExtractMode::kTraining); }),
            ErrorKind::kTooShort);
}

TEST(Features, MaskWindowChoiceCoversAllWindows) {
  std::vector<int> hits(5, 0);
  for (std::uint64_t s = 0; s < 500; ++s) ++hits[ChooseMaskWindow(5, s)];
  for (int h : hits) EXPECT_GT(h, 50);
}

TEST(Features, BandMeansRemoved) {
  FrameMatrix f = FrameMatrix::Random(50, 20);
  f.col(3).array() += 7.0f;
  const FrameMatrix z = SubtractBandMeans(f);
  for (int b = 0; b < 20; ++b) EXPECT_NEAR(z.col(b).mean(), 0.0, 1e-5);
  EXPECT_NEAR(z(10, 3) - z(11, 3), f(10, 3) - f(11, 3), 1e-5);
}

}  // namespace
}  // namespace modspec
