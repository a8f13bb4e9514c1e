// dsp/subband.cpp

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

#include "modspec/dsp/subband.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <unsupported/Eigen/FFT>

#include "modspec/common.hpp"

namespace modspec {

double HzToMel(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }
double MelToHz(double mel) { return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0); }

SubbandFilterbank::SubbandFilterbank(int dft_length, int sample_rate_hz,
                                     int band_count)
    : dft_length_(dft_length),
      sample_rate_hz_(sample_rate_hz),
      band_count_(band_count) {
  if (dft_length < 2 || sample_rate_hz <= 0 || band_count < 1)
    Fail(ErrorKind::kConfig, "invalid filterbank configuration");

  const int bins = num_bins();
  const double mel_max = HzToMel(sample_rate_hz / 2.0);
  const double spacing = mel_max / band_count;
  std::vector<double> center_mel(band_count);
  for (int b = 0; b < band_count; ++b) {
    center_mel[b] = (b + 0.5) * spacing;
    centers_hz_.push_back(MelToHz(center_mel[b]));
  }

  std::vector<std::vector<double>> full(band_count, std::vector<double>(bins, 0.0));
  for (int k = 0; k < bins; ++k) {
    double mel = HzToMel(bin_hz(k));
    if (band_count == 1 || mel <= center_mel.front()) {
      full[0][k] = 1.0;
      continue;
    }
    if (mel >= center_mel.back()) {
      full[band_count - 1][k] = 1.0;
      continue;
    }
    int lower = static_cast<int>((mel - center_mel.front()) / spacing);
    if (lower > band_count - 2) lower = band_count - 2;
    double u = (mel - center_mel[lower]) / spacing;
    u = std::clamp(u, 0.0, 1.0);
    full[lower][k] = std::cos(0.5 * std::numbers::pi * u);
    full[lower + 1][k] = std::sin(0.5 * std::numbers::pi * u);
  }

  first_bin_.resize(band_count);
  weights_.resize(band_count);
  for (int b = 0; b < band_count; ++b) {
    int first = 0, last = bins - 1;
    while (first < bins && full[b][first] == 0.0) ++first;
    while (last > first && full[b][last] == 0.0) --last;
    if (first == bins) {
      first_bin_[b] = 0;
      continue;
    }
    first_bin_[b] = first;
    weights_[b].assign(full[b].begin() + first, full[b].begin() + last + 1);
  }
}

double SubbandFilterbank::Weight(int band, int k) const {
  int i = k - first_bin_[band];
  if (i < 0 || i >= static_cast<int>(weights_[band].size())) return 0.0;
  return weights_[band][i];
}

const SubbandFilterbank &DefaultFilterbank() {
  static const SubbandFilterbank bank;
  return bank;
}

std::vector<std::complex<double>> AnalyticSpectrum(const std::vector<double> &samples) {
  thread_local Eigen::FFT<double> fft;
  std::vector<std::complex<double>> spectrum;
  fft.fwd(spectrum, samples);
  const std::size_t n = samples.size();
  const std::size_t bins = n / 2 + 1;
  spectrum.resize(bins);
  for (std::size_t k = 1; k < bins; ++k)
    if (2 * k != n) spectrum[k] *= 2.0;
  return spectrum;
}

std::vector<BandSpectrum> SubbandDecompose(const WindowedSegment &segment,
                                           const SubbandFilterbank &bank) {
  if (static_cast<int>(segment.samples.size()) != bank.dft_length())
    Fail(ErrorKind::kContract,
         "segment length " + std::to_string(segment.samples.size()) +
             " does not match filterbank length " + std::to_string(bank.dft_length()));

  const auto spectrum = AnalyticSpectrum(segment.samples);
  std::vector<BandSpectrum> bands(bank.band_count());
  for (int b = 0; b < bank.band_count(); ++b) {
    BandSpectrum &out = bands[b];
    out.band = b;
    out.first_bin = bank.first_bin(b);
    out.dft_length = segment.samples.size();
    const auto &w = bank.weights(b);
    out.coeffs.resize(w.size());
    for (std::size_t i = 0; i < w.size(); ++i)
      out.coeffs[i] = w[i] * spectrum[out.first_bin + i];
  }
  return bands;
}

std::vector<BandSpectrum> SubbandDecompose(const WindowedSegment &segment,
                                           int band_count) {
  if (band_count == kBandCount) return SubbandDecompose(segment, DefaultFilterbank());
  return SubbandDecompose(segment, SubbandFilterbank(kWindowSamples, kSampleRateHz, band_count));
}

}  // namespace modspec
