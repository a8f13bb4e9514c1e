// modspec/dsp/subband.hpp

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

#ifndef MODSPEC_DSP_SUBBAND_HPP_
#define MODSPEC_DSP_SUBBAND_HPP_

#include <complex>
#include <cstddef>
#include <vector>

#include "modspec/dsp/segment.hpp"

namespace modspec {

inline constexpr int kBandCount = 20;

double HzToMel(double hz);
double MelToHz(double mel);

/// Mel-spaced, cosine-tapered band windows over the one-sided spectrum
/// (bins 0..N/2). Band centres sit at (b + 0.5) * mel(Nyquist) / B; between
/// two neighbouring centres the lower band falls as cos(pi u / 2) and the
/// upper rises as sin(pi u / 2), so the squared windows sum to one at every
/// bin. The first and last band are flat out to DC and Nyquist.
class SubbandFilterbank {
 public:
  explicit SubbandFilterbank(int dft_length = kWindowSamples,
                             int sample_rate_hz = kSampleRateHz,
                             int band_count = kBandCount);

  int band_count() const { return band_count_; }
  int dft_length() const { return dft_length_; }
  int num_bins() const { return dft_length_ / 2 + 1; }
  double bin_hz(int k) const {
    return static_cast<double>(k) * sample_rate_hz_ / dft_length_;
  }
  double center_hz(int band) const { return centers_hz_[band]; }

  /// Index of the first bin where band `b` is nonzero.
  int first_bin(int band) const { return first_bin_[band]; }
  /// Window values from first_bin() onward; zero everywhere else.
  const std::vector<double> &weights(int band) const { return weights_[band]; }
  /// Window value of band `band` at bin `k` (0 outside the support).
  double Weight(int band, int k) const;

 private:
  int dft_length_;
  int sample_rate_hz_;
  int band_count_;
  std::vector<double> centers_hz_;
  std::vector<int> first_bin_;
  std::vector<std::vector<double>> weights_;
};

/// The default 20-band, 24000-point bank, built once.
const SubbandFilterbank &DefaultFilterbank();

/// Band-limited analytic spectrum of one band. coeffs[i] is the weighted
/// spectral sample at bin first_bin + i.
struct BandSpectrum {
  int band = 0;
  int first_bin = 0;
  std::size_t dft_length = kWindowSamples;
  std::vector<std::complex<double>> coeffs;
};

/// One-sided DFT of `samples`, doubled on interior bins so that its inverse
/// is the analytic signal.
std::vector<std::complex<double>> AnalyticSpectrum(const std::vector<double> &samples);

std::vector<BandSpectrum> SubbandDecompose(const WindowedSegment &segment,
                                           const SubbandFilterbank &bank);
std::vector<BandSpectrum> SubbandDecompose(const WindowedSegment &segment,
                                           int band_count = kBandCount);

}  // namespace modspec

#endif  // MODSPEC_DSP_SUBBAND_HPP_
