// modspec/probe.hpp

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

// Layer-wise temporal modulation spectra of the predictor's hidden states.
// Every hidden dimension is treated as a time series at the frame rate,
// mean-removed, Fourier transformed and the magnitudes averaged over
// dimensions and utterances.

#ifndef MODSPEC_PROBE_HPP_
#define MODSPEC_PROBE_HPP_

#include <complex>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "modspec/audio.hpp"
#include "modspec/predictor/model.hpp"

namespace modspec {

inline constexpr int kProbeFftLength = 512;
inline constexpr double kPlotMaxHz = 20.0;

struct LayerProbeReport {
  std::vector<double> freq_axis_hz;  // k * frame_rate / fft_length, k = 0..fft/2
  Eigen::MatrixXd per_layer_spectra;  // layer_count x freq bins
  int utterance_count = 0;
  std::vector<double> band_ratio_2_8;
  std::vector<double> peak_hz;  // strongest non-DC bin per layer
  double plot_max_hz = kPlotMaxHz;

  int layer_count() const { return static_cast<int>(per_layer_spectra.rows()); }
};

/// DFT of `x` zero-padded to `fft_length` (x must not be longer). No mean
/// removal; full two-sided output.
std::vector<std::complex<double>> ZeroPaddedDft(std::span<const double> x, int fft_length);

/// One-sided magnitude spectrum of one mean-removed series, averaged over
/// consecutive fft_length chunks when the series is longer than that.
std::vector<double> SeriesModulationSpectrum(std::span<const double> x, int fft_length);

/// Throws kContract on an empty trace list, differing layer counts or
/// widths, or empty layers.
LayerProbeReport LayerModulationSpectra(const std::vector<ActivationTrace<float>> &traces,
                                        double frame_rate_hz = 100.0,
                                        int fft_length = kProbeFftLength);

struct BandRatio {
  double ratio = 0.0;
  bool degenerate = false;  // no energy above DC
};

/// Energy in [lo_hz, hi_hz] over energy in (0, Nyquist], DC excluded.
BandRatio BandEnergyRatio(std::span<const double> spectrum, std::span<const double> freq_axis_hz,
                          double lo_hz = 2.0, double hi_hz = 8.0);

/// Frequency of the largest bin with k >= 1.
double PeakFrequencyHz(std::span<const double> spectrum, std::span<const double> freq_axis_hz);

/// Writes <dir>/layer_spectra.csv (freq_hz, layer_1..layer_N, rows up to
/// plot_max_hz) and <dir>/layer_summary.csv (layer, band_ratio_2_8,
/// peak_hz).
void EmitReport(const LayerProbeReport &report, const std::string &dir);

/// Clean spectrograms of `audio`, band-mean removed and cropped to
/// max_frames, pushed through the network with capture on.
std::vector<ActivationTrace<float>> CaptureTraces(const PredictorParams<float> &params,
                                                  const std::vector<AudioBuffer> &audio);

}  // namespace modspec

#endif  // MODSPEC_PROBE_HPP_
