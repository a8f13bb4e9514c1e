// modspec/dsp/fdlp.hpp

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

// Frequency-domain linear prediction on complex sub-band spectra.
//
// The autocorrelation of a band's analytic spectrum, taken across frequency,
// is (up to scale) the Fourier series of that band's squared Hilbert envelope
// over the analysis window. An all-pole model fitted to that autocorrelation
// therefore has a "power spectrum" whose frequency axis is time:
//
//   envelope(t) ~= gain^2 / |A(exp(j 2 pi t / T))|^2,  t in [0, T)
//
// with A(z) = 1 + sum_i a[i] z^-i.

#ifndef MODSPEC_DSP_FDLP_HPP_
#define MODSPEC_DSP_FDLP_HPP_

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "modspec/dsp/segment.hpp"

namespace modspec {

using Complex = std::complex<double>;

inline constexpr int kDefaultLpOrder = 60;
inline constexpr double kGainFloor = 1e-10;

struct LpModel {
  int order = 0;
  std::vector<Complex> lp_coeffs;  // a[1..order], stored at [0..order-1]
  double gain = 1.0;               // sqrt of the final prediction error
  bool degenerate = false;         // set for zero-energy bands
};

struct LevinsonResult {
  std::vector<Complex> coeffs;      // a[1..p]
  std::vector<Complex> reflection;  // k[1..p]
  std::vector<double> errors;       // prediction error for orders 0..p
};

/// Solves the Hermitian Toeplitz normal equations sum_i a[i] r[j-i] = -r[j],
/// j = 1..order, with r[-l] = conj(r[l]). `autocorr` holds r[0..order].
/// Stops early (and keeps the lower order solution) if rounding drives a
/// reflection coefficient to |k| >= 1.
LevinsonResult LevinsonDurbin(std::span<const Complex> autocorr, int order);

/// r[l] = (1 / n^2) sum_k conj(x[k]) x[k - l] for l = 0..max_lag, which is
/// the l-th Fourier coefficient (positive time direction) of the power
/// envelope when x is an analytic spectrum of an n-point signal.
std::vector<Complex> SpectralAutocorrelation(std::span<const Complex> seq,
                                             int max_lag, std::size_t dft_length);

/// Fits an order-`order` all-pole model to a band spectrum. A zero-energy
/// band yields a flat model with gain kGainFloor and `degenerate` set.
LpModel FitComplexFdlp(std::span<const Complex> band_spectrum, int order,
                       std::size_t dft_length = kWindowSamples);

/// gain^2 / |A(exp(j 2 pi phase))|^2; phase = t / T.
double LpEnvelope(const LpModel &model, double phase);

/// One-sided complex cepstrum of the model's log envelope, scaled so that
///   log envelope(phase) = Re sum_{m=0}^{count-1} c[m] exp(j 2 pi m phase)
/// up to truncation. c[0] = log gain^2.
std::vector<Complex> LpToModulationCepstrum(const LpModel &model,
                                            int coeff_count = 80);

/// Step-up recursion: prediction coefficients from reflection coefficients.
std::vector<Complex> ReflectionToLp(std::span<const Complex> reflection);

}  // namespace modspec

#endif  // MODSPEC_DSP_FDLP_HPP_
