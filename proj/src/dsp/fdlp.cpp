// dsp/fdlp.cpp

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

#include "modspec/dsp/fdlp.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "modspec/common.hpp"

namespace modspec {

LevinsonResult LevinsonDurbin(std::span<const Complex> autocorr, int order) {
  if (order < 0 || static_cast<std::size_t>(order) + 1 > autocorr.size())
    Fail(ErrorKind::kContract, "autocorrelation too short for order " +
                                   std::to_string(order));

  LevinsonResult res;
  res.coeffs.assign(order, Complex(0.0));
  res.reflection.assign(order, Complex(0.0));
  res.errors.assign(order + 1, 0.0);

  double err = autocorr[0].real();
  res.errors[0] = err;
  if (!(err > 0.0)) return res;

  std::vector<Complex> a(order + 1, Complex(0.0));  // a[0] unused
  std::vector<Complex> prev(order + 1);
  int m = 1;
  for (; m <= order; ++m) {
    Complex acc = autocorr[m];
    for (int i = 1; i < m; ++i) acc += a[i] * autocorr[m - i];
    Complex k = -acc / err;
    double k2 = std::norm(k);
    if (!(k2 < 1.0)) break;  // rounding has made the system indefinite

    prev = a;
    for (int i = 1; i < m; ++i) a[i] = prev[i] + k * std::conj(prev[m - i]);
    a[m] = k;
    err *= (1.0 - k2);
    res.reflection[m - 1] = k;
    res.errors[m] = err;
  }
  // Orders not reached keep the last valid error.
  for (int j = m; j <= order; ++j) res.errors[j] = err;
  for (int i = 1; i <= order; ++i) res.coeffs[i - 1] = a[i];
  return res;
}

std::vector<Complex> SpectralAutocorrelation(std::span<const Complex> seq,
                                             int max_lag, std::size_t dft_length) {
  const double scale = 1.0 / (static_cast<double>(dft_length) * dft_length);
  std::vector<Complex> r(max_lag + 1, Complex(0.0));
  const std::size_t n = seq.size();
  for (int l = 0; l <= max_lag; ++l) {
    Complex acc(0.0);
    for (std::size_t k = l; k < n; ++k) acc += std::conj(seq[k]) * seq[k - l];
    r[l] = acc * scale;
  }
  return r;
}

LpModel FitComplexFdlp(std::span<const Complex> band_spectrum, int order,
                       std::size_t dft_length) {
  if (order < 1)
    Fail(ErrorKind::kContract, "LP order must be at least 1");
  if (static_cast<std::size_t>(order) >= band_spectrum.size())
    Fail(ErrorKind::kContract, "LP order " + std::to_string(order) +
                                   " must be below the sequence length " +
                                   std::to_string(band_spectrum.size()));

  auto r = SpectralAutocorrelation(band_spectrum, order, dft_length);
  for (const Complex &v : r)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      Fail(ErrorKind::kNumerical, "non-finite autocorrelation in FDLP fit");

  LpModel model;
  model.order = order;
  if (!(r[0].real() > kGainFloor * kGainFloor)) {
    model.lp_coeffs.assign(order, Complex(0.0));
    model.gain = kGainFloor;
    model.degenerate = true;
    return model;
  }

  LevinsonResult lev = LevinsonDurbin(r, order);
  model.lp_coeffs = std::move(lev.coeffs);
  model.gain = std::max(std::sqrt(lev.errors.back()), kGainFloor);
  return model;
}

double LpEnvelope(const LpModel &model, double phase) {
  const double w = 2.0 * std::numbers::pi * phase;
  Complex a(1.0);
  for (int i = 0; i < static_cast<int>(model.lp_coeffs.size()); ++i)
    a += model.lp_coeffs[i] * std::polar(1.0, -w * (i + 1));
  return model.gain * model.gain / std::norm(a);
}

std::vector<Complex> LpToModulationCepstrum(const LpModel &model, int coeff_count) {
  if (coeff_count < 1) Fail(ErrorKind::kContract, "coeff_count must be positive");
  if (!(model.gain > 0.0) || !std::isfinite(model.gain))
    Fail(ErrorKind::kContract, "LP model gain must be positive and finite");

  const int p = static_cast<int>(model.lp_coeffs.size());
  auto coef = [&](int i) -> Complex {
    return (i >= 1 && i <= p) ? model.lp_coeffs[i - 1] : Complex(0.0);
  };

  // h[m]: cepstrum of 1 / A(z), causal part.
  std::vector<Complex> h(coeff_count, Complex(0.0));
  for (int m = 1; m < coeff_count; ++m) {
    Complex acc = -coef(m);
    for (int k = std::max(1, m - p); k < m; ++k)
      acc -= (static_cast<double>(k) / m) * h[k] * coef(m - k);
    h[m] = acc;
  }

  std::vector<Complex> c(coeff_count);
  c[0] = Complex(2.0 * std::log(model.gain), 0.0);
  for (int m = 1; m < coeff_count; ++m) c[m] = 2.0 * std::conj(h[m]);
  return c;
}

std::vector<Complex> ReflectionToLp(std::span<const Complex> reflection) {
  const int p = static_cast<int>(reflection.size());
  std::vector<Complex> a(p + 1, Complex(0.0)), prev;
  for (int m = 1; m <= p; ++m) {
    prev = a;
    const Complex k = reflection[m - 1];
    for (int i = 1; i < m; ++i) a[i] = prev[i] + k * std::conj(prev[m - i]);
    a[m] = k;
  }
  return {a.begin() + 1, a.end()};
}

}  // namespace modspec
