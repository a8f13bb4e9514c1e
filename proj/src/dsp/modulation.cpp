// dsp/modulation.cpp

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

#include "modspec/dsp/modulation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "modspec/common.hpp"

namespace modspec {

namespace {
// Absorbs rounding in products like 2.0 * 1.5 so exact edges stay inclusive.
constexpr double kEdgeTolerance = 1e-9;
}  // namespace

BinRange ModulationBinRange(double lo_hz, double hi_hz) {
  BinRange r;
  r.lo = static_cast<int>(std::ceil(lo_hz * kWindowSeconds - kEdgeTolerance));
  r.hi = static_cast<int>(std::floor(hi_hz * kWindowSeconds + kEdgeTolerance));
  r.lo = std::max(r.lo, 0);
  r.hi = std::min(r.hi, kModulationCoeffs - 1);
  return r;
}

void MaskSpec::Validate() const {
  if (!(lo_hz >= 0.0 && lo_hz <= hi_hz && hi_hz < kMaxMaskHz)) {
    std::ostringstream os;
    os << "invalid modulation mask " << lo_hz << ":" << hi_hz
       << " (need 0 <= lo <= hi < " << kMaxMaskHz << ")";
    Fail(ErrorKind::kConfig, os.str());
  }
  if (window_index && *window_index < 0)
    Fail(ErrorKind::kConfig, "mask window index must be nonnegative");
}

ModulationSpectrum ApplyModulationDropout(const ModulationSpectrum &spec,
                                          const MaskSpec &mask) {
  ModulationSpectrum out = spec;
  const BinRange bins = mask.bins();
  if (bins.empty()) return out;
  const int hi = std::min(bins.hi, spec.coeff_count - 1);
  for (int b = 0; b < spec.band_count; ++b)
    for (int m = bins.lo; m <= hi; ++m) out.at(b, m) = Complex(0.0);
  return out;
}

std::vector<double> SynthesizeLogEnvelope(std::span<const Complex> coeffs,
                                          int frame_count) {
  if (frame_count < 1) Fail(ErrorKind::kContract, "frame_count must be positive");
  // Phases m * i are reduced mod frame_count, so one table covers them all.
  std::vector<double> cos_table(frame_count), sin_table(frame_count);
  for (int k = 0; k < frame_count; ++k) {
    const double phase = 2.0 * std::numbers::pi * k / frame_count;
    cos_table[k] = std::cos(phase);
    sin_table[k] = std::sin(phase);
  }
  std::vector<double> env(frame_count, 0.0);
  const int count = static_cast<int>(coeffs.size());
  for (int i = 0; i < frame_count; ++i) {
    double acc = 0.0;
    for (int m = 0; m < count; ++m) {
      const auto idx = static_cast<std::size_t>((static_cast<long long>(m) * i) % frame_count);
      acc += coeffs[m].real() * cos_table[idx] - coeffs[m].imag() * sin_table[idx];
    }
    env[i] = acc;
  }
  return env;
}

ModulationSpectrum ComputeModulationSpectrum(const WindowedSegment &segment,
                                             const SubbandFilterbank &bank,
                                             const FdlpOptions &opts) {
  const auto bands = SubbandDecompose(segment, bank);
  ModulationSpectrum spec(bank.band_count(), opts.coeff_count, segment.window_index);
  for (const BandSpectrum &band : bands) {
    LpModel model = FitComplexFdlp(band.coeffs, opts.lp_order, band.dft_length);
    auto cep = LpToModulationCepstrum(model, opts.coeff_count);
    std::copy(cep.begin(), cep.end(), &spec.at(band.band, 0));
  }
  return spec;
}

}  // namespace modspec
