// modspec/dsp/modulation.hpp

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

#ifndef MODSPEC_DSP_MODULATION_HPP_
#define MODSPEC_DSP_MODULATION_HPP_

#include <optional>
#include <span>
#include <vector>

#include "modspec/dsp/fdlp.hpp"
#include "modspec/dsp/subband.hpp"

namespace modspec {

inline constexpr int kModulationCoeffs = 80;
/// Highest representable modulation is 79 / 1.5 = 52.67 Hz; mask edges must
/// stay below 80 / 1.5.
inline constexpr double kMaxMaskHz = kModulationCoeffs / kWindowSeconds;

/// Modulation frequency (Hz) of coefficient `m` in a 1.5 s window.
inline double ModulationFrequencyHz(int m) { return m / kWindowSeconds; }

/// Inclusive coefficient-index range; empty when lo > hi.
struct BinRange {
  int lo = 0;
  int hi = -1;
  bool empty() const { return lo > hi; }
  bool contains(int m) const { return m >= lo && m <= hi; }
};

/// Smallest m with m / 1.5 >= lo_hz through largest m with m / 1.5 <= hi_hz,
/// clipped to [0, 79].
BinRange ModulationBinRange(double lo_hz, double hi_hz);

/// Which modulations to delete, and optionally from which window.
struct MaskSpec {
  double lo_hz = 2.0;
  double hi_hz = 8.0;
  std::optional<int> window_index;

  /// Throws kConfig unless 0 <= lo_hz <= hi_hz < 53.34.
  void Validate() const;
  BinRange bins() const { return ModulationBinRange(lo_hz, hi_hz); }
};

/// 20 bands x 80 complex coefficients for one window.
struct ModulationSpectrum {
  int band_count = kBandCount;
  int coeff_count = kModulationCoeffs;
  int window_index = 0;
  std::vector<Complex> coeffs;  // row-major [band][m]

  static constexpr double segment_duration_s = kWindowSeconds;

  ModulationSpectrum() = default;
  ModulationSpectrum(int bands, int count, int window)
      : band_count(bands), coeff_count(count), window_index(window),
        coeffs(static_cast<std::size_t>(bands) * count) {}

  Complex &at(int band, int m) { return coeffs[static_cast<std::size_t>(band) * coeff_count + m]; }
  const Complex &at(int band, int m) const {
    return coeffs[static_cast<std::size_t>(band) * coeff_count + m];
  }
  std::span<const Complex> band(int b) const {
    return {coeffs.data() + static_cast<std::size_t>(b) * coeff_count,
            static_cast<std::size_t>(coeff_count)};
  }
};

/// Zeroes coefficients bin_lo..bin_hi in every band; everything else is
/// copied unchanged.
ModulationSpectrum ApplyModulationDropout(const ModulationSpectrum &spec,
                                          const MaskSpec &mask);

/// Re sum_m c[m] exp(j 2 pi m t / 1.5) at t = i * 1.5 / frame_count.
std::vector<double> SynthesizeLogEnvelope(std::span<const Complex> coeffs,
                                          int frame_count = 150);

struct FdlpOptions {
  int lp_order = kDefaultLpOrder;
  int coeff_count = kModulationCoeffs;
};

/// Sub-band decomposition, per-band FDLP fit and cepstral conversion for one
/// window.
ModulationSpectrum ComputeModulationSpectrum(const WindowedSegment &segment,
                                             const SubbandFilterbank &bank,
                                             const FdlpOptions &opts = {});

}  // namespace modspec

#endif  // MODSPEC_DSP_MODULATION_HPP_
