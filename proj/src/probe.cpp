// probe.cpp

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

#include "modspec/probe.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include <unsupported/Eigen/FFT>

#include "modspec/common.hpp"
#include "modspec/dsp/features.hpp"

namespace modspec {

std::vector<std::complex<double>> ZeroPaddedDft(std::span<const double> x, int fft_length) {
  if (fft_length < 2 || x.size() > static_cast<std::size_t>(fft_length))
    Fail(ErrorKind::kContract, "series longer than the FFT length");
  thread_local Eigen::FFT<double> fft;
  std::vector<double> padded(fft_length, 0.0);
  std::copy(x.begin(), x.end(), padded.begin());
  std::vector<std::complex<double>> out;
  fft.SetFlag(Eigen::FFT<double>::HalfSpectrum);
  fft.fwd(out, padded);
  // Restore the full spectrum from Hermitian symmetry.
  out.resize(fft_length);
  for (int k = fft_length / 2 + 1; k < fft_length; ++k) out[k] = std::conj(out[fft_length - k]);
  return out;
}

std::vector<double> SeriesModulationSpectrum(std::span<const double> x, int fft_length) {
  const int bins = fft_length / 2 + 1;
  std::vector<double> mag(bins, 0.0);
  if (x.empty()) return mag;
  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= static_cast<double>(x.size());
  std::vector<double> centred(x.begin(), x.end());
  for (double &v : centred) v -= mean;

  int chunks = 0;
  for (std::size_t start = 0; start < centred.size(); start += fft_length, ++chunks) {
    const std::size_t len = std::min<std::size_t>(fft_length, centred.size() - start);
    const auto spec = ZeroPaddedDft(std::span<const double>(centred).subspan(start, len), fft_length);
    for (int k = 0; k < bins; ++k) mag[k] += std::abs(spec[k]);
  }
  for (double &m : mag) m /= chunks;
  return mag;
}

LayerProbeReport LayerModulationSpectra(const std::vector<ActivationTrace<float>> &traces,
                                        double frame_rate_hz, int fft_length) {
  if (traces.empty()) Fail(ErrorKind::kContract, "no activation traces");
  if (fft_length < 2 || frame_rate_hz <= 0.0)
    Fail(ErrorKind::kContract, "bad FFT length or frame rate");
  const std::size_t layers = traces.front().layer_outputs.size();
  if (layers == 0) Fail(ErrorKind::kContract, "trace has no layers");
  const Eigen::Index width = traces.front().layer_outputs.front().cols();
  for (const auto &tr : traces) {
    if (tr.layer_outputs.size() != layers)
      Fail(ErrorKind::kContract, "traces disagree on the layer count");
    const Eigen::Index frames = tr.layer_outputs.front().rows();
    for (const auto &l : tr.layer_outputs)
      if (l.cols() != width || l.rows() != frames || frames == 0)
        Fail(ErrorKind::kContract, "trace layer shapes are inconsistent");
  }

  const int bins = fft_length / 2 + 1;
  LayerProbeReport rep;
  rep.utterance_count = static_cast<int>(traces.size());
  rep.freq_axis_hz.resize(bins);
  for (int k = 0; k < bins; ++k) rep.freq_axis_hz[k] = k * frame_rate_hz / fft_length;
  rep.per_layer_spectra = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(layers), bins);

  std::vector<double> series;
  for (const auto &tr : traces) {
    for (std::size_t l = 0; l < layers; ++l) {
      const Mat<float> &h = tr.layer_outputs[l];
      series.resize(h.rows());
      for (Eigen::Index d = 0; d < width; ++d) {
        for (Eigen::Index t = 0; t < h.rows(); ++t) series[t] = h(t, d);
        const auto mag = SeriesModulationSpectrum(series, fft_length);
        for (int k = 0; k < bins; ++k) rep.per_layer_spectra(l, k) += mag[k];
      }
    }
  }
  rep.per_layer_spectra /= static_cast<double>(traces.size()) * static_cast<double>(width);

  for (std::size_t l = 0; l < layers; ++l) {
    std::vector<double> row(bins);
    for (int k = 0; k < bins; ++k) row[k] = rep.per_layer_spectra(l, k);
    rep.band_ratio_2_8.push_back(BandEnergyRatio(row, rep.freq_axis_hz).ratio);
    rep.peak_hz.push_back(PeakFrequencyHz(row, rep.freq_axis_hz));
  }
  return rep;
}

BandRatio BandEnergyRatio(std::span<const double> spectrum, std::span<const double> freq_axis_hz,
                          double lo_hz, double hi_hz) {
  if (spectrum.size() != freq_axis_hz.size())
    Fail(ErrorKind::kContract, "spectrum and frequency axis lengths differ");
  if (freq_axis_hz.empty() || freq_axis_hz.back() < hi_hz)
    Fail(ErrorKind::kContract, "frequency axis does not reach the band edge");
  double in = 0.0, total = 0.0;
  for (std::size_t k = 0; k < spectrum.size(); ++k) {
    const double f = freq_axis_hz[k];
    if (f <= 0.0) continue;
    const double e = spectrum[k] * spectrum[k];
    total += e;
    if (f >= lo_hz - 1e-12 && f <= hi_hz + 1e-12) in += e;
  }
  if (total <= 0.0) return {0.0, true};
  return {in / total, false};
}

double PeakFrequencyHz(std::span<const double> spectrum, std::span<const double> freq_axis_hz) {
  if (spectrum.size() != freq_axis_hz.size() || spectrum.size() < 2)
    Fail(ErrorKind::kContract, "spectrum too short for a peak search");
  std::size_t best = 1;
  for (std::size_t k = 2; k < spectrum.size(); ++k)
    if (spectrum[k] > spectrum[best]) best = k;
  return freq_axis_hz[best];
}

void EmitReport(const LayerProbeReport &report, const std::string &dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) Fail(ErrorKind::kIo, "cannot create " + dir + ": " + ec.message());
  const int layers = report.layer_count();
  char buf[64];

  const std::string spectra_path = (std::filesystem::path(dir) / "layer_spectra.csv").string();
  std::ofstream sp(spectra_path);
  if (!sp) Fail(ErrorKind::kIo, "cannot write " + spectra_path);
  sp << "freq_hz";
  for (int l = 0; l < layers; ++l) sp << ",layer_" << l + 1;
  sp << '\n';
  for (std::size_t k = 0; k < report.freq_axis_hz.size(); ++k) {
    if (report.freq_axis_hz[k] > report.plot_max_hz + 1e-12) break;
    std::snprintf(buf, sizeof buf, "%.9g", report.freq_axis_hz[k]);
    sp << buf;
    for (int l = 0; l < layers; ++l) {
      std::snprintf(buf, sizeof buf, ",%.9g", report.per_layer_spectra(l, static_cast<Eigen::Index>(k)));
      sp << buf;
    }
    sp << '\n';
  }
  if (!sp) Fail(ErrorKind::kIo, "write failed: " + spectra_path);

  const std::string summary_path = (std::filesystem::path(dir) / "layer_summary.csv").string();
  std::ofstream su(summary_path);
  if (!su) Fail(ErrorKind::kIo, "cannot write " + summary_path);
  su << "layer,band_ratio_2_8,peak_hz\n";
  for (int l = 0; l < layers; ++l) {
    std::snprintf(buf, sizeof buf, "%d,%.9g,%.9g\n", l + 1, report.band_ratio_2_8[l],
                  report.peak_hz[l]);
    su << buf;
  }
  if (!su) Fail(ErrorKind::kIo, "write failed: " + summary_path);
}

std::vector<ActivationTrace<float>> CaptureTraces(const PredictorParams<float> &params,
                                                  const std::vector<AudioBuffer> &audio) {
  std::vector<ActivationTrace<float>> traces;
  traces.reserve(audio.size());
  ForwardOptions fo;
  fo.capture = true;
  for (const AudioBuffer &a : audio) {
    const FeaturePair pair = ExtractFeatures(a, std::nullopt, 0);
    FrameMatrix frames = SubtractBandMeans(pair.clean.frames);
    const Eigen::Index t = std::min<Eigen::Index>(frames.rows(), params.config.max_frames);
    const Mat<float> input = frames.topRows(t);
    traces.push_back(*Forward(params, input, fo).trace);
  }
  return traces;
}

}  // namespace modspec
