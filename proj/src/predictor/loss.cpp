// predictor/loss.cpp

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

#include "modspec/predictor/loss.hpp"

#include <algorithm>

#include "modspec/common.hpp"

namespace modspec {

template <typename Scalar>
LossResult<Scalar> MaskedL1(const Mat<Scalar> &prediction, const Mat<Scalar> &target,
                            const std::optional<FrameRange> &range, const LossOptions &opts) {
  if (prediction.rows() != target.rows() || prediction.cols() != target.cols())
    Fail(ErrorKind::kContract, "prediction and target shapes differ");

  std::int64_t start = 0, end = prediction.rows();
  if (opts.masked_only) {
    if (!range) Fail(ErrorKind::kContract, "target has no masked frame range");
    start = std::max<std::int64_t>(range->start, 0);
    end = std::min<std::int64_t>(range->end, prediction.rows());
    if (end <= start) Fail(ErrorKind::kContract, "masked frame range is empty");
  }

  LossResult<Scalar> res;
  res.grad = Mat<Scalar>::Zero(prediction.rows(), prediction.cols());
  const double count = static_cast<double>(end - start) * prediction.cols();
  const Scalar inv = static_cast<Scalar>(1.0 / count);
  double acc = 0.0;
  for (std::int64_t t = start; t < end; ++t) {
    for (Eigen::Index b = 0; b < prediction.cols(); ++b) {
      const Scalar diff = prediction(t, b) - target(t, b);
      acc += std::abs(static_cast<double>(diff));
      if (diff > Scalar(0)) res.grad(t, b) = inv;
      else if (diff < Scalar(0)) res.grad(t, b) = -inv;
    }
  }
  res.loss = acc / count;
  return res;
}

double MaskedL1Loss(const Mat<float> &prediction, const FdlpSpectrogram &target) {
  Mat<float> frames = target.frames;
  return MaskedL1<float>(prediction, frames, target.masked_frame_range).loss;
}

template <typename Scalar>
LossAndGrad<Scalar> ComputeLossAndGradients(const PredictorParams<Scalar> &params,
                                            const Mat<Scalar> &input, const Mat<Scalar> &target,
                                            const std::optional<FrameRange> &range,
                                            const LossOptions &loss_opts,
                                            const ForwardOptions &fwd_opts) {
  ForwardCache<Scalar> cache;
  ForwardOptions opts = fwd_opts;
  opts.capture = false;
  opts.capture_attention = false;
  auto fwd = Forward(params, input, opts, &cache);
  auto loss = MaskedL1(fwd.prediction, target, range, loss_opts);
  LossAndGrad<Scalar> out;
  out.loss = loss.loss;
  out.grads = Backward(params, cache, loss.grad);
  return out;
}

template LossResult<float> MaskedL1<float>(const Mat<float> &, const Mat<float> &,
                                           const std::optional<FrameRange> &, const LossOptions &);
template LossResult<double> MaskedL1<double>(const Mat<double> &, const Mat<double> &,
                                             const std::optional<FrameRange> &,
                                             const LossOptions &);
template LossAndGrad<float> ComputeLossAndGradients<float>(
    const PredictorParams<float> &, const Mat<float> &, const Mat<float> &,
    const std::optional<FrameRange> &, const LossOptions &, const ForwardOptions &);
template LossAndGrad<double> ComputeLossAndGradients<double>(
    const PredictorParams<double> &, const Mat<double> &, const Mat<double> &,
    const std::optional<FrameRange> &, const LossOptions &, const ForwardOptions &);

}  // namespace modspec
