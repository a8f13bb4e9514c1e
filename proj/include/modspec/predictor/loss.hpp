// modspec/predictor/loss.hpp

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

#ifndef MODSPEC_PREDICTOR_LOSS_HPP_
#define MODSPEC_PREDICTOR_LOSS_HPP_

#include <optional>

#include "modspec/dsp/spectrogram.hpp"
#include "modspec/predictor/model.hpp"

namespace modspec {

struct LossOptions {
  /// Restrict the loss to the masked frames. Off means every frame counts
  /// (ablation only).
  bool masked_only = true;
};

template <typename Scalar>
struct LossResult {
  double loss = 0.0;
  Mat<Scalar> grad;  // d loss / d prediction; sign(0) taken as 0
};

/// Mean |prediction - target| over the masked frames and all bands. Throws
/// kContract on a shape mismatch, or when masked_only is set and `range` is
/// absent or empty.
template <typename Scalar>
LossResult<Scalar> MaskedL1(const Mat<Scalar> &prediction, const Mat<Scalar> &target,
                            const std::optional<FrameRange> &range,
                            const LossOptions &opts = {});

/// Convenience form taking the target spectrogram and its annotation.
double MaskedL1Loss(const Mat<float> &prediction, const FdlpSpectrogram &target);

template <typename Scalar>
struct LossAndGrad {
  double loss = 0.0;
  Gradients<Scalar> grads;
};

/// Forward, masked L1 and backward in one call.
template <typename Scalar>
LossAndGrad<Scalar> ComputeLossAndGradients(const PredictorParams<Scalar> &params,
                                            const Mat<Scalar> &input, const Mat<Scalar> &target,
                                            const std::optional<FrameRange> &range,
                                            const LossOptions &loss_opts = {},
                                            const ForwardOptions &fwd_opts = {});

}  // namespace modspec

#endif  // MODSPEC_PREDICTOR_LOSS_HPP_
