// modspec/predictor/optimizer.hpp

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

#ifndef MODSPEC_PREDICTOR_OPTIMIZER_HPP_
#define MODSPEC_PREDICTOR_OPTIMIZER_HPP_

#include <cstdint>

#include "modspec/predictor/params.hpp"

namespace modspec {

struct AdamOptions {
  double learning_rate = 1e-4;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  double warmup_fraction = 0.1;  // linear warmup over this share of the run
};

/// Linear warmup from lr / warmup_steps to lr over the first
/// ceil(warmup_fraction * total_steps) steps, constant afterwards.
double LearningRateAt(std::int64_t step, std::int64_t total_steps, const AdamOptions &opts);

template <typename Scalar>
struct AdamState {
  PredictorParams<Scalar> first_moment;
  PredictorParams<Scalar> second_moment;
  std::int64_t step = 0;

  static AdamState ZerosLike(const PredictorParams<Scalar> &params) {
    return {params.ZerosLike(), params.ZerosLike(), 0};
  }
};

/// One bias-corrected Adam update of every trainable tensor.
template <typename Scalar>
void AdamStep(PredictorParams<Scalar> &params, const PredictorParams<Scalar> &grads,
              AdamState<Scalar> &state, double learning_rate, const AdamOptions &opts);

}  // namespace modspec

#endif  // MODSPEC_PREDICTOR_OPTIMIZER_HPP_
