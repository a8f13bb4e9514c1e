// predictor/optimizer.cpp

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

#include "modspec/predictor/optimizer.hpp"

#include <cmath>
#include <vector>

namespace modspec {

double LearningRateAt(std::int64_t step, std::int64_t total_steps, const AdamOptions &opts) {
  const auto warmup = static_cast<std::int64_t>(
      std::ceil(opts.warmup_fraction * static_cast<double>(total_steps)));
  if (warmup <= 0 || step >= warmup) return opts.learning_rate;
  return opts.learning_rate * static_cast<double>(step + 1) / static_cast<double>(warmup);
}

template <typename Scalar>
void AdamStep(PredictorParams<Scalar> &params, const PredictorParams<Scalar> &grads,
              AdamState<Scalar> &state, double learning_rate, const AdamOptions &opts) {
  ++state.step;
  const double c1 = 1.0 - std::pow(opts.beta1, static_cast<double>(state.step));
  const double c2 = 1.0 - std::pow(opts.beta2, static_cast<double>(state.step));
  const auto b1 = static_cast<Scalar>(opts.beta1);
  const auto b2 = static_cast<Scalar>(opts.beta2);
  const auto step_size = static_cast<Scalar>(learning_rate / c1);
  const auto inv_sqrt_c2 = static_cast<Scalar>(1.0 / std::sqrt(c2));
  const auto eps = static_cast<Scalar>(opts.epsilon);

  // Parallel walks over the four parameter sets; visit order is fixed.
  std::vector<const void *> g;
  std::vector<void *> m, v;
  grads.ForEachTensor([&](const std::string &, const auto &t) { g.push_back(&t); });
  state.first_moment.ForEachTensor([&](const std::string &, auto &t) { m.push_back(&t); });
  state.second_moment.ForEachTensor([&](const std::string &, auto &t) { v.push_back(&t); });

  std::size_t i = 0;
  params.ForEachTensor([&](const std::string &, auto &p) {
    using T = std::remove_reference_t<decltype(p)>;
    const T &gt = *static_cast<const T *>(g[i]);
    T &mt = *static_cast<T *>(m[i]);
    T &vt = *static_cast<T *>(v[i]);
    ++i;
    mt = b1 * mt + (Scalar(1) - b1) * gt;
    vt = b2 * vt + (Scalar(1) - b2) * gt.cwiseProduct(gt);
    p.array() -= step_size * mt.array() / (vt.array().sqrt() * inv_sqrt_c2 + eps);
  });
}

template void AdamStep<float>(PredictorParams<float> &, const PredictorParams<float> &,
                              AdamState<float> &, double, const AdamOptions &);
template void AdamStep<double>(PredictorParams<double> &, const PredictorParams<double> &,
                               AdamState<double> &, double, const AdamOptions &);

}  // namespace modspec
