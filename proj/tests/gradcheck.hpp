// tests/gradcheck.hpp

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

// Central finite differences against the analytic backward pass, shared by
// the unit tests and the acceptance run.

#ifndef MODSPEC_TESTS_GRADCHECK_HPP_
#define MODSPEC_TESTS_GRADCHECK_HPP_

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <string>
#include <type_traits>
#include <vector>

#include "modspec/predictor/loss.hpp"
#include "modspec/predictor/model.hpp"

namespace gradcheck {

using modspec::ComputeLossAndGradients;
using modspec::ForwardOptions;
using modspec::FrameRange;
using modspec::InitParams;
using modspec::Mat;
using modspec::PredictorConfig;

template <typename S>
Mat<S> RandomInput(int frames, int cols, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  Mat<S> x(frames, cols);
  for (Eigen::Index i = 0; i < x.size(); ++i) x.data()[i] = static_cast<S>(g(rng));
  return x;
}

// Max over every parameter entry of |analytic - numeric| / max(|a|, |n|),
// skipping entries where both are below `floor`.
struct GradReport {
  double worst = 0.0;
  std::string where;
  int checked = 0;
  std::set<std::string> tensors;  // names with at least one checked entry
  std::set<std::string> zero;     // names whose entries were all below the floor
  int tensor_count = 0;
};

inline GradReport CheckGradients(const PredictorConfig &config, int frames, FrameRange range,
                          const ForwardOptions &fwd = {}, std::uint64_t seed = 1) {
  auto params = InitParams<double>(config);
  // Move norms and biases off their init values so every path is exercised.
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 0.2);
  params.ForEachTensor([&](const std::string &, auto &t) {
    for (Eigen::Index i = 0; i < t.size(); ++i) t.data()[i] += g(rng);
  });
  const Mat<double> x = RandomInput<double>(frames, 20, seed + 1);
  const Mat<double> y = RandomInput<double>(frames, 20, seed + 2);
  const auto lg = ComputeLossAndGradients(params, x, y, range, {}, fwd);

  std::vector<const void *> analytic;
  lg.grads.params.ForEachTensor([&](const std::string &, const auto &t) { analytic.push_back(&t); });
  const double h = 1e-5;
  GradReport rep;
  std::size_t idx = 0;
  params.ForEachTensor([&](const std::string &name, auto &t) {
    ++rep.tensor_count;
    bool any = false;
    using T = std::remove_reference_t<decltype(t)>;
    const T &ga = *static_cast<const T *>(analytic[idx++]);
    for (Eigen::Index i = 0; i < t.size(); ++i) {
      const double saved = t.data()[i];
      t.data()[i] = saved + h;
      const double up = ComputeLossAndGradients(params, x, y, range, {}, fwd).loss;
      t.data()[i] = saved - h;
      const double down = ComputeLossAndGradients(params, x, y, range, {}, fwd).loss;
      t.data()[i] = saved;
      const double num = (up - down) / (2 * h);
      const double ana = ga.data()[i];
      const double scale = std::max(std::abs(num), std::abs(ana));
      if (scale < 1e-7) continue;
      ++rep.checked;
      rep.tensors.insert(name);
      any = true;
      const double rel = std::abs(num - ana) / scale;
      if (rel > rep.worst) {
        rep.worst = rel;
        rep.where = name + "[" + std::to_string(i) + "]";
      }
    }
    if (!any) rep.zero.insert(name);
  });
  return rep;
}

}  // namespace gradcheck

#endif  // MODSPEC_TESTS_GRADCHECK_HPP_
