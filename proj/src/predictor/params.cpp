// predictor/params.cpp

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

#include "modspec/predictor/params.hpp"

#include <cmath>
#include <random>

namespace modspec {

template <typename Scalar>
Mat<Scalar> SinusoidalPositions(int frames, int dim) {
  Mat<Scalar> pe(frames, dim);
  for (int t = 0; t < frames; ++t) {
    for (int j = 0; j < dim; ++j) {
      const int pair = j / 2;
      const double rate = std::pow(10000.0, -2.0 * pair / dim);
      const double angle = t * rate;
      pe(t, j) = static_cast<Scalar>((j % 2 == 0) ? std::sin(angle) : std::cos(angle));
    }
  }
  return pe;
}

namespace {

template <typename Scalar>
Mat<Scalar> UniformMatrix(int rows, int cols, std::mt19937_64 &rng) {
  const double bound = 1.0 / std::sqrt(static_cast<double>(rows));  // fan_in = rows
  std::uniform_real_distribution<double> dist(-bound, bound);
  Mat<Scalar> m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = static_cast<Scalar>(dist(rng));
  return m;
}

template <typename Scalar>
RowVec<Scalar> Constant(int n, double v) {
  return RowVec<Scalar>::Constant(n, static_cast<Scalar>(v));
}

}  // namespace

template <typename Scalar>
PredictorParams<Scalar> InitParams(const PredictorConfig &config) {
  config.Validate();
  const int d = config.model_dim, f = config.ffn_dim, in = config.input_dim;
  std::mt19937_64 rng(config.seed);

  PredictorParams<Scalar> p;
  p.config = config;
  p.input_w = UniformMatrix<Scalar>(in, d, rng);
  p.input_b = Constant<Scalar>(d, 0.0);
  p.layers.resize(config.layer_count);
  for (auto &l : p.layers) {
    l.attn_norm_scale = Constant<Scalar>(d, 1.0);
    l.attn_norm_shift = Constant<Scalar>(d, 0.0);
    l.query_w = UniformMatrix<Scalar>(d, d, rng);
    l.key_w = UniformMatrix<Scalar>(d, d, rng);
    l.value_w = UniformMatrix<Scalar>(d, d, rng);
    l.out_w = UniformMatrix<Scalar>(d, d, rng);
    l.query_b = Constant<Scalar>(d, 0.0);
    l.key_b = Constant<Scalar>(d, 0.0);
    l.value_b = Constant<Scalar>(d, 0.0);
    l.out_b = Constant<Scalar>(d, 0.0);
    l.ffn_norm_scale = Constant<Scalar>(d, 1.0);
    l.ffn_norm_shift = Constant<Scalar>(d, 0.0);
    l.ffn_in_w = UniformMatrix<Scalar>(d, f, rng);
    l.ffn_in_b = Constant<Scalar>(f, 0.0);
    l.ffn_out_w = UniformMatrix<Scalar>(f, d, rng);
    l.ffn_out_b = Constant<Scalar>(d, 0.0);
  }
  p.final_norm_scale = Constant<Scalar>(d, 1.0);
  p.final_norm_shift = Constant<Scalar>(d, 0.0);
  p.output_w = UniformMatrix<Scalar>(d, in, rng);
  p.output_b = Constant<Scalar>(in, 0.0);
  p.positional = SinusoidalPositions<Scalar>(config.max_frames, d);
  return p;
}

std::vector<TensorShape> ExpectedShapes(const PredictorConfig &config) {
  // Shapes come from a parameter set built without sampling.
  PredictorParams<float> p;
  const int d = config.model_dim, f = config.ffn_dim, in = config.input_dim;
  p.input_w.resize(in, d);
  p.input_b.resize(d);
  p.layers.resize(config.layer_count);
  for (auto &l : p.layers) {
    for (auto *v : {&l.attn_norm_scale, &l.attn_norm_shift, &l.query_b, &l.key_b, &l.value_b,
                    &l.out_b, &l.ffn_norm_scale, &l.ffn_norm_shift, &l.ffn_out_b})
      v->resize(d);
    for (auto *m : {&l.query_w, &l.key_w, &l.value_w, &l.out_w}) m->resize(d, d);
    l.ffn_in_w.resize(d, f);
    l.ffn_in_b.resize(f);
    l.ffn_out_w.resize(f, d);
  }
  p.final_norm_scale.resize(d);
  p.final_norm_shift.resize(d);
  p.output_w.resize(d, in);
  p.output_b.resize(in);

  std::vector<TensorShape> shapes;
  p.ForEachTensor([&](const std::string &name, const auto &t) {
    using T = std::remove_cvref_t<decltype(t)>;
    if constexpr (T::RowsAtCompileTime == 1)
      shapes.push_back({name, {static_cast<int>(t.cols())}});
    else
      shapes.push_back({name, {static_cast<int>(t.rows()), static_cast<int>(t.cols())}});
  });
  return shapes;
}

template Mat<float> SinusoidalPositions<float>(int, int);
template Mat<double> SinusoidalPositions<double>(int, int);
template PredictorParams<float> InitParams<float>(const PredictorConfig &);
template PredictorParams<double> InitParams<double>(const PredictorConfig &);

}  // namespace modspec
