// modspec/predictor/params.hpp

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

#ifndef MODSPEC_PREDICTOR_PARAMS_HPP_
#define MODSPEC_PREDICTOR_PARAMS_HPP_

#include <string>
#include <type_traits>
#include <vector>

#include <Eigen/Core>

#include "modspec/predictor/config.hpp"

namespace modspec {

template <typename Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
template <typename Scalar>
using RowVec = Eigen::Matrix<Scalar, 1, Eigen::Dynamic>;

/// Weights of one pre-norm encoder layer. Linear maps act on row vectors:
/// y = x W + b.
template <typename Scalar>
struct EncoderLayerParams {
  RowVec<Scalar> attn_norm_scale, attn_norm_shift;
  Mat<Scalar> query_w, key_w, value_w, out_w;  // model_dim x model_dim
  RowVec<Scalar> query_b, key_b, value_b, out_b;
  RowVec<Scalar> ffn_norm_scale, ffn_norm_shift;
  Mat<Scalar> ffn_in_w;   // model_dim x ffn_dim
  RowVec<Scalar> ffn_in_b;
  Mat<Scalar> ffn_out_w;  // ffn_dim x model_dim
  RowVec<Scalar> ffn_out_b;
};

/// All predictor weights. The sinusoidal position table is derived from the
/// config and is not a trainable tensor.
template <typename Scalar>
struct PredictorParams {
  PredictorConfig config;
  Mat<Scalar> input_w;  // input_dim x model_dim
  RowVec<Scalar> input_b;
  std::vector<EncoderLayerParams<Scalar>> layers;
  RowVec<Scalar> final_norm_scale, final_norm_shift;
  Mat<Scalar> output_w;  // model_dim x input_dim
  RowVec<Scalar> output_b;
  Mat<Scalar> positional;  // max_frames x model_dim

  /// Calls f(name, tensor) for every trainable tensor in a fixed order.
  /// `tensor` is a Mat or RowVec (const if *this is const).
  template <typename F>
  void ForEachTensor(F &&f) { Visit(*this, f); }
  template <typename F>
  void ForEachTensor(F &&f) const { Visit(*this, f); }

  /// Same trainable shapes, all zeros; the position table is left empty.
  PredictorParams ZerosLike() const;

  template <typename Other>
  PredictorParams<Other> Cast() const;

 private:
  template <typename Self, typename F>
  static void Visit(Self &self, F &f) {
    f(std::string("input.w"), self.input_w);
    f(std::string("input.b"), self.input_b);
    for (std::size_t i = 0; i < self.layers.size(); ++i) {
      auto &l = self.layers[i];
      const std::string p = "layer" + std::to_string(i) + ".";
      f(p + "attn_norm.scale", l.attn_norm_scale);
      f(p + "attn_norm.shift", l.attn_norm_shift);
      f(p + "attn.query.w", l.query_w);
      f(p + "attn.query.b", l.query_b);
      f(p + "attn.key.w", l.key_w);
      f(p + "attn.key.b", l.key_b);
      f(p + "attn.value.w", l.value_w);
      f(p + "attn.value.b", l.value_b);
      f(p + "attn.out.w", l.out_w);
      f(p + "attn.out.b", l.out_b);
      f(p + "ffn_norm.scale", l.ffn_norm_scale);
      f(p + "ffn_norm.shift", l.ffn_norm_shift);
      f(p + "ffn.in.w", l.ffn_in_w);
      f(p + "ffn.in.b", l.ffn_in_b);
      f(p + "ffn.out.w", l.ffn_out_w);
      f(p + "ffn.out.b", l.ffn_out_b);
    }
    f(std::string("final_norm.scale"), self.final_norm_scale);
    f(std::string("final_norm.shift"), self.final_norm_shift);
    f(std::string("output.w"), self.output_w);
    f(std::string("output.b"), self.output_b);
  }
};

/// Sinusoidal table: even columns sin(t / 10000^(2i/d)), odd columns cos.
template <typename Scalar>
Mat<Scalar> SinusoidalPositions(int frames, int dim);

/// Uniform(-1/sqrt(fan_in), 1/sqrt(fan_in)) weights, zero biases, unit
/// layer-norm scales. Deterministic in config.seed.
template <typename Scalar>
PredictorParams<Scalar> InitParams(const PredictorConfig &config);

/// Shapes each tensor must have under `config`, in ForEachTensor order.
struct TensorShape {
  std::string name;
  std::vector<int> dims;
};
std::vector<TensorShape> ExpectedShapes(const PredictorConfig &config);

template <typename Scalar>
std::size_t ParameterCount(const PredictorParams<Scalar> &params) {
  std::size_t n = 0;
  params.ForEachTensor([&](const std::string &, const auto &t) { n += t.size(); });
  return n;
}

// ---------------------------------------------------------------------------

template <typename Scalar>
PredictorParams<Scalar> PredictorParams<Scalar>::ZerosLike() const {
  PredictorParams out = *this;
  out.ForEachTensor([](const std::string &, auto &t) { t.setZero(); });
  out.positional.resize(0, 0);
  return out;
}

template <typename Scalar>
template <typename Other>
PredictorParams<Other> PredictorParams<Scalar>::Cast() const {
  PredictorParams<Other> out;
  out.config = config;
  out.layers.resize(layers.size());
  // Walk both parameter sets in lockstep; the visit order is identical.
  std::vector<const void *> src;
  ForEachTensor([&](const std::string &, const auto &t) { src.push_back(&t); });
  std::size_t i = 0;
  out.ForEachTensor([&](const std::string &, auto &t) {
    using Dst = std::remove_reference_t<decltype(t)>;
    using Src = std::conditional_t<Dst::RowsAtCompileTime == 1, RowVec<Scalar>, Mat<Scalar>>;
    t = static_cast<const Src *>(src[i++])->template cast<Other>();
  });
  out.positional = positional.template cast<Other>();
  return out;
}

}  // namespace modspec

#endif  // MODSPEC_PREDICTOR_PARAMS_HPP_
