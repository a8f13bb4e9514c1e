// modspec/predictor/model.hpp

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

// Self-attention modulation predictor: forward pass and hand-written
// backward pass.
//
//   x0 = input W_in + b_in + P[0:T]
//   for each layer:
//     x = x + MHA(LN_attn(x))
//     x = x + W_2 relu(W_1 LN_ffn(x) + b_1) + b_2     <- captured per layer
//   prediction = LN_final(x) W_out + b_out
//
// Attention is full (bidirectional) over all frames.

#ifndef MODSPEC_PREDICTOR_MODEL_HPP_
#define MODSPEC_PREDICTOR_MODEL_HPP_

#include <optional>
#include <vector>

#include "modspec/dsp/spectrogram.hpp"
#include "modspec/predictor/params.hpp"

namespace modspec {

inline constexpr double kLayerNormEpsilon = 1e-5;

enum class AttentionMode {
  kFull,
  kIdentity,  // ablation: every frame attends only to itself
};

struct ForwardOptions {
  bool capture = false;            // keep every layer's output
  bool capture_attention = false;  // keep every head's attention matrix
  AttentionMode attention = AttentionMode::kFull;
};

template <typename Scalar>
struct ActivationTrace {
  std::vector<Mat<Scalar>> layer_outputs;          // layer_count x (T x model_dim)
  std::vector<std::vector<Mat<Scalar>>> attention;  // [layer][head] T x T
};

template <typename Scalar>
struct LayerCache {
  Mat<Scalar> x_in;
  Mat<Scalar> attn_xhat, attn_h;
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> attn_rstd;
  Mat<Scalar> q, k, v;
  std::vector<Mat<Scalar>> probs;  // per head
  Mat<Scalar> context;             // concatenated heads, before out projection
  Mat<Scalar> x_mid;
  Mat<Scalar> ffn_xhat, ffn_h;
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> ffn_rstd;
  Mat<Scalar> pre_act, act;
};

/// Intermediate values needed by Backward().
template <typename Scalar>
struct ForwardCache {
  AttentionMode attention = AttentionMode::kFull;
  Mat<Scalar> input;
  std::vector<LayerCache<Scalar>> layers;
  Mat<Scalar> final_x, final_xhat, final_h;
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> final_rstd;
};

template <typename Scalar>
struct ForwardResult {
  Mat<Scalar> prediction;  // T x input_dim
  std::optional<ActivationTrace<Scalar>> trace;
};

/// Throws kLength when T > max_frames, kNumerical on non-finite input and
/// kContract on a column count other than input_dim.
template <typename Scalar>
ForwardResult<Scalar> Forward(const PredictorParams<Scalar> &params, const Mat<Scalar> &input,
                              const ForwardOptions &opts = {},
                              ForwardCache<Scalar> *cache = nullptr);

template <typename Scalar>
ForwardResult<Scalar> Forward(const PredictorParams<Scalar> &params,
                              const FdlpSpectrogram &spectrogram, bool capture);

template <typename Scalar>
struct Gradients {
  PredictorParams<Scalar> params;  // same layout as the weights
  Mat<Scalar> input;               // d loss / d input
};

/// Backpropagates d loss / d prediction through a cached forward pass.
/// Throws kNumerical naming the first tensor with a non-finite gradient.
template <typename Scalar>
Gradients<Scalar> Backward(const PredictorParams<Scalar> &params,
                           const ForwardCache<Scalar> &cache,
                           const Mat<Scalar> &grad_prediction);

}  // namespace modspec

#endif  // MODSPEC_PREDICTOR_MODEL_HPP_
