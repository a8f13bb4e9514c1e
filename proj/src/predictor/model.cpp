// predictor/model.cpp

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

#include "modspec/predictor/model.hpp"

#include <cmath>
#include <string>

#include "modspec/common.hpp"

namespace modspec {

namespace {

template <typename S>
using Col = Eigen::Matrix<S, Eigen::Dynamic, 1>;

template <typename S>
void LayerNormForward(const Mat<S> &x, const RowVec<S> &scale, const RowVec<S> &shift,
                      Mat<S> *xhat, Col<S> *rstd, Mat<S> *out) {
  const Eigen::Index rows = x.rows(), d = x.cols();
  xhat->resize(rows, d);
  rstd->resize(rows);
  out->resize(rows, d);
  for (Eigen::Index t = 0; t < rows; ++t) {
    const S mean = x.row(t).mean();
    auto centered = (x.row(t).array() - mean).eval();
    const S var = centered.square().sum() / static_cast<S>(d);
    const S r = S(1) / std::sqrt(var + static_cast<S>(kLayerNormEpsilon));
    (*rstd)(t) = r;
    xhat->row(t) = centered * r;
    out->row(t) = xhat->row(t).array() * scale.array() + shift.array();
  }
}

// Accumulates scale/shift gradients and returns d loss / d x.
template <typename S>
Mat<S> LayerNormBackward(const Mat<S> &grad_out, const Mat<S> &xhat, const Col<S> &rstd,
                         const RowVec<S> &scale, RowVec<S> *grad_scale, RowVec<S> *grad_shift) {
  const Eigen::Index rows = grad_out.rows(), d = grad_out.cols();
  *grad_scale += (grad_out.array() * xhat.array()).colwise().sum().matrix();
  *grad_shift += grad_out.colwise().sum();
  Mat<S> dx(rows, d);
  for (Eigen::Index t = 0; t < rows; ++t) {
    auto dxhat = (grad_out.row(t).array() * scale.array()).eval();
    const S sum1 = dxhat.sum();
    const S sum2 = (dxhat * xhat.row(t).array()).sum();
    dx.row(t) = (static_cast<S>(d) * dxhat - sum1 - xhat.row(t).array() * sum2) *
                (rstd(t) / static_cast<S>(d));
  }
  return dx;
}

template <typename S>
void SoftmaxRows(Mat<S> *m) {
  for (Eigen::Index t = 0; t < m->rows(); ++t) {
    auto row = m->row(t);
    const S mx = row.maxCoeff();
    row = (row.array() - mx).exp();
    row /= row.sum();
  }
}

template <typename S>
bool AllFinite(const Eigen::MatrixBase<S> &m) {
  return m.allFinite();
}

}  // namespace

template <typename Scalar>
ForwardResult<Scalar> Forward(const PredictorParams<Scalar> &params, const Mat<Scalar> &input,
                              const ForwardOptions &opts, ForwardCache<Scalar> *cache) {
  const PredictorConfig &cfg = params.config;
  const Eigen::Index frames = input.rows();
  if (input.cols() != cfg.input_dim)
    Fail(ErrorKind::kContract, "input has " + std::to_string(input.cols()) +
                                   " columns, predictor expects " +
                                   std::to_string(cfg.input_dim));
  if (frames > cfg.max_frames || frames > params.positional.rows())
    Fail(ErrorKind::kLength, "input has " + std::to_string(frames) +
                                 " frames, predictor supports at most " +
                                 std::to_string(cfg.max_frames));
  if (!input.allFinite()) Fail(ErrorKind::kNumerical, "predictor input is not finite");

  const int heads = cfg.head_count;
  const int dh = cfg.head_dim();
  const Scalar inv_sqrt_dh = Scalar(1) / std::sqrt(static_cast<Scalar>(dh));

  ForwardResult<Scalar> result;
  if (opts.capture || opts.capture_attention) result.trace.emplace();
  if (cache) {
    cache->attention = opts.attention;
    cache->input = input;
    cache->layers.assign(params.layers.size(), {});
  }

  Mat<Scalar> x = input * params.input_w;
  x.rowwise() += params.input_b;
  x += params.positional.topRows(frames);

  LayerCache<Scalar> local;
  for (std::size_t li = 0; li < params.layers.size(); ++li) {
    const auto &l = params.layers[li];
    LayerCache<Scalar> &c = cache ? cache->layers[li] : local;
    c.x_in = x;

    LayerNormForward(x, l.attn_norm_scale, l.attn_norm_shift, &c.attn_xhat, &c.attn_rstd,
                     &c.attn_h);
    c.v = c.attn_h * l.value_w;
    c.v.rowwise() += l.value_b;
    c.probs.clear();
    if (opts.attention == AttentionMode::kFull) {
      c.q = c.attn_h * l.query_w;
      c.q.rowwise() += l.query_b;
      c.k = c.attn_h * l.key_w;
      c.k.rowwise() += l.key_b;
      c.context.resize(frames, cfg.model_dim);
      c.probs.resize(heads);
      for (int h = 0; h < heads; ++h) {
        Mat<Scalar> &p = c.probs[h];
        p.noalias() = c.q.middleCols(h * dh, dh) * c.k.middleCols(h * dh, dh).transpose();
        p *= inv_sqrt_dh;
        SoftmaxRows(&p);
        c.context.middleCols(h * dh, dh).noalias() = p * c.v.middleCols(h * dh, dh);
      }
    } else {
      c.context = c.v;
    }
    if (opts.capture_attention) {
      if (opts.attention == AttentionMode::kFull) {
        result.trace->attention.push_back(c.probs);
      } else {
        result.trace->attention.emplace_back(
            heads, Mat<Scalar>::Identity(frames, frames));
      }
    }

    Mat<Scalar> attn_out = c.context * l.out_w;
    attn_out.rowwise() += l.out_b;
    x += attn_out;
    c.x_mid = x;

    LayerNormForward(x, l.ffn_norm_scale, l.ffn_norm_shift, &c.ffn_xhat, &c.ffn_rstd, &c.ffn_h);
    c.pre_act = c.ffn_h * l.ffn_in_w;
    c.pre_act.rowwise() += l.ffn_in_b;
    c.act = c.pre_act.cwiseMax(Scalar(0));
    Mat<Scalar> ffn_out = c.act * l.ffn_out_w;
    ffn_out.rowwise() += l.ffn_out_b;
    x += ffn_out;

    if (opts.capture) result.trace->layer_outputs.push_back(x);
  }

  Mat<Scalar> xhat, h;
  Col<Scalar> rstd;
  LayerNormForward(x, params.final_norm_scale, params.final_norm_shift, &xhat, &rstd, &h);
  result.prediction = h * params.output_w;
  result.prediction.rowwise() += params.output_b;

  if (cache) {
    cache->final_x = std::move(x);
    cache->final_xhat = std::move(xhat);
    cache->final_rstd = std::move(rstd);
    cache->final_h = std::move(h);
  }
  return result;
}

template <typename Scalar>
ForwardResult<Scalar> Forward(const PredictorParams<Scalar> &params,
                              const FdlpSpectrogram &spectrogram, bool capture) {
  Mat<Scalar> input = spectrogram.frames.template cast<Scalar>();
  ForwardOptions opts;
  opts.capture = capture;
  return Forward(params, input, opts);
}

template <typename Scalar>
Gradients<Scalar> Backward(const PredictorParams<Scalar> &params,
                           const ForwardCache<Scalar> &cache,
                           const Mat<Scalar> &grad_prediction) {
  const PredictorConfig &cfg = params.config;
  const Eigen::Index frames = cache.input.rows();
  if (grad_prediction.rows() != frames || grad_prediction.cols() != cfg.input_dim)
    Fail(ErrorKind::kContract, "prediction gradient has the wrong shape");

  const int heads = cfg.head_count;
  const int dh = cfg.head_dim();
  const Scalar inv_sqrt_dh = Scalar(1) / std::sqrt(static_cast<Scalar>(dh));

  Gradients<Scalar> g;
  g.params = params.ZerosLike();
  auto &gp = g.params;

  gp.output_w.noalias() = cache.final_h.transpose() * grad_prediction;
  gp.output_b = grad_prediction.colwise().sum();
  Mat<Scalar> dh_final = grad_prediction * params.output_w.transpose();
  Mat<Scalar> dx = LayerNormBackward(dh_final, cache.final_xhat, cache.final_rstd,
                                     params.final_norm_scale, &gp.final_norm_scale,
                                     &gp.final_norm_shift);

  for (std::size_t li = params.layers.size(); li-- > 0;) {
    const auto &l = params.layers[li];
    const LayerCache<Scalar> &c = cache.layers[li];
    auto &gl = gp.layers[li];

    // Feed-forward block; dx is the gradient w.r.t. the layer output.
    gl.ffn_out_w.noalias() = c.act.transpose() * dx;
    gl.ffn_out_b = dx.colwise().sum();
    Mat<Scalar> d_act = dx * l.ffn_out_w.transpose();
    Mat<Scalar> d_pre = (c.pre_act.array() > Scalar(0)).select(d_act, Scalar(0));
    gl.ffn_in_w.noalias() = c.ffn_h.transpose() * d_pre;
    gl.ffn_in_b = d_pre.colwise().sum();
    Mat<Scalar> d_ffn_h = d_pre * l.ffn_in_w.transpose();
    dx += LayerNormBackward(d_ffn_h, c.ffn_xhat, c.ffn_rstd, l.ffn_norm_scale,
                            &gl.ffn_norm_scale, &gl.ffn_norm_shift);

    // Attention block; dx is now the gradient w.r.t. x_mid.
    gl.out_w.noalias() = c.context.transpose() * dx;
    gl.out_b = dx.colwise().sum();
    Mat<Scalar> d_context = dx * l.out_w.transpose();

    Mat<Scalar> dq = Mat<Scalar>::Zero(frames, cfg.model_dim);
    Mat<Scalar> dk = Mat<Scalar>::Zero(frames, cfg.model_dim);
    Mat<Scalar> dv;
    if (cache.attention == AttentionMode::kFull) {
      dv.resize(frames, cfg.model_dim);
      for (int h = 0; h < heads; ++h) {
        const Mat<Scalar> &p = c.probs[h];
        auto dctx_h = d_context.middleCols(h * dh, dh);
        Mat<Scalar> dp = dctx_h * c.v.middleCols(h * dh, dh).transpose();
        dv.middleCols(h * dh, dh).noalias() = p.transpose() * dctx_h;
        Col<Scalar> row_dot = (p.array() * dp.array()).rowwise().sum();
        Mat<Scalar> ds = p.array() * (dp.array().colwise() - row_dot.array());
        ds *= inv_sqrt_dh;
        dq.middleCols(h * dh, dh).noalias() = ds * c.k.middleCols(h * dh, dh);
        dk.middleCols(h * dh, dh).noalias() = ds.transpose() * c.q.middleCols(h * dh, dh);
      }
    } else {
      dv = d_context;
    }

    gl.value_w.noalias() = c.attn_h.transpose() * dv;
    gl.value_b = dv.colwise().sum();
    Mat<Scalar> d_attn_h = dv * l.value_w.transpose();
    if (cache.attention == AttentionMode::kFull) {
      gl.query_w.noalias() = c.attn_h.transpose() * dq;
      gl.query_b = dq.colwise().sum();
      gl.key_w.noalias() = c.attn_h.transpose() * dk;
      gl.key_b = dk.colwise().sum();
      d_attn_h.noalias() += dq * l.query_w.transpose();
      d_attn_h.noalias() += dk * l.key_w.transpose();
    }
    dx += LayerNormBackward(d_attn_h, c.attn_xhat, c.attn_rstd, l.attn_norm_scale,
                            &gl.attn_norm_scale, &gl.attn_norm_shift);
  }

  gp.input_w.noalias() = cache.input.transpose() * dx;
  gp.input_b = dx.colwise().sum();
  g.input = dx * params.input_w.transpose();

  gp.ForEachTensor([](const std::string &name, const auto &t) {
    if (!AllFinite(t)) Fail(ErrorKind::kNumerical, "non-finite gradient in tensor " + name);
  });
  return g;
}

template ForwardResult<float> Forward<float>(const PredictorParams<float> &, const Mat<float> &,
                                             const ForwardOptions &, ForwardCache<float> *);
template ForwardResult<double> Forward<double>(const PredictorParams<double> &,
                                               const Mat<double> &, const ForwardOptions &,
                                               ForwardCache<double> *);
template ForwardResult<float> Forward<float>(const PredictorParams<float> &,
                                             const FdlpSpectrogram &, bool);
template ForwardResult<double> Forward<double>(const PredictorParams<double> &,
                                               const FdlpSpectrogram &, bool);
template Gradients<float> Backward<float>(const PredictorParams<float> &,
                                          const ForwardCache<float> &, const Mat<float> &);
template Gradients<double> Backward<double>(const PredictorParams<double> &,
                                            const ForwardCache<double> &, const Mat<double> &);

}  // namespace modspec
