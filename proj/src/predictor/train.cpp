// predictor/train.cpp

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

#include "modspec/predictor/train.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>

#include "modspec/common.hpp"
#include "modspec/dsp/segment.hpp"
#include "modspec/predictor/checkpoint.hpp"

namespace modspec {

namespace {

// Streams split off each step's seed.
enum : std::uint64_t { kPickStream = 0, kAugmentStream = 1, kMaskStream = 2 };

struct CachedUtterance {
  const Utterance *utt;
  UtteranceAnalysis clean;
};

}  // namespace

TrainState InitTrainState(const PredictorConfig &config, const TrainOptions &opts) {
  TrainState s;
  s.params = InitParams<float>(config);
  s.adam = AdamState<float>::ZerosLike(s.params);
  s.total_steps = opts.steps;
  s.master_seed = opts.seed;
  return s;
}

TrainingExample MakeExample(const FdlpSpectrogram &input, const FdlpSpectrogram &target) {
  if (!target.masked_frame_range)
    Fail(ErrorKind::kContract, "target spectrogram carries no masked frame range");
  if (input.frames.rows() != target.frames.rows() || input.frames.cols() != target.frames.cols())
    Fail(ErrorKind::kContract, "input and target spectrograms differ in shape");
  const FrameMatrix &x = input.frames;
  const Eigen::RowVectorXf means = x.colwise().mean();
  TrainingExample ex;
  ex.input = x.rowwise() - means;
  ex.target = target.frames.rowwise() - means;
  ex.masked = *target.masked_frame_range;
  return ex;
}

TrainResult Train(const std::vector<Utterance> &corpus, const PredictorConfig &config,
                  const NoiseBank &noise, const TrainOptions &opts,
                  const std::function<void(const StepMetrics &)> &on_step) {
  config.Validate();
  opts.augment.Validate();
  opts.mask.Validate();
  if (opts.steps < 0) Fail(ErrorKind::kConfig, "steps must be >= 0");
  if (corpus.empty()) Fail(ErrorKind::kConfig, "training corpus is empty");
  if (opts.augment.apply_probability > 0.0 && noise.clips.empty())
    Fail(ErrorKind::kConfig, "augmentation enabled but the noise bank is empty");

  std::vector<CachedUtterance> pool;
  for (const Utterance &u : corpus) {
    if (u.audio.size() < static_cast<std::size_t>(kWindowSamples)) continue;
    pool.push_back({&u, AnalyzeUtterance(u.audio, ExtractMode::kTraining)});
    if (pool.back().clean.frame_count > config.max_frames)
      Fail(ErrorKind::kConfig, "utterance " + u.id + " has more frames than max_frames");
  }
  if (pool.empty())
    Fail(ErrorKind::kConfig, "no training utterance is at least 1.5 s long");

  TrainResult result;
  result.state = InitTrainState(config, opts);
  TrainState &st = result.state;
  result.metrics.reserve(static_cast<std::size_t>(opts.steps));

  for (std::int64_t t = 0; t < opts.steps; ++t) {
    const std::uint64_t step_seed = SplitSeed(opts.seed, static_cast<std::uint64_t>(t));
    std::mt19937_64 pick(SplitSeed(step_seed, kPickStream));
    const CachedUtterance &cu =
        pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(pick)];

    const AugmentResult aug =
        MaybeAugment(cu.utt->audio, opts.augment, noise, SplitSeed(step_seed, kAugmentStream));
    UtteranceAnalysis noisy;
    const UtteranceAnalysis *analysis = &cu.clean;
    if (aug.applied) {
      noisy = AnalyzeUtterance(aug.audio, ExtractMode::kTraining);
      analysis = &noisy;
    }
    FeaturePair pair = RenderFeaturePair(*analysis, opts.mask, SplitSeed(step_seed, kMaskStream));
    if (aug.applied && opts.clean_target) {
      FdlpSpectrogram clean = RenderSpectrogram(cu.clean, std::nullopt);
      clean.masked_frame_range = pair.masked.masked_frame_range;
      pair.clean = std::move(clean);
    }
    const TrainingExample ex = MakeExample(pair.masked, pair.clean);

    const double lr = LearningRateAt(t, opts.steps, opts.adam);
    LossAndGrad<float> lg;
    bool diverged = false;
    try {
      lg = ComputeLossAndGradients(st.params, ex.input, ex.target, ex.masked, opts.loss);
      diverged = !std::isfinite(lg.loss);
    } catch (const Error &e) {
      if (e.kind() != ErrorKind::kNumerical) throw;
      result.message = e.what();
      diverged = true;
    }
    if (diverged) {
      if (result.message.empty())
        result.message = "loss is not finite at step " + std::to_string(t);
      result.status = TrainStatus::kDiverged;
      if (!opts.checkpoint_path.empty()) SaveCheckpoint(opts.checkpoint_path, st.params);
      return result;
    }

    AdamStep(st.params, lg.grads.params, st.adam, lr, opts.adam);
    st.step = t + 1;
    result.metrics.push_back({t, lg.loss, lr});
    if (on_step) on_step(result.metrics.back());
    if (opts.checkpoint_every > 0 && !opts.checkpoint_path.empty() &&
        st.step % opts.checkpoint_every == 0)
      SaveCheckpoint(opts.checkpoint_path, st.params);
  }
  return result;
}

void WriteMetricsCsv(const std::string &path, const std::vector<StepMetrics> &metrics) {
  std::ofstream out(path);
  if (!out) Fail(ErrorKind::kIo, "cannot write " + path);
  out << "step,loss,lr\n";
  char line[96];
  for (const StepMetrics &m : metrics) {
    std::snprintf(line, sizeof line, "%lld,%.9g,%.9g\n", static_cast<long long>(m.step), m.loss,
                  m.lr);
    out << line;
  }
  if (!out) Fail(ErrorKind::kIo, "write failed: " + path);
}

void ExportEncoder(const TrainState &state, const std::string &path) {
  SaveCheckpoint(path, state.params);
}

}  // namespace modspec
