// modspec/predictor/train.hpp

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

// Masked-prediction training loop. One utterance per step:
//   seed_t = SplitSeed(master, t)
//   pick utterance -> maybe augment -> mask one window -> forward ->
//   masked L1 against the clean spectrogram -> backward -> Adam.

#ifndef MODSPEC_PREDICTOR_TRAIN_HPP_
#define MODSPEC_PREDICTOR_TRAIN_HPP_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "modspec/augment.hpp"
#include "modspec/dsp/features.hpp"
#include "modspec/io/manifest.hpp"
#include "modspec/predictor/loss.hpp"
#include "modspec/predictor/optimizer.hpp"

namespace modspec {

struct TrainOptions {
  std::int64_t steps = 1000;
  std::uint64_t seed = 0;  // master seed for sampling, augmentation, masking
  AdamOptions adam;
  LossOptions loss;
  MaskSpec mask;  // window_index is drawn per step
  AugmentPolicy augment;
  bool clean_target = true;  // target from the unaugmented audio; false uses the noisy one
  std::int64_t checkpoint_every = 0;  // 0 disables periodic checkpoints
  std::string checkpoint_path;        // also written on divergence
};

struct TrainState {
  PredictorParams<float> params;
  AdamState<float> adam;
  std::int64_t step = 0;
  std::int64_t total_steps = 0;
  std::uint64_t master_seed = 0;
};

TrainState InitTrainState(const PredictorConfig &config, const TrainOptions &opts);

struct StepMetrics {
  std::int64_t step = 0;
  double loss = 0.0;
  double lr = 0.0;
};

enum class TrainStatus { kCompleted, kDiverged };

struct TrainResult {
  TrainState state;
  std::vector<StepMetrics> metrics;
  TrainStatus status = TrainStatus::kCompleted;
  std::string message;  // set on divergence
};

/// Network input and target for one step, both shifted by the input's
/// per-band means.
struct TrainingExample {
  Mat<float> input;
  Mat<float> target;
  FrameRange masked;
};

/// `target` must carry the masked frame range and match `input` in shape.
TrainingExample MakeExample(const FdlpSpectrogram &input, const FdlpSpectrogram &target);

/// Throws kConfig on an empty corpus, on one where no utterance reaches
/// 1.5 s, or on an augmentation policy that cannot be satisfied.
/// Deterministic in opts.seed, config.seed and the corpus order.
TrainResult Train(const std::vector<Utterance> &corpus, const PredictorConfig &config,
                  const NoiseBank &noise, const TrainOptions &opts,
                  const std::function<void(const StepMetrics &)> &on_step = {});

/// CSV with header "step,loss,lr".
void WriteMetricsCsv(const std::string &path, const std::vector<StepMetrics> &metrics);

/// Writes the encoder weights as a MODP checkpoint.
void ExportEncoder(const TrainState &state, const std::string &path);

}  // namespace modspec

#endif  // MODSPEC_PREDICTOR_TRAIN_HPP_
