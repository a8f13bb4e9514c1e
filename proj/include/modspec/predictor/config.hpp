// modspec/predictor/config.hpp

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

#ifndef MODSPEC_PREDICTOR_CONFIG_HPP_
#define MODSPEC_PREDICTOR_CONFIG_HPP_

#include <cstdint>
#include <string>

namespace modspec {

/// Shape of the self-attention modulation predictor. The defaults are the
/// full-size network; Toy() is the desk-scale preset.
struct PredictorConfig {
  int input_dim = 20;
  int model_dim = 256;
  int layer_count = 12;
  int head_count = 8;
  int ffn_dim = 2048;
  int max_frames = 6000;  // 60 s at 100 frames/s
  std::uint64_t seed = 0;

  /// Throws kConfig unless every dimension is >= 1 and model_dim is a
  /// multiple of head_count.
  void Validate() const;
  int head_dim() const { return model_dim / head_count; }

  static PredictorConfig Full() { return {}; }
  static PredictorConfig Toy();

  /// Applies a "key=value" override (keys are the field names above).
  void Set(const std::string &key, const std::string &value);

  bool operator==(const PredictorConfig &) const = default;
};

std::string Describe(const PredictorConfig &config);

}  // namespace modspec

#endif  // MODSPEC_PREDICTOR_CONFIG_HPP_
