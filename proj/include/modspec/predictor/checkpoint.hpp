// modspec/predictor/checkpoint.hpp

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

// MODP checkpoint, all fields little-endian:
//
//   "MODP"                      4 bytes
//   version                     u16 (= 1)
//   config_field_count          u32 (= 8)
//   input_dim, model_dim, layer_count, head_count, ffn_dim, max_frames,
//   seed_lo, seed_hi            u32 each
//   tensor_count                u32
//   per tensor:
//     name_length u16, name bytes, rank u32, dims u32[rank],
//     offset u64                (bytes from the start of the data section)
//   data section                f32 values, row-major, tensors back to back
//
// The sinusoidal position table is rebuilt from the config on load.

#ifndef MODSPEC_PREDICTOR_CHECKPOINT_HPP_
#define MODSPEC_PREDICTOR_CHECKPOINT_HPP_

#include <optional>
#include <string>
#include <vector>

#include "modspec/predictor/params.hpp"

namespace modspec {

inline constexpr std::uint16_t kCheckpointVersion = 1;

std::vector<char> EncodeCheckpoint(const PredictorParams<float> &params);

/// Decodes a checkpoint. With `expected` set, every tensor is checked
/// against the shapes that config implies and a mismatch throws kShape
/// naming the tensor; differing non-shape fields throw kConfig.
PredictorParams<float> DecodeCheckpoint(const std::vector<char> &bytes,
                                        const std::optional<PredictorConfig> &expected = {},
                                        const std::string &context = "checkpoint");

void SaveCheckpoint(const std::string &path, const PredictorParams<float> &params);
PredictorParams<float> LoadCheckpoint(const std::string &path,
                                      const std::optional<PredictorConfig> &expected = {});

}  // namespace modspec

#endif  // MODSPEC_PREDICTOR_CHECKPOINT_HPP_
