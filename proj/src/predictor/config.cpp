// predictor/config.cpp

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

#include "modspec/predictor/config.hpp"

#include <sstream>

#include "modspec/common.hpp"

namespace modspec {

namespace {

long long ParseInt(const std::string &key, const std::string &value) {
  try {
    std::size_t used = 0;
    long long v = std::stoll(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception &) {
    Fail(ErrorKind::kConfig, "bad integer for " + key + ": '" + value + "'");
  }
}

}  // namespace

void PredictorConfig::Validate() const {
  if (input_dim < 1 || model_dim < 1 || layer_count < 1 || head_count < 1 ||
      ffn_dim < 1 || max_frames < 1)
    Fail(ErrorKind::kConfig, "predictor dimensions must all be >= 1: " + Describe(*this));
  if (model_dim % head_count != 0)
    Fail(ErrorKind::kConfig, "model_dim " + std::to_string(model_dim) +
                                 " is not divisible by head_count " +
                                 std::to_string(head_count));
}

PredictorConfig PredictorConfig::Toy() {
  PredictorConfig c;
  c.model_dim = 64;
  c.layer_count = 3;
  c.head_count = 4;
  c.ffn_dim = 256;
  return c;
}

void PredictorConfig::Set(const std::string &key, const std::string &value) {
  if (key == "input_dim") input_dim = static_cast<int>(ParseInt(key, value));
  else if (key == "model_dim") model_dim = static_cast<int>(ParseInt(key, value));
  else if (key == "layer_count") layer_count = static_cast<int>(ParseInt(key, value));
  else if (key == "head_count") head_count = static_cast<int>(ParseInt(key, value));
  else if (key == "ffn_dim") ffn_dim = static_cast<int>(ParseInt(key, value));
  else if (key == "max_frames") max_frames = static_cast<int>(ParseInt(key, value));
  else if (key == "seed") seed = static_cast<std::uint64_t>(ParseInt(key, value));
  else Fail(ErrorKind::kConfig, "unknown predictor config key '" + key + "'");
}

std::string Describe(const PredictorConfig &c) {
  std::ostringstream os;
  os << "input_dim=" << c.input_dim << " model_dim=" << c.model_dim
     << " layer_count=" << c.layer_count << " head_count=" << c.head_count
     << " ffn_dim=" << c.ffn_dim << " max_frames=" << c.max_frames << " seed=" << c.seed;
  return os.str();
}

}  // namespace modspec
