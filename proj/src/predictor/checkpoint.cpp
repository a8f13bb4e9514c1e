// predictor/checkpoint.cpp

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

#include "modspec/predictor/checkpoint.hpp"

#include <map>
#include <sstream>

#include "modspec/common.hpp"
#include "modspec/io/binary.hpp"

namespace modspec {

namespace {

constexpr std::uint32_t kConfigFieldCount = 8;

std::string ShapeString(const std::vector<int> &dims) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < dims.size(); ++i) os << (i ? "," : "") << dims[i];
  os << ']';
  return os.str();
}

struct DirEntry {
  std::vector<int> dims;
  std::uint64_t offset = 0;
  std::size_t count() const {
    std::size_t n = 1;
    for (int d : dims) n *= static_cast<std::size_t>(d);
    return n;
  }
};

}  // namespace

std::vector<char> EncodeCheckpoint(const PredictorParams<float> &params) {
  const PredictorConfig &c = params.config;
  ByteWriter w;
  w.bytes("MODP");
  w.u16(kCheckpointVersion);
  w.u32(kConfigFieldCount);
  for (int v : {c.input_dim, c.model_dim, c.layer_count, c.head_count, c.ffn_dim, c.max_frames})
    w.u32(static_cast<std::uint32_t>(v));
  w.u32(static_cast<std::uint32_t>(c.seed & 0xffffffffu));
  w.u32(static_cast<std::uint32_t>(c.seed >> 32));

  std::uint32_t count = 0;
  params.ForEachTensor([&](const std::string &, const auto &) { ++count; });
  w.u32(count);
  std::uint64_t offset = 0;
  params.ForEachTensor([&](const std::string &name, const auto &t) {
    using T = std::remove_cvref_t<decltype(t)>;
    w.u16(static_cast<std::uint16_t>(name.size()));
    w.bytes(name);
    if constexpr (T::RowsAtCompileTime == 1) {
      w.u32(1);
      w.u32(static_cast<std::uint32_t>(t.cols()));
    } else {
      w.u32(2);
      w.u32(static_cast<std::uint32_t>(t.rows()));
      w.u32(static_cast<std::uint32_t>(t.cols()));
    }
    w.u64(offset);
    offset += static_cast<std::uint64_t>(t.size()) * 4;
  });
  params.ForEachTensor([&](const std::string &, const auto &t) {
    for (Eigen::Index i = 0; i < t.rows(); ++i)
      for (Eigen::Index j = 0; j < t.cols(); ++j) w.f32(t(i, j));
  });
  return w.buffer();
}

PredictorParams<float> DecodeCheckpoint(const std::vector<char> &bytes,
                                        const std::optional<PredictorConfig> &expected,
                                        const std::string &context) {
  ByteReader r(bytes, context);
  if (r.bytes(4) != "MODP") Fail(ErrorKind::kFormat, context + ": bad magic, not a MODP file");
  const std::uint16_t version = r.u16();
  if (version != kCheckpointVersion)
    Fail(ErrorKind::kFormat, context + ": unsupported MODP version " + std::to_string(version));
  const std::uint32_t fields = r.u32();
  if (fields != kConfigFieldCount)
    Fail(ErrorKind::kFormat, context + ": unexpected config field count " + std::to_string(fields));

  PredictorConfig cfg;
  cfg.input_dim = static_cast<int>(r.u32());
  cfg.model_dim = static_cast<int>(r.u32());
  cfg.layer_count = static_cast<int>(r.u32());
  cfg.head_count = static_cast<int>(r.u32());
  cfg.ffn_dim = static_cast<int>(r.u32());
  cfg.max_frames = static_cast<int>(r.u32());
  const std::uint64_t seed_lo = r.u32();
  const std::uint64_t seed_hi = r.u32();
  cfg.seed = seed_lo | (seed_hi << 32);

  std::map<std::string, DirEntry> dir;
  std::vector<std::string> order;
  const std::uint32_t count = r.u32();
  for (std::uint32_t i = 0; i < count; ++i) {
    const std::uint16_t len = r.u16();
    std::string name = r.bytes(len);
    DirEntry e;
    const std::uint32_t rank = r.u32();
    if (rank < 1 || rank > 2) Fail(ErrorKind::kFormat, context + ": tensor " + name + " has rank " + std::to_string(rank));
    for (std::uint32_t k = 0; k < rank; ++k) e.dims.push_back(static_cast<int>(r.u32()));
    e.offset = r.u64();
    if (!dir.emplace(name, e).second)
      Fail(ErrorKind::kFormat, context + ": duplicate tensor " + name);
    order.push_back(std::move(name));
  }
  const std::size_t data_start = r.position();

  if (expected) {
    for (const TensorShape &s : ExpectedShapes(*expected)) {
      auto it = dir.find(s.name);
      if (it == dir.end())
        Fail(ErrorKind::kShape, context + ": checkpoint has no tensor " + s.name);
      if (it->second.dims != s.dims)
        Fail(ErrorKind::kShape, context + ": shape mismatch for tensor " + s.name +
                                    ": expected " + ShapeString(s.dims) + ", checkpoint has " +
                                    ShapeString(it->second.dims));
    }
    if (dir.size() != ExpectedShapes(*expected).size())
      Fail(ErrorKind::kShape, context + ": checkpoint has " + std::to_string(dir.size()) +
                                  " tensors, config implies " +
                                  std::to_string(ExpectedShapes(*expected).size()));
    if (expected->head_count != cfg.head_count || expected->max_frames != cfg.max_frames)
      Fail(ErrorKind::kConfig, context + ": checkpoint config (" + Describe(cfg) +
                                   ") differs from the expected config (" +
                                   Describe(*expected) + ")");
  }
  cfg.Validate();

  // Every tensor must exist with the shape the header's own config implies.
  const auto shapes = ExpectedShapes(cfg);
  if (shapes.size() != dir.size())
    Fail(ErrorKind::kFormat, context + ": tensor directory does not match its config");
  for (const TensorShape &s : shapes) {
    auto it = dir.find(s.name);
    if (it == dir.end() || it->second.dims != s.dims)
      Fail(ErrorKind::kShape, context + ": tensor " + s.name + " does not match config shape " +
                                  ShapeString(s.dims));
  }

  PredictorParams<float> p;
  p.config = cfg;
  p.layers.resize(cfg.layer_count);
  p.ForEachTensor([&](const std::string &name, auto &t) {
    const DirEntry &e = dir.at(name);
    if (e.dims.size() == 1) t.resize(1, e.dims[0]);
    else t.resize(e.dims[0], e.dims[1]);
    r.seek(data_start + e.offset);
    for (Eigen::Index i = 0; i < t.rows(); ++i)
      for (Eigen::Index j = 0; j < t.cols(); ++j) t(i, j) = r.f32();
  });
  p.positional = SinusoidalPositions<float>(cfg.max_frames, cfg.model_dim);
  return p;
}

void SaveCheckpoint(const std::string &path, const PredictorParams<float> &params) {
  WriteFileBytes(path, EncodeCheckpoint(params));
}

PredictorParams<float> LoadCheckpoint(const std::string &path,
                                      const std::optional<PredictorConfig> &expected) {
  return DecodeCheckpoint(ReadFileBytes(path), expected, path);
}

}  // namespace modspec
