// io/feature_file.cpp

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

#include "modspec/io/feature_file.hpp"

#include <fstream>
#include <iterator>

#include "modspec/common.hpp"
#include "modspec/io/binary.hpp"

namespace modspec {

std::vector<char> ReadFileBytes(const std::string &path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) Fail(ErrorKind::kIo, "cannot open " + path);
  return {std::istreambuf_iterator<char>(is), std::istreambuf_iterator<char>()};
}

void WriteFileBytes(const std::string &path, const std::vector<char> &bytes) {
  std::ofstream os(path, std::ios::binary);
  if (!os) Fail(ErrorKind::kIo, "cannot create " + path);
  os.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!os) Fail(ErrorKind::kIo, "write failed for " + path);
}

std::vector<char> EncodeFeatures(const FdlpSpectrogram &spec) {
  ByteWriter w;
  w.bytes("FDLP");
  w.u16(kFeatureFormatVersion);
  w.u16(static_cast<std::uint16_t>(spec.band_count()));
  w.u32(static_cast<std::uint32_t>(spec.frame_count()));
  w.f32(spec.frame_rate_hz);
  w.i64(spec.masked_frame_range ? spec.masked_frame_range->start : -1);
  w.i64(spec.masked_frame_range ? spec.masked_frame_range->end : -1);
  for (Eigen::Index t = 0; t < spec.frames.rows(); ++t)
    for (Eigen::Index b = 0; b < spec.frames.cols(); ++b) w.f32(spec.frames(t, b));
  return w.buffer();
}

FdlpSpectrogram DecodeFeatures(const std::vector<char> &bytes, const std::string &context) {
  ByteReader r(bytes, context);
  if (r.bytes(4) != "FDLP") Fail(ErrorKind::kFormat, context + ": bad magic, not an FDLP file");
  const std::uint16_t version = r.u16();
  if (version != kFeatureFormatVersion)
    Fail(ErrorKind::kFormat, context + ": unsupported FDLP version " + std::to_string(version));
  const std::uint16_t bands = r.u16();
  const std::uint32_t frames = r.u32();
  const float rate = r.f32();
  const std::int64_t mstart = r.i64();
  const std::int64_t mend = r.i64();
  const std::size_t payload = static_cast<std::size_t>(frames) * bands * 4;
  if (r.remaining() < payload) Fail(ErrorKind::kFormat, context + ": truncated file");
  if (r.remaining() > payload) Fail(ErrorKind::kFormat, context + ": trailing bytes");

  FdlpSpectrogram spec;
  spec.frame_rate_hz = rate;
  if (mstart >= 0 || mend >= 0) {
    if (mstart < 0 || mend < mstart || mend > static_cast<std::int64_t>(frames))
      Fail(ErrorKind::kFormat, context + ": invalid masked frame range");
    spec.masked_frame_range = FrameRange{mstart, mend};
  }
  spec.frames.resize(frames, bands);
  for (std::uint32_t t = 0; t < frames; ++t)
    for (std::uint16_t b = 0; b < bands; ++b) spec.frames(t, b) = r.f32();
  return spec;
}

void WriteFeatures(const std::string &path, const FdlpSpectrogram &spec) {
  WriteFileBytes(path, EncodeFeatures(spec));
}

FdlpSpectrogram ReadFeatures(const std::string &path) {
  return DecodeFeatures(ReadFileBytes(path), path);
}

}  // namespace modspec
