// modspec/io/feature_file.hpp

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

// FDLP feature file, all fields little-endian:
//
//   "FDLP"            4 bytes
//   version           u16 (= 1)
//   band_count        u16
//   frame_count       u32
//   frame_rate_hz     f32
//   masked_start      i64 (-1 if no mask)
//   masked_end        i64 (-1 if no mask)
//   frames            frame_count * band_count f32, row-major

#ifndef MODSPEC_IO_FEATURE_FILE_HPP_
#define MODSPEC_IO_FEATURE_FILE_HPP_

#include <string>
#include <vector>

#include "modspec/dsp/spectrogram.hpp"

namespace modspec {

inline constexpr std::uint16_t kFeatureFormatVersion = 1;

std::vector<char> EncodeFeatures(const FdlpSpectrogram &spec);
/// Throws kFormat on bad magic, unknown version or truncation; never
/// returns partial data.
FdlpSpectrogram DecodeFeatures(const std::vector<char> &bytes,
                               const std::string &context = "features");

void WriteFeatures(const std::string &path, const FdlpSpectrogram &spec);
FdlpSpectrogram ReadFeatures(const std::string &path);

}  // namespace modspec

#endif  // MODSPEC_IO_FEATURE_FILE_HPP_
