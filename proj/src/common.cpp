// common.cpp

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

#include "modspec/common.hpp"

namespace modspec {

const char *ErrorKindName(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kConfig: return "config";
    case ErrorKind::kInput: return "input";
    case ErrorKind::kEmptyInput: return "empty-input";
    case ErrorKind::kSequence: return "sequence";
    case ErrorKind::kLength: return "length";
    case ErrorKind::kContract: return "contract";
    case ErrorKind::kNumerical: return "numerical";
    case ErrorKind::kTooShort: return "too-short";
    case ErrorKind::kFormat: return "format";
    case ErrorKind::kShape: return "shape";
    case ErrorKind::kIo: return "io";
  }
  return "unknown";
}

void Fail(ErrorKind kind, const std::string &what) {
  throw Error(kind, what);
}

std::uint64_t MixSeed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t SplitSeed(std::uint64_t parent, std::uint64_t stream) {
  return MixSeed(MixSeed(parent) ^ MixSeed(stream + 0x632be59bd9b4e019ULL));
}

std::uint64_t HashString(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace modspec
