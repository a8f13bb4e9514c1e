// modspec/common.hpp

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

#ifndef MODSPEC_COMMON_HPP_
#define MODSPEC_COMMON_HPP_

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace modspec {

/// Broad failure categories. The CLI maps these onto exit codes.
enum class ErrorKind {
  kConfig,     // bad configuration or usage
  kInput,      // malformed or unsupported input data
  kEmptyInput,
  kSequence,   // missing or out-of-order blocks
  kLength,     // input longer than the model supports
  kContract,   // caller violated a documented precondition
  kNumerical,  // NaN / Inf or a numerically invalid state
  kTooShort,   // utterance cannot host a full window; callers skip it
  kFormat,     // bad magic, version or truncated file
  kShape,      // tensor shape mismatch on load
  kIo,
};

const char *ErrorKindName(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string &what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void Fail(ErrorKind kind, const std::string &what);

/// SplitMix64 finalizer; used to derive independent child seeds so that
/// every consumer of randomness gets its own reproducible stream.
std::uint64_t MixSeed(std::uint64_t x);

/// Child seed for stream `stream` of `parent`.
std::uint64_t SplitSeed(std::uint64_t parent, std::uint64_t stream);

/// FNV-1a hash of a string, for seeding by utterance id.
std::uint64_t HashString(std::string_view s);

}  // namespace modspec

#endif  // MODSPEC_COMMON_HPP_
