// modspec/cli/commands.hpp

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

// Subcommands of the `modspec` tool. Each returns a process exit code:
// 0 success, 1 usage or configuration error, 2 divergence or numerical
// failure.

#ifndef MODSPEC_CLI_COMMANDS_HPP_
#define MODSPEC_CLI_COMMANDS_HPP_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "modspec/common.hpp"
#include "modspec/dsp/modulation.hpp"
#include "modspec/predictor/train.hpp"

namespace modspec::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitDiverged = 2;

int ExitCodeFor(const Error &e);

/// Parses "lo:hi" in Hz.
MaskSpec ParseMask(const std::string &text);

/// Worker count for batch jobs: MODSPEC_THREADS if set, else the hardware
/// concurrency, never more than `jobs` and never below 1.
int WorkerCount(std::size_t jobs);

struct ExtractArgs {
  std::string input;  // .wav file or .jsonl manifest
  std::optional<std::string> mask;
  std::uint64_t seed = 0;
  std::string out_dir = ".";
};
int CmdExtract(const ExtractArgs &args, std::ostream &out, std::ostream &err);

/// Model and training settings after defaults < config file < overrides.
struct RunConfig {
  PredictorConfig model = PredictorConfig::Full();
  TrainOptions train;
  bool seed_set = false;  // config.seed given explicitly

  /// Applies one "key=value" setting. Model keys go to PredictorConfig;
  /// training keys are steps, lr, beta1, beta2, epsilon, warmup_fraction,
  /// apply_probability, snr_lo_db, snr_hi_db, mask_lo_hz, mask_hi_hz,
  /// masked_only, clean_target, checkpoint_every. "preset" takes full or toy.
  void Set(const std::string &key, const std::string &value);
  void LoadFile(const std::string &json_path);
};

/// Builds the RunConfig from an optional JSON file and key=value overrides.
RunConfig ResolveConfig(const std::optional<std::string> &config_path,
                        const std::vector<std::string> &overrides);

struct TrainArgs {
  std::string manifest;
  std::optional<std::string> config_path;
  std::vector<std::string> overrides;
  std::optional<std::string> noise_manifest;
  std::optional<std::int64_t> steps;
  std::string out = "model.modp";
  std::optional<std::string> metrics;  // defaults to <out>.metrics.csv
  std::uint64_t seed = 0;
  int log_every = 0;
};
int CmdTrain(const TrainArgs &args, std::ostream &out, std::ostream &err);

struct ProbeArgs {
  std::string checkpoint;
  std::string manifest;
  int utterances = 50;
  std::string out_dir = "probe";
  std::uint64_t seed = 0;
  std::optional<std::string> config_path;
  std::vector<std::string> overrides;
};
int CmdProbe(const ProbeArgs &args, std::ostream &out, std::ostream &err);

struct ExportArgs {
  std::string checkpoint;
  std::string out;
  std::optional<std::string> config_path;
  std::vector<std::string> overrides;
};
int CmdExport(const ExportArgs &args, std::ostream &out, std::ostream &err);

struct ScanArgs {
  std::string root;
  std::string pattern = "*.wav";
  std::string out = "manifest.jsonl";
};
int CmdScan(const ScanArgs &args, std::ostream &out, std::ostream &err);

/// Parses argv and dispatches to one subcommand.
int Main(int argc, char **argv);

}  // namespace modspec::cli

#endif  // MODSPEC_CLI_COMMANDS_HPP_
