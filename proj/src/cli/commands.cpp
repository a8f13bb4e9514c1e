// cli/commands.cpp

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

#include "modspec/cli/commands.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "modspec/common.hpp"
#include "modspec/io/feature_file.hpp"
#include "modspec/io/manifest.hpp"
#include "modspec/io/wav.hpp"
#include "modspec/predictor/checkpoint.hpp"
#include "modspec/probe.hpp"

namespace modspec::cli {

namespace fs = std::filesystem;

namespace {

double ParseDouble(const std::string &key, const std::string &value) {
  try {
    std::size_t used = 0;
    const double v = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception &) {
    Fail(ErrorKind::kConfig, "bad number for " + key + ": '" + value + "'");
  }
}

bool ParseBool(const std::string &key, const std::string &value) {
  if (value == "1" || value == "true") return true;
  if (value == "0" || value == "false") return false;
  Fail(ErrorKind::kConfig, "bad boolean for " + key + ": '" + value + "'");
}

bool IsManifestPath(const std::string &path) {
  return fs::path(path).extension() == ".jsonl";
}

std::vector<std::string> ReadNoiseList(const std::string &path) {
  if (IsManifestPath(path)) {
    std::vector<std::string> paths;
    for (const auto &e : ReadManifest(path).entries) paths.push_back(e.audio_path);
    return paths;
  }
  return ReadPathList(path);
}

// Runs job(i) for i in [0, n) on a small pool; each index is claimed once.
template <typename Job>
void ParallelFor(std::size_t n, Job &&job) {
  const int workers = WorkerCount(n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) job(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) job(i);
    });
  for (auto &t : pool) t.join();
}

std::string SafeFileStem(const std::string &id) {
  std::string s = id;
  std::replace(s.begin(), s.end(), '/', '_');
  return s;
}

}  // namespace

int ExitCodeFor(const Error &e) {
  return e.kind() == ErrorKind::kNumerical ? kExitDiverged : kExitUsage;
}

MaskSpec ParseMask(const std::string &text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos)
    Fail(ErrorKind::kConfig, "mask must look like lo:hi, got '" + text + "'");
  MaskSpec m;
  m.lo_hz = ParseDouble("mask", text.substr(0, colon));
  m.hi_hz = ParseDouble("mask", text.substr(colon + 1));
  m.Validate();
  return m;
}

int WorkerCount(std::size_t jobs) {
  long cap = static_cast<long>(std::max(1u, std::thread::hardware_concurrency()));
  if (const char *env = std::getenv("MODSPEC_THREADS")) {
    char *end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1) cap = v;
  }
  return static_cast<int>(std::max<long>(1, std::min<long>(cap, static_cast<long>(jobs))));
}

// ---------------------------------------------------------------- extract

int CmdExtract(const ExtractArgs &args, std::ostream &out, std::ostream &err) {
  std::optional<MaskSpec> mask;
  std::vector<ManifestEntry> items;
  try {
    if (args.mask) mask = ParseMask(*args.mask);
    if (IsManifestPath(args.input)) {
      items = ReadManifest(args.input).entries;
    } else {
      items.push_back({fs::path(args.input).stem().string(), args.input, 0.0});
    }
    fs::create_directories(args.out_dir);
  } catch (const Error &e) {
    err << "extract: " << e.what() << '\n';
    return ExitCodeFor(e);
  } catch (const fs::filesystem_error &e) {
    err << "extract: " << e.what() << '\n';
    return kExitUsage;
  }

  struct Outcome {
    std::string summary;
    std::string error;
    int code = kExitOk;
  };
  std::vector<Outcome> outcomes(items.size());
  ParallelFor(items.size(), [&](std::size_t i) {
    const ManifestEntry &item = items[i];
    Outcome &o = outcomes[i];
    try {
      const AudioBuffer audio = ReadWav(item.audio_path);
      const std::uint64_t seed = SplitSeed(args.seed, HashString(item.id));
      const FeaturePair pair = ExtractFeatures(audio, mask, seed);
      const fs::path base = fs::path(args.out_dir) / SafeFileStem(item.id);
      WriteFeatures(base.string() + ".masked.fdlp", pair.masked);
      WriteFeatures(base.string() + ".clean.fdlp", pair.clean);
      std::ostringstream os;
      os << item.id << ": windows=" << pair.window_count << " frames=" << pair.clean.frame_count()
         << " masked_window=" << pair.masked_window;
      if (pair.masked.masked_frame_range)
        os << " masked_frames=[" << pair.masked.masked_frame_range->start << ","
           << pair.masked.masked_frame_range->end << ")";
      o.summary = os.str();
    } catch (const Error &e) {
      o.error = item.id + ": " + e.what();
      o.code = ExitCodeFor(e);
    }
  });

  int code = kExitOk;
  for (const Outcome &o : outcomes) {
    if (o.code != kExitOk) {
      err << "extract: " << o.error << '\n';
      code = std::max(code, o.code);
    } else {
      out << o.summary << '\n';
    }
  }
  return code;
}

// ----------------------------------------------------------------- config

void RunConfig::Set(const std::string &key, const std::string &value) {
  AdamOptions &adam = train.adam;
  AugmentPolicy &aug = train.augment;
  if (key == "preset") {
    const std::uint64_t seed = model.seed;
    if (value == "toy") model = PredictorConfig::Toy();
    else if (value == "full") model = PredictorConfig::Full();
    else Fail(ErrorKind::kConfig, "unknown preset '" + value + "' (full or toy)");
    model.seed = seed;
  } else if (key == "seed") {
    model.Set(key, value);
    seed_set = true;
  } else if (key == "input_dim" || key == "model_dim" || key == "layer_count" ||
             key == "head_count" || key == "ffn_dim" || key == "max_frames") {
    model.Set(key, value);
  } else if (key == "steps") {
    train.steps = static_cast<std::int64_t>(ParseDouble(key, value));
  } else if (key == "lr") {
    adam.learning_rate = ParseDouble(key, value);
  } else if (key == "beta1") {
    adam.beta1 = ParseDouble(key, value);
  } else if (key == "beta2") {
    adam.beta2 = ParseDouble(key, value);
  } else if (key == "epsilon") {
    adam.epsilon = ParseDouble(key, value);
  } else if (key == "warmup_fraction") {
    adam.warmup_fraction = ParseDouble(key, value);
  } else if (key == "apply_probability") {
    aug.apply_probability = ParseDouble(key, value);
  } else if (key == "snr_lo_db") {
    aug.snr_lo_db = ParseDouble(key, value);
  } else if (key == "snr_hi_db") {
    aug.snr_hi_db = ParseDouble(key, value);
  } else if (key == "mask_lo_hz") {
    train.mask.lo_hz = ParseDouble(key, value);
  } else if (key == "mask_hi_hz") {
    train.mask.hi_hz = ParseDouble(key, value);
  } else if (key == "masked_only") {
    train.loss.masked_only = ParseBool(key, value);
  } else if (key == "clean_target") {
    train.clean_target = ParseBool(key, value);
  } else if (key == "checkpoint_every") {
    train.checkpoint_every = static_cast<std::int64_t>(ParseDouble(key, value));
  } else {
    Fail(ErrorKind::kConfig, "unknown setting '" + key + "'");
  }
}

void RunConfig::LoadFile(const std::string &json_path) {
  std::ifstream in(json_path);
  if (!in) Fail(ErrorKind::kConfig, "cannot open config " + json_path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception &e) {
    Fail(ErrorKind::kConfig, json_path + ": " + e.what());
  }
  if (!j.is_object()) Fail(ErrorKind::kConfig, json_path + ": top level must be an object");
  // The preset goes first so explicit fields in the same file win over it.
  if (j.contains("preset")) Set("preset", j["preset"].get<std::string>());
  for (const auto &[key, v] : j.items()) {
    if (key == "preset") continue;
    std::string text;
    if (v.is_string()) text = v.get<std::string>();
    else if (v.is_boolean()) text = v.get<bool>() ? "true" : "false";
    else if (v.is_number_integer()) text = std::to_string(v.get<long long>());
    else if (v.is_number()) text = v.dump();
    else Fail(ErrorKind::kConfig, json_path + ": value of '" + key + "' must be a scalar");
    Set(key, text);
  }
}

RunConfig ResolveConfig(const std::optional<std::string> &config_path,
                        const std::vector<std::string> &overrides) {
  RunConfig rc;
  if (config_path) rc.LoadFile(*config_path);
  for (const std::string &kv : overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0)
      Fail(ErrorKind::kConfig, "override must look like key=value, got '" + kv + "'");
    rc.Set(kv.substr(0, eq), kv.substr(eq + 1));
  }
  return rc;
}

// ------------------------------------------------------------------ train

int CmdTrain(const TrainArgs &args, std::ostream &out, std::ostream &err) {
  try {
    RunConfig rc = ResolveConfig(args.config_path, args.overrides);
    if (args.steps) rc.train.steps = *args.steps;
    if (!rc.seed_set) rc.model.seed = SplitSeed(args.seed, 0);
    rc.train.seed = SplitSeed(args.seed, 1);
    rc.train.checkpoint_path = args.out;
    if (args.noise_manifest) rc.train.augment.noise_manifest = ReadNoiseList(*args.noise_manifest);
    rc.model.Validate();
    rc.train.augment.Validate();  // fails fast on a missing noise list
    rc.train.mask.Validate();

    const CorpusManifest manifest = ReadManifest(args.manifest);
    if (manifest.entries.empty()) Fail(ErrorKind::kConfig, args.manifest + ": manifest is empty");
    const std::vector<Utterance> corpus = LoadCorpus(manifest);
    const NoiseBank noise = NoiseBank::Load(rc.train.augment.noise_manifest);

    out << "train: " << Describe(rc.model) << " steps=" << rc.train.steps
        << " utterances=" << corpus.size() << '\n';
    const int every = args.log_every;
    const TrainResult res = Train(corpus, rc.model, noise, rc.train, [&](const StepMetrics &m) {
      if (every > 0 && (m.step + 1) % every == 0)
        out << "step " << m.step + 1 << " loss " << m.loss << " lr " << m.lr << '\n';
    });
    WriteMetricsCsv(args.metrics.value_or(args.out + ".metrics.csv"), res.metrics);
    if (res.status == TrainStatus::kDiverged) {
      err << "train: diverged: " << res.message << " (checkpoint written to " << args.out
          << ")\n";
      return kExitDiverged;
    }
    ExportEncoder(res.state, args.out);
    out << "train: wrote " << args.out << " after " << res.state.step << " steps\n";
    return kExitOk;
  } catch (const Error &e) {
    err << "train: " << e.what() << '\n';
    return ExitCodeFor(e);
  }
}

// ------------------------------------------------------------------ probe

int CmdProbe(const ProbeArgs &args, std::ostream &out, std::ostream &err) {
  try {
    if (args.utterances < 1) Fail(ErrorKind::kConfig, "--utterances must be >= 1");
    std::optional<PredictorConfig> expected;
    if (args.config_path || !args.overrides.empty()) {
      expected = ResolveConfig(args.config_path, args.overrides).model;
    }
    const PredictorParams<float> params = LoadCheckpoint(args.checkpoint, expected);
    const CorpusManifest manifest = ReadManifest(args.manifest);
    if (manifest.entries.empty()) Fail(ErrorKind::kConfig, args.manifest + ": manifest is empty");

    std::vector<std::size_t> order(manifest.entries.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::mt19937_64 rng(SplitSeed(args.seed, 2));
    std::shuffle(order.begin(), order.end(), rng);
    order.resize(std::min<std::size_t>(order.size(), static_cast<std::size_t>(args.utterances)));
    std::sort(order.begin(), order.end());

    std::vector<AudioBuffer> audio;
    for (std::size_t i : order) audio.push_back(ReadWav(manifest.entries[i].audio_path));
    const LayerProbeReport rep = LayerModulationSpectra(CaptureTraces(params, audio));
    EmitReport(rep, args.out_dir);
    out << "probe: " << rep.utterance_count << " utterances, " << rep.layer_count()
        << " layers -> " << args.out_dir << '\n';
    for (int l = 0; l < rep.layer_count(); ++l)
      out << "  layer " << l + 1 << ": band_ratio_2_8=" << rep.band_ratio_2_8[l]
          << " peak_hz=" << rep.peak_hz[l] << '\n';
    return kExitOk;
  } catch (const Error &e) {
    err << "probe: " << e.what() << '\n';
    return ExitCodeFor(e);
  }
}

// ----------------------------------------------------------------- export

int CmdExport(const ExportArgs &args, std::ostream &out, std::ostream &err) {
  try {
    std::optional<PredictorConfig> expected;
    if (args.config_path || !args.overrides.empty())
      expected = ResolveConfig(args.config_path, args.overrides).model;
    TrainState st;
    st.params = LoadCheckpoint(args.checkpoint, expected);
    ExportEncoder(st, args.out);
    out << "export: " << Describe(st.params.config) << " -> " << args.out << '\n';
    return kExitOk;
  } catch (const Error &e) {
    err << "export: " << e.what() << '\n';
    return ExitCodeFor(e);
  }
}

// ------------------------------------------------------------------- scan

int CmdScan(const ScanArgs &args, std::ostream &out, std::ostream &err) {
  try {
    const CorpusManifest m = ScanCorpus(args.root, args.pattern);
    WriteManifest(args.out, m);
    double total = 0.0;
    for (const auto &e : m.entries) total += e.duration_s;
    out << "scan: " << m.entries.size() << " files, " << total << " s -> " << args.out << '\n';
    return kExitOk;
  } catch (const Error &e) {
    err << "scan: " << e.what() << '\n';
    return ExitCodeFor(e);
  }
}

// ------------------------------------------------------------------- main

int Main(int argc, char **argv) {
  CLI::App app{"modspec: modulation-domain masked prediction toolkit"};
  app.require_subcommand(1);

  ExtractArgs ex;
  auto *extract = app.add_subcommand("extract", "Compute masked and clean FDLP spectrograms");
  extract->add_option("input", ex.input, "WAV file or .jsonl manifest")->required();
  extract->add_option("--mask", ex.mask, "Modulation band to drop, lo:hi in Hz (e.g. 2:8)");
  extract->add_option("--seed", ex.seed, "Master seed (default 0)");
  extract->add_option("--out", ex.out_dir, "Output directory");

  TrainArgs tr;
  auto *train = app.add_subcommand("train", "Train the modulation predictor");
  train->add_option("manifest", tr.manifest, ".jsonl corpus manifest")->required();
  train->add_option("--config", tr.config_path, "JSON config file");
  train->add_option("--set", tr.overrides, "key=value override (repeatable)");
  train->add_option("--noise-manifest", tr.noise_manifest, "Noise clips (.jsonl or path list)");
  train->add_option("--steps", tr.steps, "Training steps");
  train->add_option("--out", tr.out, "Checkpoint path");
  train->add_option("--metrics", tr.metrics, "Metrics CSV (default <out>.metrics.csv)");
  train->add_option("--seed", tr.seed, "Master seed (default 0)");
  train->add_option("--log-every", tr.log_every, "Print the loss every N steps");

  ProbeArgs pr;
  auto *probe = app.add_subcommand("probe", "Layer-wise modulation spectra of a checkpoint");
  probe->add_option("checkpoint", pr.checkpoint, "MODP checkpoint")->required();
  probe->add_option("manifest", pr.manifest, ".jsonl manifest of probe audio")->required();
  probe->add_option("--utterances", pr.utterances, "Utterances to sample (default 50)");
  probe->add_option("--out", pr.out_dir, "Output directory");
  probe->add_option("--seed", pr.seed, "Sampling seed (default 0)");
  probe->add_option("--config", pr.config_path, "Expected config (JSON)");
  probe->add_option("--set", pr.overrides, "Expected config override key=value");

  ExportArgs xp;
  auto *exp = app.add_subcommand("export", "Write the encoder checkpoint");
  exp->add_option("checkpoint", xp.checkpoint, "MODP checkpoint")->required();
  exp->add_option("--out", xp.out, "Output path")->required();
  exp->add_option("--config", xp.config_path, "Expected config (JSON)");
  exp->add_option("--set", xp.overrides, "Expected config override key=value");

  ScanArgs sc;
  auto *scan = app.add_subcommand("scan", "Index a directory of WAV files");
  scan->add_option("root", sc.root, "Corpus root")->required();
  scan->add_option("--pattern", sc.pattern, "File name glob (default *.wav)");
  scan->add_option("--out", sc.out, "Manifest path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  if (*extract) return CmdExtract(ex, std::cout, std::cerr);
  if (*train) return CmdTrain(tr, std::cout, std::cerr);
  if (*probe) return CmdProbe(pr, std::cout, std::cerr);
  if (*exp) return CmdExport(xp, std::cout, std::cerr);
  if (*scan) return CmdScan(sc, std::cout, std::cerr);
  return kExitUsage;
}

}  // namespace modspec::cli
