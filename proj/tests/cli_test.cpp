// tests/cli_test.cpp

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

#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>

#include <gtest/gtest.h>

#include "modspec/cli/commands.hpp"
#include "modspec/io/feature_file.hpp"
#include "modspec/io/manifest.hpp"
#include "modspec/io/wav.hpp"
#include "modspec/predictor/checkpoint.hpp"
#include "modspec/toy_speech.hpp"

namespace modspec::cli {
namespace {

namespace fs = std::filesystem;

std::vector<char> Slurp(const fs::path &p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

std::size_t LineCount(const fs::path &p) {
  std::ifstream in(p);
  std::size_t n = 0;
  for (std::string line; std::getline(in, line);) ++n;
  return n;
}

// Small corpus on disk: `count` utterances of `seconds` plus one noise clip.
struct Corpus {
  fs::path dir;
  fs::path manifest;
  fs::path noise_list;
};

Corpus MakeCorpus(const std::string &name, int count, double seconds) {
  Corpus c;
  c.dir = fs::path(testing::TempDir()) / ("cli_" + name);
  fs::remove_all(c.dir);
  fs::create_directories(c.dir / "wav");
  ToySpeechOptions o;
  o.duration_s = seconds;
  for (int i = 0; i < count; ++i)
    WriteWav((c.dir / "wav" / ("u" + std::to_string(i) + ".wav")).string(), SynthesizeToySpeech(40 + i, o));
  WriteWav((c.dir / "hum.wav").string(), SynthesizeToyNoise(ToyNoiseKind::kHum, 1.0, 3));
  c.manifest = c.dir / "corpus.jsonl";
  WriteManifest(c.manifest.string(), ScanCorpus((c.dir / "wav").string()));
  c.noise_list = c.dir / "noise.txt";
  std::ofstream(c.noise_list) << "hum.wav\n";
  return c;
}

// ------------------------------------------------------------- extract

TEST(Extract, SingleWavWithMaskWritesTwoFiles) {
  const Corpus c = MakeCorpus("extract", 1, 3.0);
  const fs::path out = c.dir / "feats";
  std::ostringstream so, se;
  ExtractArgs a{(c.dir / "wav" / "u0.wav").string(), "2:8", 5, out.string()};
  ASSERT_EQ(CmdExtract(a, so, se), kExitOk) << se.str();
  EXPECT_TRUE(fs::exists(out / "u0.masked.fdlp"));
  EXPECT_TRUE(fs::exists(out / "u0.clean.fdlp"));
  EXPECT_EQ(std::distance(fs::directory_iterator(out), fs::directory_iterator()), 2);
  EXPECT_NE(so.str().find("windows=3"), std::string::npos) << so.str();

  const FdlpSpectrogram m = ReadFeatures((out / "u0.masked.fdlp").string());
  const FdlpSpectrogram cl = ReadFeatures((out / "u0.clean.fdlp").string());
  ASSERT_TRUE(m.masked_frame_range.has_value());
  EXPECT_EQ(m.frame_count(), 300);
  EXPECT_NE(m.frames, cl.frames);
  for (std::int64_t t = 0; t < m.frame_count(); ++t) {
    if (m.masked_frame_range->contains(t)) continue;
    EXPECT_EQ(m.frames.row(t), cl.frames.row(t)) << t;
  }
}

TEST(Extract, NoMaskGivesIdenticalOutputs) {
  const Corpus c = MakeCorpus("nomask", 1, 2.0);
  const fs::path out = c.dir / "feats";
  std::ostringstream so, se;
  ASSERT_EQ(CmdExtract({(c.dir / "wav" / "u0.wav").string(), std::nullopt, 0, out.string()}, so, se), kExitOk);
  EXPECT_EQ(Slurp(out / "u0.masked.fdlp"), Slurp(out / "u0.clean.fdlp"));
  EXPECT_FALSE(ReadFeatures((out / "u0.masked.fdlp").string()).masked_frame_range.has_value());
}

TEST(Extract, SameSeedSameWindow) {
  const Corpus c = MakeCorpus("seeded", 3, 6.0);
  std::string first;
  for (int run = 0; run < 2; ++run) {
    std::ostringstream so, se;
    const fs::path out = c.dir / ("run" + std::to_string(run));
    ASSERT_EQ(CmdExtract({c.manifest.string(), "2:8", 77, out.string()}, so, se), kExitOk) << se.str();
    if (run == 0) first = so.str();
    else EXPECT_EQ(so.str(), first);
    if (run == 1)
      for (int i = 0; i < 3; ++i) {
        const std::string n = "u" + std::to_string(i) + ".masked.fdlp";
        EXPECT_EQ(Slurp(out / n), Slurp(c.dir / "run0" / n));
      }
  }
  EXPECT_NE(first.find("masked_window="), std::string::npos);
}

TEST(Extract, BadInputsAreReportedAndTheBatchContinues) {
  const Corpus c = MakeCorpus("batch", 2, 2.0);
  std::ofstream(c.dir / "wav" / "u1.wav") << "garbage";
  std::ostringstream so, se;
  EXPECT_NE(CmdExtract({c.manifest.string(), "2:8", 0, (c.dir / "feats").string()}, so, se), kExitOk);
  EXPECT_NE(se.str().find("u1"), std::string::npos) << se.str();
  EXPECT_TRUE(fs::exists(c.dir / "feats" / "u0.clean.fdlp"));

  std::ostringstream so2, se2;
  EXPECT_EQ(CmdExtract({c.manifest.string(), "9:2", 0, (c.dir / "f2").string()}, so2, se2), kExitUsage);
}

// ------------------------------------------------------------- config

TEST(Config, ParseMask) {
  const MaskSpec m = ParseMask("2:8");
  EXPECT_EQ(m.lo_hz, 2.0);
  EXPECT_EQ(m.hi_hz, 8.0);
  const MaskSpec f = ParseMask("1.5:10.25");
  EXPECT_EQ(f.lo_hz, 1.5);
  EXPECT_EQ(f.hi_hz, 10.25);
  for (const char *bad : {"", "2", "2:", ":8", "a:b", "2:8:9", "8:2"}) {
    try {
      ParseMask(bad);
      ADD_FAILURE() << bad;
    } catch (const Error &e) {
      EXPECT_EQ(ExitCodeFor(e), kExitUsage) << bad;
    }
  }
}

TEST(Config, DefaultsThenFileThenOverrides) {
  const fs::path dir = fs::path(testing::TempDir()) / "cli_config";
  fs::create_directories(dir);
  std::ofstream(dir / "c.json") << R"({"preset": "toy", "layer_count": 3, "steps": 50, "lr": 0.002})";

  const RunConfig defaults = ResolveConfig(std::nullopt, {});
  EXPECT_EQ(defaults.model, PredictorConfig::Full());
  EXPECT_EQ(defaults.train.steps, TrainOptions{}.steps);

  const RunConfig file = ResolveConfig((dir / "c.json").string(), {});
  EXPECT_EQ(file.model.model_dim, PredictorConfig::Toy().model_dim);
  EXPECT_EQ(file.model.layer_count, 3);
  EXPECT_EQ(file.train.steps, 50);
  EXPECT_DOUBLE_EQ(file.train.adam.learning_rate, 0.002);

  const RunConfig over = ResolveConfig((dir / "c.json").string(), {"layer_count=4", "lr=0.01"});
  EXPECT_EQ(over.model.layer_count, 4);
  EXPECT_DOUBLE_EQ(over.train.adam.learning_rate, 0.01);
  EXPECT_EQ(over.train.steps, 50);

  EXPECT_THROW(ResolveConfig(std::nullopt, {"nonsense=1"}), Error);
  EXPECT_THROW(ResolveConfig(std::nullopt, {"no_equals"}), Error);
  EXPECT_THROW(ResolveConfig((dir / "absent.json").string(), {}), Error);
}

TEST(Config, ExitCodes) {
  EXPECT_EQ(ExitCodeFor(Error(ErrorKind::kNumerical, "x")), kExitDiverged);
  EXPECT_EQ(ExitCodeFor(Error(ErrorKind::kConfig, "x")), kExitUsage);
  EXPECT_EQ(ExitCodeFor(Error(ErrorKind::kIo, "x")), kExitUsage);
}

// ------------------------------------------------------------- train

TrainArgs ToyTrain(const Corpus &c, const std::string &out, std::int64_t steps) {
  TrainArgs a;
  a.manifest = c.manifest.string();
  a.overrides = {"preset=toy", "layer_count=2", "model_dim=16", "head_count=2", "ffn_dim=32"};
  a.noise_manifest = c.noise_list.string();
  a.steps = steps;
  a.out = out;
  a.seed = 9;
  return a;
}

TEST(Train, ZeroStepsWritesTheInitialization) {
  const Corpus c = MakeCorpus("train0", 2, 2.0);
  const fs::path ckpt = c.dir / "m.modp";
  std::ostringstream so, se;
  ASSERT_EQ(CmdTrain(ToyTrain(c, ckpt.string(), 0), so, se), kExitOk) << se.str();

  RunConfig rc = ResolveConfig(std::nullopt, ToyTrain(c, "", 0).overrides);
  rc.model.seed = SplitSeed(9, 0);
  EXPECT_EQ(Slurp(ckpt), EncodeCheckpoint(InitParams<float>(rc.model)));
  EXPECT_EQ(LineCount(ckpt.string() + ".metrics.csv"), 1u);
}

TEST(Train, ShortRunWritesOneMetricsRowPerStep) {
  const Corpus c = MakeCorpus("train", 3, 2.0);
  const fs::path ckpt = c.dir / "m.modp";
  TrainArgs a = ToyTrain(c, ckpt.string(), 12);
  a.metrics = (c.dir / "metrics.csv").string();
  std::ostringstream so, se;
  ASSERT_EQ(CmdTrain(a, so, se), kExitOk) << se.str();
  EXPECT_EQ(LineCount(c.dir / "metrics.csv"), 13u);
  EXPECT_NO_THROW(LoadCheckpoint(ckpt.string()));

  // Same seed, same bytes.
  a.out = (c.dir / "again.modp").string();
  a.metrics = (c.dir / "again.csv").string();
  std::ostringstream so2, se2;
  ASSERT_EQ(CmdTrain(a, so2, se2), kExitOk);
  EXPECT_EQ(Slurp(ckpt), Slurp(c.dir / "again.modp"));
  EXPECT_EQ(Slurp(c.dir / "metrics.csv"), Slurp(c.dir / "again.csv"));
}

TEST(Train, MissingNoiseListFailsBeforeTraining) {
  const Corpus c = MakeCorpus("nonoise", 1, 2.0);
  TrainArgs a = ToyTrain(c, (c.dir / "m.modp").string(), 5);
  a.noise_manifest.reset();
  std::ostringstream so, se;
  EXPECT_EQ(CmdTrain(a, so, se), kExitUsage);
  EXPECT_FALSE(fs::exists(c.dir / "m.modp"));
  EXPECT_EQ(so.str().find("step"), std::string::npos);

  a.noise_manifest = (c.dir / "absent.txt").string();
  std::ostringstream so2, se2;
  EXPECT_EQ(CmdTrain(a, so2, se2), kExitUsage);

  // Without augmentation no noise is needed.
  a.noise_manifest.reset();
  a.overrides.push_back("apply_probability=0");
  std::ostringstream so3, se3;
  EXPECT_EQ(CmdTrain(a, so3, se3), kExitOk) << se3.str();
}

TEST(Train, DivergenceExitsWithTwo) {
  const Corpus c = MakeCorpus("diverge", 2, 2.0);
  TrainArgs a = ToyTrain(c, (c.dir / "m.modp").string(), 20);
  a.overrides.push_back("lr=1e36");
  a.overrides.push_back("warmup_fraction=0");
  std::ostringstream so, se;
  EXPECT_EQ(CmdTrain(a, so, se), kExitDiverged);
  EXPECT_NE(se.str().find("diverged"), std::string::npos) << se.str();
  EXPECT_TRUE(fs::exists(c.dir / "m.modp"));
}

// ------------------------------------------------------------- probe, export

TEST(Probe, SingleUtteranceReport) {
  const Corpus c = MakeCorpus("probe", 2, 2.0);
  const fs::path ckpt = c.dir / "m.modp";
  std::ostringstream so, se;
  ASSERT_EQ(CmdTrain(ToyTrain(c, ckpt.string(), 0), so, se), kExitOk);

  ProbeArgs p;
  p.checkpoint = ckpt.string();
  p.manifest = c.manifest.string();
  p.utterances = 1;
  p.out_dir = (c.dir / "probe").string();
  std::ostringstream po, pe;
  ASSERT_EQ(CmdProbe(p, po, pe), kExitOk) << pe.str();
  EXPECT_NE(po.str().find("probe: 1 utterances, 2 layers"), std::string::npos) << po.str();
  EXPECT_EQ(LineCount(c.dir / "probe" / "layer_summary.csv"), 3u);
  EXPECT_EQ(LineCount(c.dir / "probe" / "layer_spectra.csv"), 1u + 103u);  // 0..20 Hz

  p.overrides = {"preset=toy"};
  std::ostringstream mo, me;
  EXPECT_EQ(CmdProbe(p, mo, me), kExitUsage);
  EXPECT_NE(me.str().find("shape"), std::string::npos) << me.str();
}

TEST(Export, ByteEqualityAndMismatch) {
  const Corpus c = MakeCorpus("export", 2, 2.0);
  const fs::path ckpt = c.dir / "m.modp";
  std::ostringstream so, se;
  ASSERT_EQ(CmdTrain(ToyTrain(c, ckpt.string(), 3), so, se), kExitOk);

  ExportArgs e{ckpt.string(), (c.dir / "enc.modp").string(), std::nullopt, {}};
  std::ostringstream eo, ee;
  ASSERT_EQ(CmdExport(e, eo, ee), kExitOk) << ee.str();
  EXPECT_EQ(Slurp(ckpt), Slurp(c.dir / "enc.modp"));

  e.out = (c.dir / "bad.modp").string();
  e.overrides = {"preset=toy", "layer_count=2", "model_dim=16", "head_count=2", "ffn_dim=64"};
  std::ostringstream bo, be;
  EXPECT_EQ(CmdExport(e, bo, be), kExitUsage);
  EXPECT_NE(be.str().find("ffn"), std::string::npos) << be.str();
  EXPECT_FALSE(fs::exists(c.dir / "bad.modp"));
}

TEST(Main, DispatchesAndRejectsUnknownCommands) {
  const Corpus c = MakeCorpus("main", 1, 2.0);
  const std::string wav = (c.dir / "wav" / "u0.wav").string();
  const std::string out = (c.dir / "feats").string();
  std::vector<std::string> args{"modspec", "extract", wav, "--mask", "2:8", "--out", out};
  std::vector<char *> argv;
  for (auto &s : args) argv.push_back(s.data());
  EXPECT_EQ(Main(static_cast<int>(argv.size()), argv.data()), kExitOk);
  EXPECT_TRUE(fs::exists(fs::path(out) / "u0.masked.fdlp"));

  std::vector<std::string> bad{"modspec", "frobnicate"};
  std::vector<char *> bargv;
  for (auto &s : bad) bargv.push_back(s.data());
  EXPECT_EQ(Main(static_cast<int>(bargv.size()), bargv.data()), kExitUsage);
}

}  // namespace
}  // namespace modspec::cli
