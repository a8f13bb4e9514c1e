// tools/make_toy_corpus.cpp

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

// Writes a synthetic speech-like corpus plus noise clips, with manifests:
//   make_toy_corpus <dir> [--utterances N] [--seconds S] [--seed K]
// produces <dir>/speech/*.wav, <dir>/noise/*.wav, <dir>/speech.jsonl and
// <dir>/noise.jsonl.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "modspec/common.hpp"
#include "modspec/io/manifest.hpp"
#include "modspec/io/wav.hpp"
#include "modspec/toy_speech.hpp"

int main(int argc, char **argv) {
  namespace fs = std::filesystem;
  std::string dir;
  int utterances = 20;
  double seconds = 8.0;
  std::uint64_t seed = 0;

  CLI::App app{"Generate a synthetic speech-like corpus"};
  app.add_option("dir", dir, "Output directory")->required();
  app.add_option("--utterances", utterances, "Number of utterances");
  app.add_option("--seconds", seconds, "Duration of each utterance");
  app.add_option("--seed", seed, "Seed");
  CLI11_PARSE(app, argc, argv);

  try {
    const fs::path root(dir);
    fs::create_directories(root / "speech");
    fs::create_directories(root / "noise");
    char name[64];
    for (int i = 0; i < utterances; ++i) {
      modspec::ToySpeechOptions o;
      o.duration_s = seconds;
      std::snprintf(name, sizeof name, "utt%05d.wav", i);
      modspec::WriteWav((root / "speech" / name).string(),
                        modspec::SynthesizeToySpeech(modspec::SplitSeed(seed, i), o));
    }
    const modspec::ToyNoiseKind kinds[] = {modspec::ToyNoiseKind::kWhite,
                                           modspec::ToyNoiseKind::kBrown,
                                           modspec::ToyNoiseKind::kHum};
    for (int k = 0; k < 3; ++k) {
      std::snprintf(name, sizeof name, "noise%d.wav", k);
      modspec::WriteWav((root / "noise" / name).string(),
                        modspec::SynthesizeToyNoise(kinds[k], 3.0, modspec::SplitSeed(seed ^ 0x5eed, k)));
    }
    modspec::WriteManifest((root / "speech.jsonl").string(),
                           modspec::ScanCorpus((root / "speech").string()));
    modspec::WriteManifest((root / "noise.jsonl").string(),
                           modspec::ScanCorpus((root / "noise").string()));
    std::cout << "wrote " << utterances << " utterances and 3 noise clips under " << dir << '\n';
  } catch (const std::exception &e) {
    std::cerr << "make_toy_corpus: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
