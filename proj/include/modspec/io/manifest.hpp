// modspec/io/manifest.hpp

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

#ifndef MODSPEC_IO_MANIFEST_HPP_
#define MODSPEC_IO_MANIFEST_HPP_

#include <string>
#include <vector>

#include "modspec/audio.hpp"

namespace modspec {

struct ManifestEntry {
  std::string id;
  std::string audio_path;
  double duration_s = 0.0;
};

/// JSON-lines corpus index: one {"id", "path", "duration_s"} object per line.
struct CorpusManifest {
  std::string corpus_root;
  std::vector<ManifestEntry> entries;

  /// Throws kInput on duplicate ids or non-positive durations.
  void Validate() const;
};

/// Recursively finds files under `root` whose name matches the glob
/// `pattern` and reads their durations from the WAV headers. Ids are the
/// paths relative to `root` without extension, so equal basenames in
/// different directories stay distinct. Entries are sorted by id.
CorpusManifest ScanCorpus(const std::string &root, const std::string &pattern = "*.wav");

/// Relative audio paths are written relative to the manifest's directory
/// and resolved against it again on read; absolute paths pass through.
void WriteManifest(const std::string &path, const CorpusManifest &manifest);
CorpusManifest ReadManifest(const std::string &path);

/// Newline-delimited list of paths; blank lines and '#' comments skipped.
/// Relative entries resolve against the list file's directory.
std::vector<std::string> ReadPathList(const std::string &path);

struct Utterance {
  std::string id;
  AudioBuffer audio;
};

std::vector<Utterance> LoadCorpus(const CorpusManifest &manifest);

}  // namespace modspec

#endif  // MODSPEC_IO_MANIFEST_HPP_
