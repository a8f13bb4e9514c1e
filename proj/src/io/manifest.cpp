// io/manifest.cpp

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

#include "modspec/io/manifest.hpp"

#include <fnmatch.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>

#include <json.hpp>

#include "modspec/common.hpp"
#include "modspec/io/wav.hpp"

namespace fs = std::filesystem;

namespace modspec {

namespace {

// Relative paths in a list file are taken from the list file's directory,
// so a corpus directory can be moved or read from anywhere.
std::string ResolveFrom(const fs::path &list_dir, const std::string &entry) {
  const fs::path p(entry);
  if (p.is_absolute() || list_dir.empty()) return p.lexically_normal().string();
  return (list_dir / p).lexically_normal().string();
}

std::string RelativeTo(const fs::path &list_dir, const std::string &audio_path) {
  // Files under the list's directory are stored relative to it; anything
  // else keeps the path it was given.
  const fs::path base = fs::absolute(list_dir.empty() ? fs::path(".") : list_dir).lexically_normal();
  const fs::path rel = fs::absolute(audio_path).lexically_normal().lexically_relative(base);
  if (rel.empty() || *rel.begin() == "..") return audio_path;
  return rel.generic_string();
}

}  // namespace

void CorpusManifest::Validate() const {
  std::set<std::string> seen;
  for (const auto &e : entries) {
    if (!seen.insert(e.id).second) Fail(ErrorKind::kInput, "duplicate utterance id " + e.id);
    if (!(e.duration_s > 0.0))
      Fail(ErrorKind::kInput, "utterance " + e.id + " has non-positive duration");
  }
}

CorpusManifest ScanCorpus(const std::string &root, const std::string &pattern) {
  std::error_code ec;
  if (!fs::is_directory(root, ec)) Fail(ErrorKind::kIo, "cannot read directory " + root);

  CorpusManifest manifest;
  manifest.corpus_root = root;
  fs::recursive_directory_iterator it(root, fs::directory_options::follow_directory_symlink, ec);
  if (ec) Fail(ErrorKind::kIo, "cannot read directory " + root + ": " + ec.message());
  for (const auto &entry : it) {
    if (!entry.is_regular_file()) continue;
    const std::string name = entry.path().filename().string();
    if (fnmatch(pattern.c_str(), name.c_str(), 0) != 0) continue;
    fs::path rel = fs::relative(entry.path(), root);
    rel.replace_extension();
    ManifestEntry e;
    e.id = rel.generic_string();
    e.audio_path = entry.path().string();
    e.duration_s = ReadWavInfo(e.audio_path).duration_s();
    manifest.entries.push_back(std::move(e));
  }
  std::sort(manifest.entries.begin(), manifest.entries.end(),
            [](const ManifestEntry &a, const ManifestEntry &b) { return a.id < b.id; });
  return manifest;
}

void WriteManifest(const std::string &path, const CorpusManifest &manifest) {
  std::ofstream os(path);
  if (!os) Fail(ErrorKind::kIo, "cannot create " + path);
  const fs::path dir = fs::path(path).parent_path();
  for (const auto &e : manifest.entries) {
    nlohmann::json j = {{"id", e.id}, {"path", RelativeTo(dir, e.audio_path)}, {"duration_s", e.duration_s}};
    os << j.dump() << '\n';
  }
  if (!os) Fail(ErrorKind::kIo, "write failed for " + path);
}

CorpusManifest ReadManifest(const std::string &path) {
  std::ifstream is(path);
  if (!is) Fail(ErrorKind::kIo, "cannot open " + path);
  CorpusManifest manifest;
  manifest.corpus_root = fs::path(path).parent_path().string();
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      auto j = nlohmann::json::parse(line);
      ManifestEntry e;
      e.id = j.at("id").get<std::string>();
      e.audio_path = ResolveFrom(manifest.corpus_root, j.at("path").get<std::string>());
      e.duration_s = j.at("duration_s").get<double>();
      manifest.entries.push_back(std::move(e));
    } catch (const nlohmann::json::exception &ex) {
      Fail(ErrorKind::kFormat, path + ":" + std::to_string(lineno) + ": " + ex.what());
    }
  }
  manifest.Validate();
  return manifest;
}

std::vector<std::string> ReadPathList(const std::string &path) {
  std::ifstream is(path);
  if (!is) Fail(ErrorKind::kIo, "cannot open " + path);
  std::vector<std::string> out;
  std::string line;
  while (std::getline(is, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    out.push_back(ResolveFrom(fs::path(path).parent_path(), line));
  }
  return out;
}

std::vector<Utterance> LoadCorpus(const CorpusManifest &manifest) {
  std::vector<Utterance> out;
  out.reserve(manifest.entries.size());
  for (const auto &e : manifest.entries) out.push_back({e.id, ReadWav(e.audio_path)});
  return out;
}

}  // namespace modspec
