// License: Apache 2.0. See LICENSE file in root directory.
// Copyright(c) 2026 RidgeKit Contributors.

#include "core/dataset.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>

#include "core/common.hpp"

namespace fs = std::filesystem;

namespace ridgekit {

DatasetIndex DatasetIndex::from_entries(std::vector<DatasetEntry> entries) {
  if (entries.empty()) throw DataError("dataset: no entries");
  std::sort(entries.begin(), entries.end(), [](const DatasetEntry& a, const DatasetEntry& b) {
    if (a.subject != b.subject) return a.subject < b.subject;
    return a.sample < b.sample;
  });

  DatasetIndex idx;
  std::set<std::pair<std::string, int>> seen;
  std::map<std::string, int> counts;
  for (const auto& e : entries) {
    if (!seen.insert({e.subject, e.sample}).second)
      throw DataError("dataset: duplicate entry " + e.subject + " sample " +
                      std::to_string(e.sample));
    counts[e.subject]++;
  }
  int expect = counts.begin()->second;
  for (const auto& [subj, c] : counts) {
    if (c != expect)
      throw DataError("dataset: subject " + subj + " has " + std::to_string(c) +
                      " samples, expected " + std::to_string(expect));
    idx.subjects.push_back(subj);
  }
  idx.samples_per_subject = expect;
  idx.entries = std::move(entries);
  return idx;
}

DatasetIndex load_dataset(const std::string& manifest_path, bool check_files) {
  std::ifstream in(manifest_path);
  if (!in) throw DataError(manifest_path + ": cannot open manifest");
  std::string line;
  if (!std::getline(in, line) || trim(line) != "#ridgekit-manifest v1")
    throw DataError(manifest_path + ": missing '#ridgekit-manifest v1' header");

  fs::path base = fs::path(manifest_path).parent_path();
  std::vector<DatasetEntry> entries;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    auto fields = split(line, '\t');
    if (fields.size() != 3)
      throw DataError(manifest_path + ":" + std::to_string(lineno) +
                      ": expected subject<TAB>sample<TAB>path");
    DatasetEntry e;
    e.subject = trim(fields[0]);
    try {
      e.sample = std::stoi(trim(fields[1]));
    } catch (const std::exception&) {
      throw DataError(manifest_path + ":" + std::to_string(lineno) + ": bad sample number");
    }
    fs::path p = fs::path(trim(fields[2]));
    if (p.is_relative()) p = base / p;
    e.path = p.string();
    if (check_files && !fs::exists(e.path))
      throw DataError(manifest_path + ":" + std::to_string(lineno) +
                      ": referenced file missing: " + e.path);
    entries.push_back(std::move(e));
  }
  return DatasetIndex::from_entries(std::move(entries));
}

void write_manifest(const DatasetIndex& index, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DataError(path + ": cannot open for writing");
  out << "#ridgekit-manifest v1\n";
  fs::path base = fs::path(path).parent_path();
  for (const auto& e : index.entries) {
    fs::path p(e.path);
    std::string rel = p.lexically_proximate(base).string();
    out << e.subject << '\t' << e.sample << '\t' << rel << '\n';
  }
  if (!out) throw DataError(path + ": write failed");
}

}  // namespace ridgekit
