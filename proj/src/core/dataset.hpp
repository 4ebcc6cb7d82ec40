// License: Apache 2.0. See LICENSE file in root directory.
// Copyright(c) 2026 RidgeKit Contributors.

#pragma once

#include <map>
#include <string>
#include <vector>

namespace ridgekit {

struct DatasetEntry {
  std::string subject;
  int sample = 0;
  std::string path;  // resolved (manifest-relative) image path
};

/// Enumeration of a dataset's (subject, sample) pairs in deterministic
/// order: lexicographic subject id, then ascending sample number. Every
/// subject carries the same number of samples.
struct DatasetIndex {
  std::vector<DatasetEntry> entries;
  std::vector<std::string> subjects;  // distinct, sorted
  int samples_per_subject = 0;

  std::size_t size() const { return entries.size(); }

  /// Build from explicit entries (validates counts, duplicates, ordering).
  static DatasetIndex from_entries(std::vector<DatasetEntry> entries);
};

/// Parse a `#ridgekit-manifest v1` file. Lines are
/// `subject<TAB>sample<TAB>relative_path`; paths resolve against the
/// manifest's directory and must exist unless `check_files` is false.
DatasetIndex load_dataset(const std::string& manifest_path, bool check_files = true);

void write_manifest(const DatasetIndex& index, const std::string& path);

}  // namespace ridgekit
