// License: Apache 2.0. See LICENSE file in root directory.
// Copyright(c) 2026 RidgeKit Contributors.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "core/dataset.hpp"
#include "core/match.hpp"

namespace ridgekit {

enum class PairKind { kGenuine, kImpostor };

/// Ordered comparison pairs; elements index DatasetIndex::entries.
struct PairList {
  PairKind kind = PairKind::kGenuine;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;

  std::size_t size() const { return pairs.size(); }
};

/// Every ordered within-subject sample pair (each sample against the
/// remaining samples of its subject): S * s(s-1) pairs. A 336x6 dataset
/// yields the protocol's 10,080 genuine experiments.
PairList genuine_pairs(const DatasetIndex& index);

/// First sample of every subject against every later subject's first
/// sample: S(S-1)/2 pairs.
PairList impostor_pairs(const DatasetIndex& index);

struct EvalReport {
  std::vector<double> genuine_scores;
  std::vector<double> impostor_scores;
  std::vector<double> thresholds;  // ascending
  std::vector<double> fmr;         // fraction of impostor scores >= tau
  std::vector<double> fnmr;        // fraction of genuine scores  <  tau
  double eer = 0.0;
  double eer_threshold = 0.0;
};

/// Thresholds are the distinct scores plus {0, 1}; acceptance is score >= tau.
EvalReport compute_rates(const std::vector<double>& genuine,
                         const std::vector<double>& impostor);

/// EER at the FMR/FNMR crossing: exact threshold when the curves meet there,
/// otherwise linear interpolation between the bracketing thresholds.
std::pair<double, double> compute_eer(const EvalReport& report);

/// Match every genuine and impostor pair; scores are stored in pair order so
/// parallel execution reproduces the sequential result. Entries without a
/// code (std::nullopt) raise PipelineError.
struct ProtocolOptions {
  int jobs = 1;
  bool log_matches = false;
};
struct ProtocolResult {
  EvalReport report;
  std::vector<std::string> match_log;  // candidate\ttemplate\tscore\tpairs\tM\tN
  double elapsed_seconds = 0.0;
  std::size_t total_matches = 0;
};
ProtocolResult run_protocol(const DatasetIndex& index,
                            const std::vector<std::optional<FingerCode>>& codes,
                            const MatchParams& params, const ProtocolOptions& options = {});

/// Table of EER values over (n, t) combinations; cells with t > n (or whose
/// pipeline failed) are absent. Codes are re-encoded per n from the minutiae
/// each FingerCode retains.
struct SweepGrid {
  std::vector<int> n_values;
  std::vector<int> t_values;
  std::vector<std::optional<double>> eer;  // row-major: [t_index][n_index]

  std::optional<double> cell(std::size_t ti, std::size_t ni) const {
    return eer[ti * n_values.size() + ni];
  }
};
SweepGrid sweep_grid(const DatasetIndex& index,
                     const std::vector<std::optional<FingerCode>>& codes, int n_min,
                     int n_max, int t_min, int t_max, const MatchParams& params,
                     int jobs = 1);

/// Single-threaded wall-clock matching rate over a batch of code pairs.
double measure_throughput(
    const std::vector<std::pair<const FingerCode*, const FingerCode*>>& pairs,
    const MatchParams& params);

/// `threshold,fmr,fnmr` rows followed by a `eer,<v>,threshold,<v>` summary.
void write_report_csv(const EvalReport& report, const std::string& path,
                      const std::string& comment = "");

/// Columns n, rows t, absent cells as '-'; values are EER percentages.
void write_sweep_csv(const SweepGrid& grid, const std::string& path,
                     const std::string& comment = "");

}  // namespace ridgekit
