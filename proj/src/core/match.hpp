// License: Apache 2.0. See LICENSE file in root directory.
// Copyright(c) 2026 RidgeKit Contributors.

#pragma once

#include <cstdint>

#include "core/config.hpp"
#include "core/encode.hpp"

namespace ridgekit {

struct MatchParams {
  double rho_tol = 8.0;
  double theta_tol = 0.2618;
  double phi_tol = 0.2618;
  int t = 5;  // matched-neighbor threshold
  ThetaMode mode = ThetaMode::kNormalized;
  MatchRule rule = MatchRule::kAtLeast;

  static MatchParams from_config(const Config& cfg) {
    MatchParams p;
    p.rho_tol = cfg.rho_tol;
    p.theta_tol = cfg.theta_tol;
    p.phi_tol = cfg.phi_tol;
    p.t = cfg.matched_threshold;
    p.mode = cfg.mode;
    p.rule = cfg.match_rule;
    return p;
  }
};

struct MatchResult {
  double score = 0.0;
  int matched_pairs = 0;
  int candidate_count = 0;  // M
  int template_count = 0;   // N
};

/// Counters for the complexity contract (feature comparisons per finger-code
/// pair must equal M*N*n_c*n_t).
struct MatchStats {
  std::uint64_t feature_comparisons = 0;
  std::uint64_t code_comparisons = 0;
};

/// All three tolerance tests pass (angles compared on the circle).
bool neighbor_feature_match(const NeighborFeature& a, const NeighborFeature& b,
                            const MatchParams& p);

/// Exhaustive n_c x n_t feature comparison followed by greedy one-to-one
/// assignment on ascending |delta rho|; returns the assigned-pair count.
int minutia_code_match(const MinutiaCode& candidate, const MinutiaCode& templ,
                       const MatchParams& p, MatchStats* stats = nullptr);

/// Exhaustive M x N minutia-code matching: pairs whose matched-neighbor
/// count passes the threshold rule are accepted greedily in descending
/// count; score = matched_pairs / max(M, N).
MatchResult match_fingercodes(const FingerCode& candidate, const FingerCode& templ,
                              const MatchParams& p, MatchStats* stats = nullptr);

/// The M x N matched-neighbor count matrix (candidate-major), before any
/// threshold is applied. Lets a parameter sweep reuse one matrix across
/// several t values.
std::vector<int> match_count_matrix(const FingerCode& candidate, const FingerCode& templ,
                                    const MatchParams& p, MatchStats* stats = nullptr);

/// Assignment and scoring given a precomputed count matrix.
MatchResult match_from_counts(const std::vector<int>& counts, int m, int n,
                              const MatchParams& p);

}  // namespace ridgekit
