// License: Apache 2.0. See LICENSE file in root directory.
// Copyright(c) 2026 RidgeKit Contributors.

#include "core/match.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "core/common.hpp"

namespace ridgekit {

bool neighbor_feature_match(const NeighborFeature& a, const NeighborFeature& b,
                            const MatchParams& p) {
  return std::fabs(a.rho - b.rho) <= p.rho_tol &&
         ang_dist_two_pi(a.theta, b.theta) <= p.theta_tol &&
         ang_dist_two_pi(a.phi, b.phi) <= p.phi_tol;
}

int minutia_code_match(const MinutiaCode& candidate, const MinutiaCode& templ,
                       const MatchParams& p, MatchStats* stats) {
  struct Hit {
    double drho;
    int ci;
    int ti;
  };
  std::vector<Hit> hits;
  for (int ci = 0; ci < static_cast<int>(candidate.features.size()); ++ci) {
    for (int ti = 0; ti < static_cast<int>(templ.features.size()); ++ti) {
      if (stats) ++stats->feature_comparisons;
      if (neighbor_feature_match(candidate.features[ci], templ.features[ti], p))
        hits.push_back({std::fabs(candidate.features[ci].rho - templ.features[ti].rho),
                        ci, ti});
    }
  }
  std::sort(hits.begin(), hits.end(), [](const Hit& a, const Hit& b) {
    if (a.drho != b.drho) return a.drho < b.drho;
    if (a.ci != b.ci) return a.ci < b.ci;
    return a.ti < b.ti;
  });
  std::vector<bool> c_used(candidate.features.size(), false);
  std::vector<bool> t_used(templ.features.size(), false);
  int count = 0;
  for (const Hit& h : hits) {
    if (c_used[h.ci] || t_used[h.ti]) continue;
    c_used[h.ci] = true;
    t_used[h.ti] = true;
    ++count;
  }
  return count;
}

std::vector<int> match_count_matrix(const FingerCode& candidate, const FingerCode& templ,
                                    const MatchParams& p, MatchStats* stats) {
  if (candidate.n != templ.n)
    throw DataError("incompatible codes: neighbor counts differ (" +
                    std::to_string(candidate.n) + " vs " + std::to_string(templ.n) + ")");
  if (candidate.mode != templ.mode)
    throw DataError("incompatible codes: theta modes differ");
  if (candidate.mode != p.mode)
    throw DataError("incompatible codes: params expect mode " +
                    std::string(theta_mode_name(p.mode)));

  const int m = static_cast<int>(candidate.size());
  const int n = static_cast<int>(templ.size());
  std::vector<int> counts(static_cast<std::size_t>(m) * n, 0);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) {
      if (stats) ++stats->code_comparisons;
      counts[static_cast<std::size_t>(i) * n + j] =
          minutia_code_match(candidate.codes[i], templ.codes[j], p, stats);
    }
  return counts;
}

MatchResult match_from_counts(const std::vector<int>& counts, int m, int n,
                              const MatchParams& p) {
  MatchResult res;
  res.candidate_count = m;
  res.template_count = n;
  if (m == 0 || n == 0) return res;

  struct Pair {
    int count;
    int i;
    int j;
  };
  std::vector<Pair> eligible;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) {
      int c = counts[static_cast<std::size_t>(i) * n + j];
      bool ok = p.rule == MatchRule::kAtLeast ? c >= p.t : c == p.t;
      if (ok) eligible.push_back({c, i, j});
    }
  std::sort(eligible.begin(), eligible.end(), [](const Pair& a, const Pair& b) {
    if (a.count != b.count) return a.count > b.count;
    if (a.i != b.i) return a.i < b.i;
    return a.j < b.j;
  });
  std::vector<bool> c_used(m, false), t_used(n, false);
  for (const Pair& e : eligible) {
    if (c_used[e.i] || t_used[e.j]) continue;
    c_used[e.i] = true;
    t_used[e.j] = true;
    ++res.matched_pairs;
  }
  res.score = static_cast<double>(res.matched_pairs) / std::max(m, n);
  return res;
}

MatchResult match_fingercodes(const FingerCode& candidate, const FingerCode& templ,
                              const MatchParams& p, MatchStats* stats) {
  std::vector<int> counts = match_count_matrix(candidate, templ, p, stats);
  return match_from_counts(counts, static_cast<int>(candidate.size()),
                           static_cast<int>(templ.size()), p);
}

}  // namespace ridgekit
