// License: Apache 2.0. See LICENSE file in root directory.
// Copyright(c) 2026 RidgeKit Contributors.

#include "core/eval.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>

#include "core/common.hpp"

namespace ridgekit {

PairList genuine_pairs(const DatasetIndex& index) {
  if (index.samples_per_subject < 2)
    throw DataError("genuine_pairs: need at least 2 samples per subject");
  PairList out;
  out.kind = PairKind::kGenuine;
  const int s = index.samples_per_subject;
  // Entries are sorted by (subject, sample); each subject occupies a
  // contiguous run of s entries. Each sample is matched against every
  // remaining sample of the same subject, so the list is ordered.
  for (std::size_t base = 0; base < index.entries.size(); base += s)
    for (int a = 0; a < s; ++a)
      for (int b = 0; b < s; ++b)
        if (a != b) out.pairs.emplace_back(base + a, base + b);
  return out;
}

PairList impostor_pairs(const DatasetIndex& index) {
  if (index.subjects.size() < 2) throw DataError("impostor_pairs: need at least 2 subjects");
  PairList out;
  out.kind = PairKind::kImpostor;
  const int s = index.samples_per_subject;
  const std::size_t subjects = index.subjects.size();
  for (std::size_t a = 0; a < subjects; ++a)
    for (std::size_t b = a + 1; b < subjects; ++b)
      out.pairs.emplace_back(a * s, b * s);
  return out;
}

EvalReport compute_rates(const std::vector<double>& genuine,
                         const std::vector<double>& impostor) {
  if (genuine.empty() || impostor.empty())
    throw DataError("compute_rates: empty score list");
  EvalReport rep;
  rep.genuine_scores = genuine;
  rep.impostor_scores = impostor;

  std::set<double> taus(genuine.begin(), genuine.end());
  taus.insert(impostor.begin(), impostor.end());
  taus.insert(0.0);
  taus.insert(1.0);

  std::vector<double> sorted_gen = genuine, sorted_imp = impostor;
  std::sort(sorted_gen.begin(), sorted_gen.end());
  std::sort(sorted_imp.begin(), sorted_imp.end());

  for (double tau : taus) {
    // FMR: impostors accepted (score >= tau); FNMR: genuines rejected (< tau).
    auto imp_ge = sorted_imp.end() -
                  std::lower_bound(sorted_imp.begin(), sorted_imp.end(), tau);
    auto gen_lt = std::lower_bound(sorted_gen.begin(), sorted_gen.end(), tau) -
                  sorted_gen.begin();
    rep.thresholds.push_back(tau);
    rep.fmr.push_back(static_cast<double>(imp_ge) / sorted_imp.size());
    rep.fnmr.push_back(static_cast<double>(gen_lt) / sorted_gen.size());
  }
  auto [eer, thr] = compute_eer(rep);
  rep.eer = eer;
  rep.eer_threshold = thr;
  return rep;
}

std::pair<double, double> compute_eer(const EvalReport& report) {
  const auto& tau = report.thresholds;
  const auto& fmr = report.fmr;
  const auto& fnmr = report.fnmr;
  if (tau.empty()) throw DataError("compute_eer: empty report");

  // Augment with a point just above the top threshold (reject everything)
  // so the FMR-FNMR difference always crosses zero.
  std::size_t k = tau.size();
  auto d = [&](std::size_t i) {
    if (i < k) return fmr[i] - fnmr[i];
    return -1.0;
  };
  auto fmr_at = [&](std::size_t i) { return i < k ? fmr[i] : 0.0; };
  auto fnmr_at = [&](std::size_t i) { return i < k ? fnmr[i] : 1.0; };
  auto tau_at = [&](std::size_t i) {
    return i < k ? tau[i] : std::nextafter(tau[k - 1], tau[k - 1] + 1.0);
  };

  for (std::size_t i = 0; i <= k; ++i) {
    if (d(i) == 0.0) return {fmr_at(i), tau_at(i)};
    if (i + 1 <= k && d(i) > 0.0 && d(i + 1) < 0.0) {
      if (d(i + 1) == 0.0) return {fmr_at(i + 1), tau_at(i + 1)};
      // Linear interpolation of both curves in threshold.
      double t0 = tau_at(i), t1 = tau_at(i + 1);
      double span = t1 - t0;
      if (span <= 0.0) return {(fmr_at(i + 1) + fnmr_at(i + 1)) / 2.0, t1};
      double slope_fmr = (fmr_at(i + 1) - fmr_at(i)) / span;
      double slope_fnmr = (fnmr_at(i + 1) - fnmr_at(i)) / span;
      double denom = slope_fmr - slope_fnmr;
      if (denom == 0.0) return {(fmr_at(i) + fnmr_at(i)) / 2.0, t0};
      double tc = t0 + (fnmr_at(i) - fmr_at(i)) / denom;
      tc = std::clamp(tc, t0, t1);
      double eer = fmr_at(i) + slope_fmr * (tc - t0);
      return {eer, tc};
    }
  }
  // No crossing (can only happen for degenerate inputs): take the point
  // minimizing |FMR - FNMR|.
  std::size_t best = 0;
  double best_d = std::fabs(d(0));
  for (std::size_t i = 1; i < k; ++i) {
    double dd = std::fabs(d(i));
    if (dd < best_d) {
      best_d = dd;
      best = i;
    }
  }
  return {(fmr[best] + fnmr[best]) / 2.0, tau[best]};
}

namespace {

std::string entry_id(const DatasetEntry& e) {
  return e.subject + ":" + std::to_string(e.sample);
}

const FingerCode& code_at(const std::vector<std::optional<FingerCode>>& codes,
                          std::size_t i, const DatasetIndex& index) {
  if (i >= codes.size() || !codes[i])
    throw PipelineError("no finger-code for entry " + entry_id(index.entries[i]));
  return *codes[i];
}

}  // namespace

ProtocolResult run_protocol(const DatasetIndex& index,
                            const std::vector<std::optional<FingerCode>>& codes,
                            const MatchParams& params, const ProtocolOptions& options) {
  PairList gen = genuine_pairs(index);
  PairList imp = impostor_pairs(index);

  ProtocolResult result;
  result.total_matches = gen.size() + imp.size();
  std::vector<MatchResult> gen_res(gen.size()), imp_res(imp.size());

  auto t0 = std::chrono::steady_clock::now();
  parallel_for(gen.size(), options.jobs, [&](std::size_t i) {
    const auto& [a, b] = gen.pairs[i];
    gen_res[i] = match_fingercodes(code_at(codes, a, index), code_at(codes, b, index),
                                   params);
  });
  parallel_for(imp.size(), options.jobs, [&](std::size_t i) {
    const auto& [a, b] = imp.pairs[i];
    imp_res[i] = match_fingercodes(code_at(codes, a, index), code_at(codes, b, index),
                                   params);
  });
  auto t1 = std::chrono::steady_clock::now();
  result.elapsed_seconds = std::chrono::duration<double>(t1 - t0).count();

  std::vector<double> gen_scores(gen.size()), imp_scores(imp.size());
  for (std::size_t i = 0; i < gen.size(); ++i) gen_scores[i] = gen_res[i].score;
  for (std::size_t i = 0; i < imp.size(); ++i) imp_scores[i] = imp_res[i].score;
  result.report = compute_rates(gen_scores, imp_scores);

  if (options.log_matches) {
    result.match_log.reserve(result.total_matches);
    auto log_line = [&](const std::pair<std::size_t, std::size_t>& pr,
                        const MatchResult& r) {
      char buf[160];
      std::snprintf(buf, sizeof(buf), "%s\t%s\t%.9g\t%d\t%d\t%d",
                    entry_id(index.entries[pr.first]).c_str(),
                    entry_id(index.entries[pr.second]).c_str(), r.score,
                    r.matched_pairs, r.candidate_count, r.template_count);
      result.match_log.emplace_back(buf);
    };
    for (std::size_t i = 0; i < gen.size(); ++i) log_line(gen.pairs[i], gen_res[i]);
    for (std::size_t i = 0; i < imp.size(); ++i) log_line(imp.pairs[i], imp_res[i]);
  }
  return result;
}

SweepGrid sweep_grid(const DatasetIndex& index,
                     const std::vector<std::optional<FingerCode>>& codes, int n_min,
                     int n_max, int t_min, int t_max, const MatchParams& params,
                     int jobs) {
  if (n_min < 1 || n_min > n_max || t_min < 1 || t_min > t_max)
    throw DataError("sweep_grid: bad n/t ranges");

  SweepGrid grid;
  for (int n = n_min; n <= n_max; ++n) grid.n_values.push_back(n);
  for (int t = t_min; t <= t_max; ++t) grid.t_values.push_back(t);
  grid.eer.assign(grid.n_values.size() * grid.t_values.size(), std::nullopt);

  PairList gen = genuine_pairs(index);
  PairList imp = impostor_pairs(index);

  for (std::size_t ni = 0; ni < grid.n_values.size(); ++ni) {
    int n = grid.n_values[ni];
    // Re-encode every sample at this n from the retained minutiae.
    std::vector<std::optional<FingerCode>> re(codes.size());
    bool encode_ok = true;
    for (std::size_t i = 0; i < codes.size(); ++i) {
      if (!codes[i]) continue;
      try {
        re[i] = encode_fingerprint(codes[i]->minutiae, n, params.mode,
                                   codes[i]->subject_id, codes[i]->sample_id);
      } catch (const std::exception&) {
        encode_ok = false;
      }
    }
    if (!encode_ok) continue;  // leave the whole n column absent

    // The count matrices do not depend on t; compute once per pair.
    std::vector<std::vector<int>> gen_counts(gen.size()), imp_counts(imp.size());
    std::vector<std::pair<int, int>> gen_dims(gen.size()), imp_dims(imp.size());
    bool match_ok = true;
    auto fill = [&](const PairList& pl, std::vector<std::vector<int>>& counts,
                    std::vector<std::pair<int, int>>& dims) {
      parallel_for(pl.size(), jobs, [&](std::size_t i) {
        const auto& [a, b] = pl.pairs[i];
        try {
          const FingerCode& ca = code_at(re, a, index);
          const FingerCode& cb = code_at(re, b, index);
          counts[i] = match_count_matrix(ca, cb, params);
          dims[i] = {static_cast<int>(ca.size()), static_cast<int>(cb.size())};
        } catch (const std::exception&) {
          dims[i] = {-1, -1};
        }
      });
    };
    fill(gen, gen_counts, gen_dims);
    fill(imp, imp_counts, imp_dims);
    for (const auto& d : gen_dims) match_ok &= d.first >= 0;
    for (const auto& d : imp_dims) match_ok &= d.first >= 0;
    if (!match_ok) continue;

    for (std::size_t ti = 0; ti < grid.t_values.size(); ++ti) {
      int t = grid.t_values[ti];
      if (t > n) continue;  // absent by construction
      MatchParams p = params;
      p.t = t;
      std::vector<double> gs(gen.size()), is(imp.size());
      for (std::size_t i = 0; i < gen.size(); ++i)
        gs[i] = match_from_counts(gen_counts[i], gen_dims[i].first, gen_dims[i].second, p)
                    .score;
      for (std::size_t i = 0; i < imp.size(); ++i)
        is[i] = match_from_counts(imp_counts[i], imp_dims[i].first, imp_dims[i].second, p)
                    .score;
      EvalReport rep = compute_rates(gs, is);
      grid.eer[ti * grid.n_values.size() + ni] = rep.eer;
    }
  }
  return grid;
}

double measure_throughput(
    const std::vector<std::pair<const FingerCode*, const FingerCode*>>& pairs,
    const MatchParams& params) {
  if (pairs.size() < 100)
    throw DataError("measure_throughput: need at least 100 pairs for stable timing");
  volatile double sink = 0.0;
  auto t0 = std::chrono::steady_clock::now();
  for (const auto& [a, b] : pairs) sink = match_fingercodes(*a, *b, params).score;
  auto t1 = std::chrono::steady_clock::now();
  (void)sink;
  double secs = std::chrono::duration<double>(t1 - t0).count();
  if (secs <= 0.0) secs = 1e-9;
  return static_cast<double>(pairs.size()) / secs;
}

void write_report_csv(const EvalReport& report, const std::string& path,
                      const std::string& comment) {
  std::ofstream out(path);
  if (!out) throw DataError(path + ": cannot open for writing");
  if (!comment.empty()) out << "# " << comment << "\n";
  out << "threshold,fmr,fnmr\n";
  for (std::size_t i = 0; i < report.thresholds.size(); ++i)
    out << format_g9(report.thresholds[i]) << ',' << format_g9(report.fmr[i]) << ','
        << format_g9(report.fnmr[i]) << '\n';
  out << "eer," << format_g9(report.eer) << ",threshold," << format_g9(report.eer_threshold)
      << '\n';
  if (!out) throw DataError(path + ": write failed");
}

void write_sweep_csv(const SweepGrid& grid, const std::string& path,
                     const std::string& comment) {
  std::ofstream out(path);
  if (!out) throw DataError(path + ": cannot open for writing");
  if (!comment.empty()) out << "# " << comment << "\n";
  out << "t";
  for (int n : grid.n_values) out << ",n=" << n;
  out << '\n';
  for (std::size_t ti = 0; ti < grid.t_values.size(); ++ti) {
    out << grid.t_values[ti];
    for (std::size_t ni = 0; ni < grid.n_values.size(); ++ni) {
      auto v = grid.cell(ti, ni);
      if (v)
        out << ',' << format_g9(*v * 100.0);
      else
        out << ",-";
    }
    out << '\n';
  }
  if (!out) throw DataError(path + ": write failed");
}

}  // namespace ridgekit
