// License: Apache 2.0. See LICENSE file in root directory.
// Copyright(c) 2026 RidgeKit Contributors.
//
// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// fails. Criterion 11 (full PolyU reproduction) runs only when the
// RIDGEKIT_POLYU_MANIFEST environment variable points at a manifest.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "core/common.hpp"
#include "core/config.hpp"
#include "core/dataset.hpp"
#include "core/encode.hpp"
#include "core/enhance.hpp"
#include "core/eval.hpp"
#include "core/image.hpp"
#include "core/match.hpp"
#include "core/minutiae.hpp"
#include "core/pipeline.hpp"
#include "core/ridgefield.hpp"
#include "core/synth.hpp"
#include "testutil.hpp"

using namespace ridgekit;
using ridgekit::kPi;

namespace {

int g_failures = 0;

void report(int criterion, bool pass, const std::string& what,
            const std::string& detail = "") {
  std::printf("[%s] C%-2d %s%s%s\n", pass ? "PASS" : "FAIL", criterion, what.c_str(),
              detail.empty() ? "" : " -- ", detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

void report_skip(int criterion, const std::string& what, const std::string& why) {
  std::printf("[SKIP] C%-2d %s -- %s\n", criterion, what.c_str(), why.c_str());
  std::fflush(stdout);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// --- C1: crossing-number oracle -------------------------------------------

void criterion_1() {
  auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  for (unsigned v = 0; v < 256 && ok; ++v) {
    std::array<bool, 8> n{};
    for (int i = 0; i < 8; ++i) n[i] = (v >> i) & 1u;
    int expected = 0;
    for (int i = 0; i < 8; ++i)
      if (!n[i] && n[(i + 1) % 8]) ++expected;
    ok = crossing_transitions(n) == expected;
  }
  double secs = seconds_since(t0);
  report(1, ok && secs < 1.0, "crossing-number matches the 8-cycle oracle on all 256",
         "elapsed " + std::to_string(secs) + " s");
}

// --- C2: Gabor kernel spot values ------------------------------------------

void criterion_2() {
  bool center_ok = true;
  for (double theta : {0.0, 0.7, 2.1})
    center_ok &= std::fabs(gabor_tap(theta, 0.125, 4.0, 4.0, 0.0, 0.0) - 1.0) < 1e-12;

  double spot = gabor_tap(0.0, 0.125, 4.0, 4.0, 4.0, 0.0);
  bool spot_ok = std::fabs(spot - (-0.60653)) <= 1e-5;

  bool sym_ok = true;
  GaborKernel k = gabor_kernel(0.9, 0.13, 4.0, 4.0, 11);
  for (int y = -11; y <= 11 && sym_ok; ++y)
    for (int x = -11; x <= 11 && sym_ok; ++x) sym_ok = k.tap(x, y) == k.tap(-x, -y);

  std::ostringstream detail;
  detail << "tap(4,0)=" << spot;
  report(2, center_ok && spot_ok && sym_ok, "Gabor kernel spot values and symmetry",
         detail.str());
}

// --- C3/C4: frequency and orientation recovery ------------------------------

void criteria_3_4() {
  auto t0 = std::chrono::steady_clock::now();
  bool freq_ok = true, orient_ok = true;
  std::ostringstream freq_detail, orient_detail;
  FrequencyParams params;
  for (double period : {6.0, 8.0, 10.0, 12.0}) {
    for (double deg : {0.0, 30.0, 60.0, 90.0}) {
      double theta = deg * kPi / 180.0;
      GrayImage img = testutil::make_stripes(160, 160, period, theta);
      RoiMask roi = segment_roi(img, 16, 0.05);
      OrientationField field = estimate_orientation(img, 16);
      FrequencyField freq = estimate_frequency(img, field, roi, params);
      for (int r = 1; r + 1 < freq.grid.rows; ++r) {
        for (int c = 1; c + 1 < freq.grid.cols; ++c) {
          if (!roi.fg(r, c)) continue;
          if (!freq.is_valid(r, c) ||
              std::fabs(freq.freq(r, c) - 1.0 / period) > 0.05 / period) {
            if (freq_ok)
              freq_detail << "period " << period << " deg " << deg << " block (" << r
                          << "," << c << ") freq " << freq.freq(r, c);
            freq_ok = false;
          }
          if (ang_dist_pi(field.angle(r, c), theta) > 0.05) {
            if (orient_ok)
              orient_detail << "period " << period << " deg " << deg << " block (" << r
                            << "," << c << ") angle " << field.angle(r, c);
            orient_ok = false;
          }
        }
      }
    }
  }
  double secs = seconds_since(t0);
  report(3, freq_ok && secs < 10.0,
         "frequency recovery within 5% on periods {6,8,10,12} x {0,30,60,90} deg",
         freq_ok ? "elapsed " + std::to_string(secs) + " s" : freq_detail.str());
  report(4, orient_ok, "orientation recovery within 0.05 rad on the same patterns",
         orient_detail.str());
}

// --- C5: thinning properties --------------------------------------------------

void criterion_5() {
  bool ok = true;
  std::string detail;
  for (std::uint64_t seed = 1; seed <= 50 && ok; ++seed) {
    BinaryImage blobs = testutil::make_blobs(seed, 96, 96, 6);
    Skeleton skel = thin(blobs);

    for (std::size_t i = 0; i < blobs.bits.size() && ok; ++i)
      if (skel.bits[i] && !blobs.bits[i]) {
        ok = false;
        detail = "skeleton not a subset (seed " + std::to_string(seed) + ")";
      }

    for (int y = 0; y + 1 < skel.height && ok; ++y)
      for (int x = 0; x + 1 < skel.width && ok; ++x)
        if (skel.get(x, y) && skel.get(x + 1, y) && skel.get(x, y + 1) &&
            skel.get(x + 1, y + 1)) {
          ok = false;
          detail = "2x2 square survived (seed " + std::to_string(seed) + ")";
        }

    if (ok && thin(skel).bits != skel.bits) {
      ok = false;
      detail = "not idempotent (seed " + std::to_string(seed) + ")";
    }

    if (ok) {
      auto before = testutil::component_sizes(blobs);
      auto after = testutil::component_sizes(skel);
      std::size_t big = 0;
      for (auto s : before) big += s > 4;
      if (big == before.size() && after.size() != before.size()) {
        ok = false;
        detail = "component count changed (seed " + std::to_string(seed) + ")";
      }
    }
  }
  report(5, ok, "thinning: subset, no 2x2, idempotent, components preserved on 50 blobs",
         detail);
}

// --- C6: encoding invariances ---------------------------------------------------

void criterion_6() {
  std::mt19937_64 rng(20260810);
  std::uniform_int_distribution<int> shift(-150, 150);
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  bool ok = true;
  std::string detail;

  for (int trial = 0; trial < 100 && ok; ++trial) {
    MinutiaList list = testutil::random_constellation(3000 + trial, 15);
    FingerCode lit = encode_fingerprint(list, 7, ThetaMode::kLiteral);
    FingerCode norm = encode_fingerprint(list, 7, ThetaMode::kNormalized);

    // Integer translation: identical finger-code, exactly.
    int dx = shift(rng), dy = shift(rng);
    MinutiaList moved = list;
    for (auto& m : moved.minutiae) {
      m.x += dx;
      m.y += dy;
    }
    FingerCode moved_lit = encode_fingerprint(moved, 7, ThetaMode::kLiteral);
    for (std::size_t i = 0; i < lit.size() && ok; ++i)
      for (std::size_t k = 0; k < lit.codes[i].features.size() && ok; ++k) {
        const auto& a = lit.codes[i].features[k];
        const auto& b = moved_lit.codes[i].features[k];
        if (a.rho != b.rho || a.theta != b.theta || a.phi != b.phi) {
          ok = false;
          detail = "translation changed a feature (trial " + std::to_string(trial) + ")";
        }
      }

    // Rotation about the origin.
    double alpha = angle(rng);
    MinutiaList rotated = list;
    for (auto& m : rotated.minutiae) {
      double x = m.x, y = m.y;
      m.x = std::cos(alpha) * x - std::sin(alpha) * y;
      m.y = std::sin(alpha) * x + std::cos(alpha) * y;
      m.theta = wrap_two_pi(m.theta + alpha);
    }
    FingerCode rot_norm = encode_fingerprint(rotated, 7, ThetaMode::kNormalized);
    FingerCode rot_lit = encode_fingerprint(rotated, 7, ThetaMode::kLiteral);
    for (std::size_t i = 0; i < norm.size() && ok; ++i)
      for (std::size_t k = 0; k < norm.codes[i].features.size() && ok; ++k) {
        const auto& a = norm.codes[i].features[k];
        const auto& b = rot_norm.codes[i].features[k];
        if (std::fabs(a.rho - b.rho) > 1e-9 || ang_dist_two_pi(a.theta, b.theta) > 1e-9 ||
            ang_dist_two_pi(a.phi, b.phi) > 1e-9) {
          ok = false;
          detail = "normalized mode not rotation-invariant (trial " +
                   std::to_string(trial) + ")";
        }
        const auto& la = lit.codes[i].features[k];
        const auto& lb = rot_lit.codes[i].features[k];
        if (std::fabs(la.rho - lb.rho) > 1e-9 || ang_dist_two_pi(la.phi, lb.phi) > 1e-9 ||
            ang_dist_two_pi(wrap_angle(la.theta + alpha), lb.theta) > 1e-9) {
          ok = false;
          detail = "literal mode rotation behavior broken (trial " +
                   std::to_string(trial) + ")";
        }
      }
  }
  report(6, ok, "encoding invariances on 100 random constellations", detail);
}

// --- C7: matching sanity ----------------------------------------------------------

void criterion_7() {
  std::mt19937_64 rng(777);
  std::uniform_real_distribution<double> small_angle(-kPi / 6.0, kPi / 6.0);
  std::uniform_int_distribution<int> shift(-60, 60);
  std::uniform_real_distribution<double> jit(-2.5, 2.5);
  std::uniform_real_distribution<double> ajit(-0.08, 0.08);
  bool ok = true;
  std::string detail;
  MatchParams p;

  for (int trial = 0; trial < 100 && ok; ++trial) {
    MinutiaList list = testutil::random_constellation(5000 + trial, 15, 10.0);
    FingerCode code = encode_fingerprint(list, 9, ThetaMode::kNormalized);
    MatchResult self = match_fingercodes(code, code, p);
    if (self.score != 1.0) {
      ok = false;
      detail = "self-match below 1.0 (trial " + std::to_string(trial) + ")";
      break;
    }

    double alpha = small_angle(rng);
    double dx = shift(rng), dy = shift(rng);
    MinutiaList moved = list;
    for (auto& m : moved.minutiae) {
      double x = m.x, y = m.y;
      m.x = std::cos(alpha) * x - std::sin(alpha) * y + dx;
      m.y = std::sin(alpha) * x + std::cos(alpha) * y + dy;
      m.theta = wrap_two_pi(m.theta + alpha);
    }
    FingerCode moved_code = encode_fingerprint(moved, 9, ThetaMode::kNormalized);
    if (match_fingercodes(code, moved_code, p).score != 1.0) {
      ok = false;
      detail = "rigid copy did not score 1.0 (trial " + std::to_string(trial) + ")";
      break;
    }
  }

  // Monotonicity in tolerances and threshold on jittered copies.
  for (int trial = 0; trial < 50 && ok; ++trial) {
    MinutiaList a = testutil::random_constellation(6000 + trial, 14);
    MinutiaList b = a;
    for (auto& m : b.minutiae) {
      m.x += jit(rng);
      m.y += jit(rng);
      m.theta = wrap_two_pi(m.theta + ajit(rng));
    }
    FingerCode ca = encode_fingerprint(a, 9, ThetaMode::kNormalized);
    FingerCode cb = encode_fingerprint(b, 9, ThetaMode::kNormalized);
    MatchParams base = p;
    base.t = 6;
    int ref = match_fingercodes(ca, cb, base).matched_pairs;
    MatchParams wide = base;
    wide.rho_tol *= 2.0;
    wide.theta_tol *= 1.5;
    wide.phi_tol *= 1.5;
    MatchParams low = base;
    low.t = 3;
    if (match_fingercodes(ca, cb, wide).matched_pairs < ref ||
        match_fingercodes(ca, cb, low).matched_pairs < ref) {
      ok = false;
      detail = "monotonicity violated (trial " + std::to_string(trial) + ")";
    }
  }
  report(7, ok, "matching sanity: self-match 1.0, rigid copies 1.0, monotone knobs",
         detail);
}

// --- C8: protocol counts -----------------------------------------------------------

void criterion_8() {
  std::vector<DatasetEntry> entries;
  for (int s = 0; s < 336; ++s)
    for (int k = 1; k <= 6; ++k) {
      DatasetEntry e;
      char buf[16];
      std::snprintf(buf, sizeof(buf), "s%03d", s);
      e.subject = buf;
      e.sample = k;
      e.path = "-";
      entries.push_back(e);
    }
  DatasetIndex idx = DatasetIndex::from_entries(std::move(entries));
  std::size_t genuine = genuine_pairs(idx).size();
  std::size_t impostor = impostor_pairs(idx).size();
  bool ok = genuine == 10080 && impostor == 56280 && genuine + impostor == 66360;
  std::ostringstream detail;
  detail << "genuine " << genuine << ", impostor " << impostor << ", total "
         << genuine + impostor;
  report(8, ok, "336x6 protocol yields 10,080 + 56,280 = 66,360 pairs", detail.str());
}

// --- C9: EER oracle -----------------------------------------------------------------

void criterion_9() {
  std::mt19937_64 rng(424242);
  bool ok = true;
  std::string detail;
  for (int trial = 0; trial < 200 && ok; ++trial) {
    double gap = 0.05 + 0.3 * (trial % 7) / 7.0;
    std::normal_distribution<double> gd(0.5 + gap, 0.12 + 0.05 * (trial % 3));
    std::normal_distribution<double> id(0.5 - gap, 0.12);
    std::vector<double> gen, imp;
    for (int i = 0; i < 250; ++i) gen.push_back(std::clamp(gd(rng), 0.0, 1.0));
    for (int i = 0; i < 350; ++i) imp.push_back(std::clamp(id(rng), 0.0, 1.0));

    EvalReport rep = compute_rates(gen, imp);
    for (std::size_t i = 1; i < rep.thresholds.size() && ok; ++i) {
      if (rep.fmr[i] > rep.fmr[i - 1] || rep.fnmr[i] < rep.fnmr[i - 1]) {
        ok = false;
        detail = "FMR/FNMR monotonicity violated (trial " + std::to_string(trial) + ")";
      }
    }

    double best_diff = 1e9, oracle = 0.0;
    for (int i = 0; i <= 10000; ++i) {
      double tau = i / 10000.0;
      double fmr = 0.0, fnmr = 0.0;
      for (double s : imp) fmr += s >= tau;
      for (double s : gen) fnmr += s < tau;
      fmr /= imp.size();
      fnmr /= gen.size();
      if (std::fabs(fmr - fnmr) < best_diff) {
        best_diff = std::fabs(fmr - fnmr);
        oracle = (fmr + fnmr) / 2.0;
      }
    }
    if (ok && std::fabs(rep.eer - oracle) > 0.005) {
      ok = false;
      std::ostringstream d;
      d << "trial " << trial << ": eer " << rep.eer << " vs oracle " << oracle;
      detail = d.str();
    }
  }
  report(9, ok, "EER matches the dense-grid oracle within 0.005 on 200 score sets",
         detail);
}

// --- C10: desk-scale end-to-end -------------------------------------------------------

void criterion_10() {
  auto t0 = std::chrono::steady_clock::now();
  const int fingers = 20, impressions = 4;
  Config cfg;

  std::vector<DatasetEntry> entries;
  std::vector<std::optional<FingerCode>> codes;
  std::mt19937_64 rng(8101);
  std::uniform_real_distribution<double> rot(-15.0 * kPi / 180.0, 15.0 * kPi / 180.0);
  std::uniform_real_distribution<double> shift(-8.0, 8.0);

  bool pipeline_ok = true;
  std::string detail;
  for (int f = 0; f < fingers && pipeline_ok; ++f) {
    SynthSpec spec = make_random_spec(9000 + f, 256, 256, 8.0, 8, 2, 0.02);
    for (int s = 0; s < impressions && pipeline_ok; ++s) {
      RigidTransform tf;
      if (s > 0) {
        tf.dx = shift(rng);
        tf.dy = shift(rng);
        tf.alpha = rot(rng);
      }
      SynthResult res = impression(spec, tf, 77000 + 10 * f + s);
      char subject[16];
      std::snprintf(subject, sizeof(subject), "f%03d", f);
      DatasetEntry e;
      e.subject = subject;
      e.sample = s + 1;
      e.path = "-";
      entries.push_back(e);
      try {
        codes.push_back(encode_fingerprint(run_extract(res.image, cfg, subject),
                                           cfg.neighbors, cfg.mode, subject,
                                           std::to_string(s + 1)));
      } catch (const std::exception& ex) {
        pipeline_ok = false;
        detail = std::string("pipeline failed: ") + ex.what();
      }
    }
  }
  if (!pipeline_ok) {
    report(10, false, "desk-scale end-to-end", detail);
    return;
  }

  DatasetIndex idx = DatasetIndex::from_entries(std::move(entries));
  MatchParams params = MatchParams::from_config(cfg);
  ProtocolResult proto = run_protocol(idx, codes, params, ProtocolOptions{});
  double eer = proto.report.eer;

  SweepGrid grid = sweep_grid(idx, codes, 1, 10, 1, 10, params, 2);
  bool diag_ok = true;
  std::ostringstream diag_detail;
  for (int n = 4; n <= 10 && diag_ok; ++n) {
    int half = (n + 1) / 2;
    auto at = [&](int t, int nn) {
      return grid.eer[static_cast<std::size_t>(t - 1) * grid.n_values.size() + (nn - 1)];
    };
    auto diag = at(n, n);
    auto mid = at(half, n);
    if (!diag || !mid || !(*diag > *mid)) {
      diag_ok = false;
      diag_detail << "n=" << n << ": EER(t=n)=" << (diag ? *diag : -1.0)
                  << " EER(t=ceil(n/2))=" << (mid ? *mid : -1.0);
    }
  }

  double secs = seconds_since(t0);
  std::ostringstream detail2;
  detail2 << "EER " << eer * 100.0 << "%, elapsed " << secs << " s";
  if (!diag_ok) detail2 << "; " << diag_detail.str();
  report(10, eer <= 0.10 && diag_ok && secs < 300.0,
         "20x4 synthetic protocol: EER <= 10% at (n=9,t=5) and diagonal degradation",
         detail2.str());
}

// --- C11: PolyU reproduction (conditional) ----------------------------------------------

void criterion_11() {
  const char* manifest = std::getenv("RIDGEKIT_POLYU_MANIFEST");
  if (!manifest || !*manifest) {
    report_skip(11, "PolyU reproduction at (n=9, t=5)",
                "RIDGEKIT_POLYU_MANIFEST not set; criteria 1-10 stand as the gate");
    return;
  }
  try {
    Config cfg;
    DatasetIndex idx = load_dataset(manifest);
    auto codes = encode_dataset(idx, cfg, 2, true);
    ProtocolResult proto =
        run_protocol(idx, codes, MatchParams::from_config(cfg), ProtocolOptions{2, false});
    double eer_pct = proto.report.eer * 100.0;
    std::ostringstream detail;
    detail << "EER " << eer_pct << "% vs paper 2.84% (tolerance 1.5)";
    report(11, std::fabs(eer_pct - 2.84) <= 1.5, "PolyU full-protocol reproduction",
           detail.str());
  } catch (const std::exception& ex) {
    report(11, false, "PolyU full-protocol reproduction", ex.what());
  }
}

// --- C12: throughput ---------------------------------------------------------------------

void criterion_12() {
  Config cfg;
  MatchParams params = MatchParams::from_config(cfg);
  std::vector<FingerCode> codes;
  for (int i = 0; i < 12; ++i)
    codes.push_back(
        encode_fingerprint(testutil::random_constellation(100 + i, 40, 9.0, 420.0), 9,
                           ThetaMode::kNormalized));
  std::vector<std::pair<const FingerCode*, const FingerCode*>> pairs;
  for (std::size_t i = 0; i < codes.size(); ++i)
    for (std::size_t j = 0; j < codes.size(); ++j) pairs.push_back({&codes[i], &codes[j]});
  double rate = measure_throughput(pairs, params);
  std::ostringstream detail;
  detail << rate << " matches/sec single-threaded (M=N=40, n=9)";
  report(12, rate >= 100.0, "matcher throughput at least 100 matches/sec", detail.str());
}

}  // namespace

int main() {
  std::printf("ridgekit acceptance suite\n");
  criterion_1();
  criterion_2();
  criteria_3_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  criterion_11();
  criterion_12();
  if (g_failures > 0) {
    std::printf("%d criterion(s) FAILED\n", g_failures);
    return 1;
  }
  std::printf("all criteria passed\n");
  return 0;
}
