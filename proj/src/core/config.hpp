// License: Apache 2.0. See LICENSE file in root directory.
// Copyright(c) 2026 RidgeKit Contributors.

#pragma once

#include <string>

namespace ridgekit {

enum class ThetaMode { kLiteral, kNormalized };
enum class MatchRule { kAtLeast, kExact };  // matched-neighbor threshold: >= t or == t

/// Every pipeline tunable, with defaults. Serializes to flat key=value text;
/// unknown keys are rejected on load. The canonical serialization feeds the
/// fingerprint hash used to gate gallery/config compatibility.
struct Config {
  // segmentation / fields
  int block_size = 16;       // b, pixels
  double g_thresh = 0.05;    // mean-gradient foreground threshold
  int orient_window = 3;     // orientation smoothing window, blocks (odd)
  int segments = 4;          // S, x-signature segments per block window
  int trim = 1;              // values trimmed from each tail of segment freqs
  double f_min = 1.0 / 25.0; // cycles/px
  double f_max = 1.0 / 3.0;

  // enhancement
  int k_theta = 16;          // orientation bins in the Gabor bank
  double sigma_x = 4.0;      // Gaussian envelope std-dev, px
  double sigma_y = 4.0;
  int kernel_half_width = 11;  // h
  int passes = 1;            // Gabor enhancement passes
  int invert = 0;            // 1 = input has dark ridges; invert before processing

  // normalization
  double target_mean = 0.5;
  double target_var = 0.01;

  // minutiae
  double kappa_max = 0.5235987755982988;  // pi/6, curvature gate (rad)
  int window = 17;           // W, false-minutiae analysis window (odd, px)
  int d_min = 8;             // minimum minutiae separation, px
  int border = 8;            // exclusion distance from bad blocks, px
  int trace_len = 10;        // ridge walk length for direction, px

  // encoding / matching
  int neighbors = 9;         // n
  double rho_tol = 8.0;      // px
  double theta_tol = 0.2618; // rad
  double phi_tol = 0.2618;   // rad
  int matched_threshold = 5; // t
  ThetaMode mode = ThetaMode::kNormalized;
  MatchRule match_rule = MatchRule::kAtLeast;

  /// Set one field from its key string; throws DataError on unknown key,
  /// bad value, or a value outside the field's declared range.
  void set(const std::string& key, const std::string& value);
  std::string get(const std::string& key) const;

  /// Parse a key=value file ('#' comments and blank lines ignored).
  static Config load(const std::string& path);
  void save(const std::string& path) const;

  /// Canonical serialization: sorted key=value lines, full precision.
  std::string canonical() const;
  /// Hex FNV-1a hash of canonical(); embedded in output headers.
  std::string fingerprint() const;

  /// Validate cross-field invariants (ranges, parity, t <= n).
  void validate() const;
};

const char* theta_mode_name(ThetaMode m);
ThetaMode theta_mode_from_name(const std::string& s);

}  // namespace ridgekit
