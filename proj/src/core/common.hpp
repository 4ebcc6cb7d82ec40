// License: Apache 2.0. See LICENSE file in root directory.
// Copyright(c) 2026 RidgeKit Contributors.

#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace ridgekit {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Malformed or inconsistent input data (files, manifests, parameters).
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

/// A processing stage could not produce a usable result (empty ROI,
/// frequency estimation failed, too few minutiae, ...).
class PipelineError : public std::runtime_error {
 public:
  explicit PipelineError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Wrap an angle into (-pi, pi].
inline double wrap_angle(double a) {
  double r = std::fmod(a + kPi, kTwoPi);
  if (r <= 0.0) r += kTwoPi;
  return r - kPi;
}

/// Wrap an angle into [0, 2*pi).
inline double wrap_two_pi(double a) {
  double r = std::fmod(a, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  return r;
}

/// Wrap an undirected orientation into [0, pi).
inline double wrap_orientation(double a) {
  double r = std::fmod(a, kPi);
  if (r < 0.0) r += kPi;
  return r;
}

/// Minimal absolute distance between two angles on the full circle.
inline double ang_dist_two_pi(double a, double b) {
  return std::fabs(wrap_angle(a - b));
}

/// Minimal absolute distance between two orientations (mod pi).
inline double ang_dist_pi(double a, double b) {
  double d = std::fabs(std::fmod(a - b, kPi));
  if (d > kPi / 2.0) d = kPi - d;
  return d;
}

/// FNV-1a 64-bit hash, used for config fingerprints.
std::uint64_t fnv1a64(const std::string& bytes);

std::string trim(const std::string& s);
std::vector<std::string> split(const std::string& s, char sep);

/// Format a double with 9 significant digits (the on-disk text precision).
std::string format_g9(double v);

/// Run fn(i) for i in [0, n). With jobs > 1 the index range is split across
/// threads; callers must write results indexed by i so output is identical
/// to sequential execution.
void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& fn);

}  // namespace ridgekit
