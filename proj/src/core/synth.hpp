// License: Apache 2.0. See LICENSE file in root directory.
// Copyright(c) 2026 RidgeKit Contributors.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "core/image.hpp"
#include "core/minutiae.hpp"

namespace ridgekit {

enum class FieldKind { kUniform, kWavy };

struct PlannedMinutia {
  double x = 0.0;
  double y = 0.0;
  double theta = 0.0;  // direction hint; snapped to the local ridge axis
  MinutiaKind kind = MinutiaKind::kEnding;
};

/// Recipe for a synthetic ridge pattern with known ground truth. The phase
/// field is analytic, so impressions resample it exactly under rigid motion.
struct SynthSpec {
  std::uint64_t seed = 1;
  int width = 256;
  int height = 256;
  double period = 8.0;          // ridge period, px
  FieldKind field = FieldKind::kUniform;
  double theta = 1.5707963267948966;  // ridge orientation of the uniform field
  double wave_amp = 0.1;        // wavy field: orientation wobble, rad
  double wave_lambda = 128.0;   // wavy field: wobble wavelength, px
  std::vector<PlannedMinutia> plan;  // uniform fields only
  double noise_sigma = 0.02;
  double amplitude = 0.35;      // ridge/valley contrast around mid-gray
  double margin = 24.0;         // keep-out border for planned minutiae, px
  int d_min = 8;                // plan spacing unit (pairwise >= 2*d_min)
};

struct RigidTransform {
  double dx = 0.0;
  double dy = 0.0;
  double alpha = 0.0;  // rotation about the image center, rad
};

struct SynthResult {
  GrayImage image;
  MinutiaList truth;
};

/// Render the pattern and its ground-truth minutiae (noise from spec.seed).
/// Throws DataError for an infeasible plan (spacing, margins, shared ridges,
/// or plans on a wavy field).
SynthResult generate(const SynthSpec& spec);

/// Rigidly transformed re-render with independent noise; ground truth is
/// transformed identically. Throws DataError when the transform pushes a
/// planned minutia out of frame.
SynthResult impression(const SynthSpec& spec, const RigidTransform& transform,
                       std::uint64_t noise_seed);

/// Deterministically place `endings` + `bifurcations` random minutiae for
/// the given canvas (all constraints satisfied by construction).
SynthSpec make_random_spec(std::uint64_t seed, int width, int height, double period,
                           int endings, int bifurcations, double noise_sigma);

/// key=value spec file: seed, width, height, period, theta, field,
/// wave_amp, wave_lambda, endings, bifurcations, noise_sigma, amplitude.
SynthSpec load_synth_spec(const std::string& path);

}  // namespace ridgekit
