// License: Apache 2.0. See LICENSE file in root directory.
// Copyright(c) 2026 RidgeKit Contributors.

#pragma once

#include <vector>

#include "core/image.hpp"
#include "core/ridgefield.hpp"

namespace ridgekit {

/// Square grid of filter taps for one (theta, freq) pair; side 2h+1.
/// Inside a bank, theta is the ridge orientation the kernel serves (its
/// cosine axis runs perpendicular, across those ridges).
struct GaborKernel {
  double theta = 0.0;
  double freq = 0.0;
  int half_width = 0;
  std::vector<double> taps;  // row-major, (2h+1)^2

  double tap(int x, int y) const {
    int side = 2 * half_width + 1;
    return taps[static_cast<std::size_t>(y + half_width) * side + (x + half_width)];
  }
};

struct GaborBank {
  std::vector<double> orientations;  // k*pi/K for k = 0..K-1
  std::vector<double> frequencies;   // distinct rounded block freqs, ascending
  double sigma_x = 0.0;
  double sigma_y = 0.0;
  int half_width = 0;
  std::vector<GaborKernel> kernels;  // indexed [o * frequencies.size() + f]

  const GaborKernel& kernel(std::size_t o, std::size_t f) const {
    return kernels[o * frequencies.size() + f];
  }
  /// Nearest-orientation (mod pi), then nearest-frequency selection; ties
  /// resolve to the lower index.
  std::size_t select(double theta, double freq) const;
};

/// Raw tap value (before DC removal): Gaussian envelope times cos along the
/// rotated x axis.
double gabor_tap(double theta, double freq, double sigma_x, double sigma_y, double x,
                 double y);

/// Even-symmetric Gabor tap grid: gabor_tap over [-h, h]^2 with the tap
/// mean subtracted so constant illumination contributes nothing.
GaborKernel gabor_kernel(double theta, double freq, double sigma_x, double sigma_y,
                         int half_width);

struct BankParams {
  int k_theta = 16;
  double sigma_x = 4.0;
  double sigma_y = 4.0;
  int half_width = 11;
  double f_min = 1.0 / 25.0;
  double f_max = 1.0 / 3.0;
};

/// One kernel per (orientation bin, distinct block frequency rounded to
/// 0.01 cycles/px and clamped to [f_min, f_max]).
GaborBank build_gabor_bank(const FrequencyField& freq, const BankParams& params);

/// Per-pixel contextual filtering: each foreground pixel is convolved with
/// the bank kernel nearest its block orientation/frequency; the response is
/// rescaled symmetrically about zero into [0,1] (zero level -> 0.5).
/// Background pixels are set to 0.5.
GrayImage gabor_enhance(const GrayImage& img, const OrientationField& field,
                        const FrequencyField& freq, const RoiMask& roi,
                        const GaborBank& bank);

/// Threshold the enhanced image at the 0.5 zero level inside the ROI.
BinaryImage binarize(const GrayImage& img, const RoiMask& roi);

/// Two-subpass neighborhood thinning to a one-pixel skeleton, iterated to a
/// fixed point; a final cleanup breaks any residual fully-set 2x2 square
/// while preserving local connectivity.
Skeleton thin(const BinaryImage& binary);

}  // namespace ridgekit
