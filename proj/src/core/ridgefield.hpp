// License: Apache 2.0. See LICENSE file in root directory.
// Copyright(c) 2026 RidgeKit Contributors.

#pragma once

#include <string>
#include <vector>

#include "core/image.hpp"

namespace ridgekit {

/// Common block-grid geometry: ceil(height/b) x ceil(width/b) cells of
/// b x b pixels (edge cells may be partial).
struct BlockGrid {
  int rows = 0;
  int cols = 0;
  int block = 0;  // b, pixels

  BlockGrid() = default;
  BlockGrid(int image_width, int image_height, int b)
      : rows((image_height + b - 1) / b), cols((image_width + b - 1) / b), block(b) {}

  std::size_t cells() const { return static_cast<std::size_t>(rows) * cols; }
  std::size_t index(int row, int col) const {
    return static_cast<std::size_t>(row) * cols + col;
  }
  bool in_grid(int row, int col) const {
    return row >= 0 && col >= 0 && row < rows && col < cols;
  }
  int block_of_x(int x) const { return x / block; }
  int block_of_y(int y) const { return y / block; }
};

struct RoiMask {
  BlockGrid grid;
  std::vector<std::uint8_t> foreground;

  bool fg(int row, int col) const {
    return grid.in_grid(row, col) && foreground[grid.index(row, col)] != 0;
  }
  bool fg_at_pixel(int x, int y) const {
    return fg(grid.block_of_y(y), grid.block_of_x(x));
  }
  std::size_t foreground_count() const;
};

/// Block-wise ridge angles in [0, pi), compared modulo pi.
struct OrientationField {
  BlockGrid grid;
  std::vector<double> angles;

  double angle(int row, int col) const { return angles[grid.index(row, col)]; }
};

/// Block-wise ridge frequencies (cycles/px). Invalid blocks carry 0 and are
/// excluded from filtering until interpolate_frequency fills them.
struct FrequencyField {
  BlockGrid grid;
  std::vector<double> freqs;
  std::vector<std::uint8_t> valid;

  double freq(int row, int col) const { return freqs[grid.index(row, col)]; }
  bool is_valid(int row, int col) const { return valid[grid.index(row, col)] != 0; }
};

/// Per-pixel 3x3 Sobel responses, normalized to approximate d/dx, d/dy.
struct GradientImage {
  int width = 0;
  int height = 0;
  std::vector<double> gx;
  std::vector<double> gy;
};

GradientImage sobel_gradients(const GrayImage& img);

/// Flag blocks whose mean gradient magnitude reaches g_thresh; isolated
/// foreground blocks (no foreground 4-neighbor) are demoted to background.
RoiMask segment_roi(const GrayImage& img, int block_size, double g_thresh);

/// Block orientation from the doubled-angle gradient average, rotated a
/// quarter turn so angles denote ridge (not gradient) direction.
OrientationField estimate_orientation(const GrayImage& img, int block_size);

/// Vector-average angles over a square window of blocks (odd size,
/// window=1 is the identity).
OrientationField smooth_orientation(const OrientationField& field, int window);

struct FrequencyParams {
  int segments = 4;
  int trim = 1;
  double f_min = 1.0 / 25.0;
  double f_max = 1.0 / 3.0;
};

/// Segment-wise x-signature frequency for each foreground block: an oriented
/// 2b x b window is rotated to make ridges vertical, split into `segments`
/// bands, and each band's projection peak train yields (P-1)/D; the block
/// value is the alpha-trimmed mean of the valid band frequencies.
FrequencyField estimate_frequency(const GrayImage& img, const OrientationField& field,
                                  const RoiMask& roi, const FrequencyParams& params);

/// Give every foreground block a frequency by averaging valid blocks within
/// an expanding square neighborhood. Throws PipelineError when no foreground
/// block is valid.
FrequencyField interpolate_frequency(const FrequencyField& field, const RoiMask& roi);

/// Debug dumps: '#' header with b and dims, then one text row per block row.
void save_orientation_grid(const OrientationField& field, const std::string& path,
                           const std::string& comment = "");
void save_frequency_grid(const FrequencyField& field, const std::string& path,
                         const std::string& comment = "");

}  // namespace ridgekit
