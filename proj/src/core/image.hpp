// License: Apache 2.0. See LICENSE file in root directory.
// Copyright(c) 2026 RidgeKit Contributors.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ridgekit {

/// Grayscale raster with row-major pixels. File loaders produce intensities
/// in [0,1]; intermediate stages (normalization, filtering) may exceed that
/// range and are clamped again on write.
struct GrayImage {
  int width = 0;
  int height = 0;
  std::vector<double> pixels;

  GrayImage() = default;
  GrayImage(int w, int h, double fill = 0.0)
      : width(w), height(h), pixels(static_cast<std::size_t>(w) * h, fill) {}

  double& at(int x, int y) { return pixels[static_cast<std::size_t>(y) * width + x]; }
  double at(int x, int y) const { return pixels[static_cast<std::size_t>(y) * width + x]; }
  bool empty() const { return width <= 0 || height <= 0; }

  /// Bilinear sample with border clamping.
  double sample(double x, double y) const;
};

/// Boolean raster; true marks a ridge pixel.
struct BinaryImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> bits;

  BinaryImage() = default;
  BinaryImage(int w, int h)
      : width(w), height(h), bits(static_cast<std::size_t>(w) * h, 0) {}

  bool get(int x, int y) const {
    if (x < 0 || y < 0 || x >= width || y >= height) return false;
    return bits[static_cast<std::size_t>(y) * width + x] != 0;
  }
  void set(int x, int y, bool v) { bits[static_cast<std::size_t>(y) * width + x] = v ? 1 : 0; }
  std::size_t count() const;
};

/// One-pixel-wide ridge skeleton (same layout as BinaryImage).
using Skeleton = BinaryImage;

/// Load a grayscale raster: binary (P5) or ASCII (P2) PGM, or 8-bit
/// grayscale PNG. Intensities map linearly from [0, maxval] to [0, 1].
GrayImage load_image(const std::string& path);

/// Write as 8-bit binary PGM; values are clamped to [0,1] and quantized to
/// round(v*255). `comment` lines (if any) are emitted as '#' header lines.
void save_pgm(const GrayImage& img, const std::string& path,
              const std::string& comment = "");
void save_pgm(const BinaryImage& img, const std::string& path,
              const std::string& comment = "");

/// Shift and scale intensities to the target sample mean and (population)
/// variance. A constant input maps to a constant target_mean.
GrayImage normalize(const GrayImage& img, double target_mean, double target_var);

double image_mean(const GrayImage& img);
double image_variance(const GrayImage& img);

}  // namespace ridgekit
