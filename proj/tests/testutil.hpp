// License: Apache 2.0. See LICENSE file in root directory.
// Copyright(c) 2026 RidgeKit Contributors.
//
// Shared helpers for the test suites: synthetic pattern builders with known
// ground truth, tiny oracles, and filesystem scratch space.

#pragma once

#include <unistd.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "core/common.hpp"
#include "core/image.hpp"
#include "core/minutiae.hpp"

namespace testutil {

/// Scratch directory removed on destruction.
struct TempDir {
  std::filesystem::path path;

  TempDir() {
    auto base = std::filesystem::temp_directory_path();
    for (int i = 0; i < 10000; ++i) {
      auto candidate = base / ("ridgekit_test_" + std::to_string(::getpid()) + "_" +
                               std::to_string(i));
      std::error_code ec;
      if (std::filesystem::create_directory(candidate, ec)) {
        path = candidate;
        return;
      }
    }
    throw std::runtime_error("cannot create temp dir");
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path, ec);
  }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

/// Sinusoidal ridge pattern: ridges run along `ridge_theta`, intensity varies
/// along the normal. The ground-truth frequency is 1/period.
inline ridgekit::GrayImage make_stripes(int width, int height, double period,
                                        double ridge_theta, double amplitude = 0.35,
                                        double phase = 0.0) {
  ridgekit::GrayImage img(width, height);
  double nx = std::cos(ridge_theta + ridgekit::kPi / 2.0);
  double ny = std::sin(ridge_theta + ridgekit::kPi / 2.0);
  for (int y = 0; y < height; ++y)
    for (int x = 0; x < width; ++x)
      img.at(x, y) =
          0.5 + amplitude * std::cos(2.0 * ridgekit::kPi * (x * nx + y * ny) / period + phase);
  return img;
}

/// Pearson correlation between two pixel collections of equal length.
inline double pearson(const std::vector<double>& a, const std::vector<double>& b) {
  double ma = 0.0, mb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ma += a[i];
    mb += b[i];
  }
  ma /= a.size();
  mb /= b.size();
  double num = 0.0, da = 0.0, db = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num += (a[i] - ma) * (b[i] - mb);
    da += (a[i] - ma) * (a[i] - ma);
    db += (b[i] - mb) * (b[i] - mb);
  }
  return num / std::sqrt(da * db);
}

/// 8-connected foreground component sizes (flood fill oracle).
inline std::vector<std::size_t> component_sizes(const ridgekit::BinaryImage& img) {
  std::vector<int> label(img.bits.size(), -1);
  std::vector<std::size_t> sizes;
  std::vector<std::pair<int, int>> stack;
  for (int y = 0; y < img.height; ++y) {
    for (int x = 0; x < img.width; ++x) {
      std::size_t idx = static_cast<std::size_t>(y) * img.width + x;
      if (!img.bits[idx] || label[idx] >= 0) continue;
      int id = static_cast<int>(sizes.size());
      sizes.push_back(0);
      stack.push_back({x, y});
      label[idx] = id;
      while (!stack.empty()) {
        auto [cx, cy] = stack.back();
        stack.pop_back();
        ++sizes[id];
        for (int dy = -1; dy <= 1; ++dy)
          for (int dx = -1; dx <= 1; ++dx) {
            int nx2 = cx + dx, ny2 = cy + dy;
            if (nx2 < 0 || ny2 < 0 || nx2 >= img.width || ny2 >= img.height) continue;
            std::size_t nidx = static_cast<std::size_t>(ny2) * img.width + nx2;
            if (!img.bits[nidx] || label[nidx] >= 0) continue;
            label[nidx] = id;
            stack.push_back({nx2, ny2});
          }
      }
    }
  }
  return sizes;
}

/// Random blob image: union of random filled discs on a clear canvas.
inline ridgekit::BinaryImage make_blobs(std::uint64_t seed, int width = 96,
                                        int height = 96, int discs = 6) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ux(8.0, width - 9.0);
  std::uniform_real_distribution<double> uy(8.0, height - 9.0);
  std::uniform_real_distribution<double> ur(3.0, 11.0);
  ridgekit::BinaryImage img(width, height);
  for (int d = 0; d < discs; ++d) {
    double cx = ux(rng), cy = uy(rng), r = ur(rng);
    for (int y = 0; y < height; ++y)
      for (int x = 0; x < width; ++x)
        if ((x - cx) * (x - cx) + (y - cy) * (y - cy) <= r * r) img.set(x, y, true);
  }
  return img;
}

/// Random minutiae constellation on the integer grid with pairwise spacing.
inline ridgekit::MinutiaList random_constellation(std::uint64_t seed, int count,
                                                  double min_spacing = 10.0,
                                                  double extent = 300.0) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pos(0, static_cast<int>(extent));
  std::uniform_real_distribution<double> dir(0.0, 2.0 * ridgekit::kPi);
  std::bernoulli_distribution kind(0.3);
  ridgekit::MinutiaList list;
  int guard = 0;
  while (static_cast<int>(list.size()) < count && guard++ < 100000) {
    ridgekit::Minutia m;
    m.x = pos(rng);
    m.y = pos(rng);
    m.theta = dir(rng);
    m.kind = kind(rng) ? ridgekit::MinutiaKind::kBifurcation : ridgekit::MinutiaKind::kEnding;
    bool ok = true;
    for (const auto& other : list.minutiae)
      if (std::hypot(m.x - other.x, m.y - other.y) < min_spacing) {
        ok = false;
        break;
      }
    if (ok) list.minutiae.push_back(m);
  }
  return list;
}

}  // namespace testutil
