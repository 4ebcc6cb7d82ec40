// License: Apache 2.0. See LICENSE file in root directory.
// Copyright(c) 2026 RidgeKit Contributors.

#include "core/enhance.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "core/common.hpp"

namespace ridgekit {

double gabor_tap(double theta, double freq, double sigma_x, double sigma_y, double x,
                 double y) {
  double xr = x * std::cos(theta) + y * std::sin(theta);
  double yr = -x * std::sin(theta) + y * std::cos(theta);
  return std::exp(-0.5 * (xr * xr / (sigma_x * sigma_x) + yr * yr / (sigma_y * sigma_y))) *
         std::cos(kTwoPi * freq * xr);
}

GaborKernel gabor_kernel(double theta, double freq, double sigma_x, double sigma_y,
                         int half_width) {
  if (freq <= 0.0 || freq >= 0.5)
    throw DataError("gabor_kernel: frequency must be in (0, 0.5)");
  if (sigma_x <= 0.0 || sigma_y <= 0.0)
    throw DataError("gabor_kernel: sigma must be > 0");
  if (half_width < 1) throw DataError("gabor_kernel: half_width must be >= 1");

  GaborKernel k;
  k.theta = theta;
  k.freq = freq;
  k.half_width = half_width;
  int side = 2 * half_width + 1;
  k.taps.assign(static_cast<std::size_t>(side) * side, 0.0);

  auto idx = [&](int x, int y) {
    return static_cast<std::size_t>(y + half_width) * side + (x + half_width);
  };
  // Fill one half and mirror so g(-x,-y) == g(x,y) holds bit-exactly.
  for (int y = -half_width; y <= half_width; ++y) {
    for (int x = -half_width; x <= half_width; ++x) {
      if (y > 0 || (y == 0 && x > 0)) continue;
      double v = gabor_tap(theta, freq, sigma_x, sigma_y, x, y);
      k.taps[idx(x, y)] = v;
      k.taps[idx(-x, -y)] = v;
    }
  }
  double mean = 0.0;
  for (double v : k.taps) mean += v;
  mean /= static_cast<double>(k.taps.size());
  for (double& v : k.taps) v -= mean;
  return k;
}

std::size_t GaborBank::select(double theta, double freq) const {
  std::size_t best_o = 0;
  double best_d = ang_dist_pi(theta, orientations[0]);
  for (std::size_t o = 1; o < orientations.size(); ++o) {
    double d = ang_dist_pi(theta, orientations[o]);
    if (d < best_d) {
      best_d = d;
      best_o = o;
    }
  }
  std::size_t best_f = 0;
  double best_fd = std::fabs(freq - frequencies[0]);
  for (std::size_t f = 1; f < frequencies.size(); ++f) {
    double d = std::fabs(freq - frequencies[f]);
    if (d < best_fd) {
      best_fd = d;
      best_f = f;
    }
  }
  return best_o * frequencies.size() + best_f;
}

GaborBank build_gabor_bank(const FrequencyField& freq, const BankParams& params) {
  if (params.k_theta < 4) throw DataError("build_gabor_bank: k_theta must be >= 4");

  std::set<long> bins;
  for (std::size_t i = 0; i < freq.freqs.size(); ++i) {
    if (!freq.valid[i]) continue;
    double f = std::clamp(std::round(freq.freqs[i] * 100.0) / 100.0,
                          params.f_min, params.f_max);
    bins.insert(std::lround(f * 1e6));
  }
  if (bins.empty()) throw PipelineError("build_gabor_bank: empty frequency list");

  GaborBank bank;
  bank.sigma_x = params.sigma_x;
  bank.sigma_y = params.sigma_y;
  bank.half_width = params.half_width;
  for (int k = 0; k < params.k_theta; ++k)
    bank.orientations.push_back(k * kPi / params.k_theta);
  for (long b : bins) bank.frequencies.push_back(static_cast<double>(b) / 1e6);

  bank.kernels.reserve(bank.orientations.size() * bank.frequencies.size());
  for (double theta : bank.orientations)
    for (double f : bank.frequencies) {
      // The bank label is the ridge orientation the kernel serves; the
      // cosine axis must run across those ridges.
      GaborKernel k = gabor_kernel(wrap_orientation(theta + kPi / 2.0), f,
                                   params.sigma_x, params.sigma_y, params.half_width);
      k.theta = theta;
      bank.kernels.push_back(std::move(k));
    }
  return bank;
}

GrayImage gabor_enhance(const GrayImage& img, const OrientationField& field,
                        const FrequencyField& freq, const RoiMask& roi,
                        const GaborBank& bank) {
  const BlockGrid& grid = roi.grid;
  if (field.grid.rows != grid.rows || field.grid.cols != grid.cols ||
      freq.grid.rows != grid.rows || freq.grid.cols != grid.cols)
    throw DataError("gabor_enhance: grids do not match");

  // Kernel choice is constant per block.
  std::vector<int> block_kernel(grid.cells(), -1);
  for (int r = 0; r < grid.rows; ++r)
    for (int c = 0; c < grid.cols; ++c)
      if (roi.fg(r, c))
        block_kernel[grid.index(r, c)] =
            static_cast<int>(bank.select(field.angle(r, c), freq.freq(r, c)));

  std::vector<double> response(img.pixels.size(), 0.0);
  double max_abs = 0.0;
  auto px = [&](int x, int y) {
    x = std::clamp(x, 0, img.width - 1);
    y = std::clamp(y, 0, img.height - 1);
    return img.at(x, y);
  };
  for (int y = 0; y < img.height; ++y) {
    for (int x = 0; x < img.width; ++x) {
      int ki = block_kernel[grid.index(grid.block_of_y(y), grid.block_of_x(x))];
      if (ki < 0) continue;
      const GaborKernel& k = bank.kernels[ki];
      double acc = 0.0;
      for (int dy = -k.half_width; dy <= k.half_width; ++dy)
        for (int dx = -k.half_width; dx <= k.half_width; ++dx)
          acc += px(x + dx, y + dy) * k.tap(dx, dy);
      response[static_cast<std::size_t>(y) * img.width + x] = acc;
      max_abs = std::max(max_abs, std::fabs(acc));
    }
  }

  GrayImage out(img.width, img.height, 0.5);
  if (max_abs <= 0.0) return out;
  for (int y = 0; y < img.height; ++y) {
    for (int x = 0; x < img.width; ++x) {
      if (!roi.fg_at_pixel(x, y)) continue;
      std::size_t i = static_cast<std::size_t>(y) * img.width + x;
      // Symmetric rescale: the zero-mean filter's zero level lands on 0.5.
      out.pixels[i] = 0.5 + response[i] / (2.0 * max_abs);
    }
  }
  return out;
}

BinaryImage binarize(const GrayImage& img, const RoiMask& roi) {
  BinaryImage out(img.width, img.height);
  for (int y = 0; y < img.height; ++y)
    for (int x = 0; x < img.width; ++x)
      if (roi.fg_at_pixel(x, y) && img.at(x, y) >= 0.5) out.set(x, y, true);
  return out;
}

namespace {

// Neighbors clockwise from north: p2..p9 in the usual thinning notation.
inline void neighbors8(const BinaryImage& im, int x, int y, int p[8]) {
  p[0] = im.get(x, y - 1);
  p[1] = im.get(x + 1, y - 1);
  p[2] = im.get(x + 1, y);
  p[3] = im.get(x + 1, y + 1);
  p[4] = im.get(x, y + 1);
  p[5] = im.get(x - 1, y + 1);
  p[6] = im.get(x - 1, y);
  p[7] = im.get(x - 1, y - 1);
}

// Label 8-connected foreground components (flood fill).
std::vector<int> label_components(const BinaryImage& im, int& count) {
  std::vector<int> label(im.bits.size(), -1);
  std::vector<std::pair<int, int>> stack;
  count = 0;
  for (int y = 0; y < im.height; ++y) {
    for (int x = 0; x < im.width; ++x) {
      std::size_t idx = static_cast<std::size_t>(y) * im.width + x;
      if (!im.bits[idx] || label[idx] >= 0) continue;
      int id = count++;
      label[idx] = id;
      stack.push_back({x, y});
      while (!stack.empty()) {
        auto [cx, cy] = stack.back();
        stack.pop_back();
        for (int dy = -1; dy <= 1; ++dy)
          for (int dx = -1; dx <= 1; ++dx) {
            int nx = cx + dx, ny = cy + dy;
            if (nx < 0 || ny < 0 || nx >= im.width || ny >= im.height) continue;
            std::size_t nidx = static_cast<std::size_t>(ny) * im.width + nx;
            if (!im.bits[nidx] || label[nidx] >= 0) continue;
            label[nidx] = id;
            stack.push_back({nx, ny});
          }
      }
    }
  }
  return label;
}

bool thinning_subpass(BinaryImage& im, int pass) {
  std::vector<std::pair<int, int>> kill;
  for (int y = 0; y < im.height; ++y) {
    for (int x = 0; x < im.width; ++x) {
      if (!im.get(x, y)) continue;
      int p[8];
      neighbors8(im, x, y, p);
      int b = 0;
      for (int i = 0; i < 8; ++i) b += p[i];
      if (b < 2 || b > 6) continue;
      int a = 0;
      for (int i = 0; i < 8; ++i)
        if (p[i] == 0 && p[(i + 1) % 8] == 1) ++a;
      if (a != 1) continue;
      int m1 = pass == 0 ? p[0] * p[2] * p[4] : p[0] * p[2] * p[6];
      int m2 = pass == 0 ? p[2] * p[4] * p[6] : p[0] * p[4] * p[6];
      if (m1 == 0 && m2 == 0) kill.emplace_back(x, y);
    }
  }
  if (kill.empty()) return false;

  // Parallel deletion may erase a small component outright (an isolated
  // 2x2 square dies in one subpass); spare the first-scan pixel of any
  // component the kill set would wipe out.
  int components = 0;
  std::vector<int> label = label_components(im, components);
  std::vector<int> survivors(components, 0);
  for (std::size_t i = 0; i < im.bits.size(); ++i)
    if (im.bits[i]) ++survivors[label[i]];
  for (auto [x, y] : kill) --survivors[label[static_cast<std::size_t>(y) * im.width + x]];

  bool changed = false;
  for (auto [x, y] : kill) {
    int id = label[static_cast<std::size_t>(y) * im.width + x];
    if (survivors[id] == 0) {
      ++survivors[id];  // spare this pixel
      continue;
    }
    im.set(x, y, false);
    changed = true;
  }
  return changed;
}

// Exact local test: deleting (x,y) preserves 8-connectivity iff its true
// neighbors form a single 8-connected component within the 3x3 ring.
bool simple_point(const BinaryImage& im, int x, int y) {
  static const int dx[8] = {0, 1, 1, 1, 0, -1, -1, -1};
  static const int dy[8] = {-1, -1, 0, 1, 1, 1, 0, -1};
  int p[8];
  neighbors8(im, x, y, p);
  int first = -1, total = 0;
  for (int i = 0; i < 8; ++i)
    if (p[i]) {
      total++;
      if (first < 0) first = i;
    }
  if (total < 2) return false;
  // Flood over the ring cells using spatial 8-adjacency.
  bool seen[8] = {};
  int stack[8], top = 0;
  stack[top++] = first;
  seen[first] = true;
  int reached = 1;
  while (top > 0) {
    int i = stack[--top];
    for (int j = 0; j < 8; ++j) {
      if (!p[j] || seen[j]) continue;
      if (std::abs(dx[i] - dx[j]) <= 1 && std::abs(dy[i] - dy[j]) <= 1) {
        seen[j] = true;
        stack[top++] = j;
        ++reached;
      }
    }
  }
  return reached == total;
}

// Deletes one corner of every fully-set 2x2 square, preferring corners
// whose removal keeps the neighborhood connected.
bool break_squares(BinaryImage& im) {
  bool changed = false;
  for (int y = 0; y + 1 < im.height; ++y) {
    for (int x = 0; x + 1 < im.width; ++x) {
      if (!(im.get(x, y) && im.get(x + 1, y) && im.get(x, y + 1) &&
            im.get(x + 1, y + 1)))
        continue;
      const int cx[4] = {x, x + 1, x, x + 1};
      const int cy[4] = {y, y, y + 1, y + 1};
      int pick = -1;
      for (int i = 0; i < 4; ++i)
        if (simple_point(im, cx[i], cy[i])) {
          pick = i;
          break;
        }
      if (pick < 0) {
        // No connectivity-safe corner; drop the one with fewest neighbors.
        int best = 9;
        for (int i = 0; i < 4; ++i) {
          int p[8], b = 0;
          neighbors8(im, cx[i], cy[i], p);
          for (int j = 0; j < 8; ++j) b += p[j];
          if (b < best) {
            best = b;
            pick = i;
          }
        }
      }
      im.set(cx[pick], cy[pick], false);
      changed = true;
    }
  }
  return changed;
}

}  // namespace

Skeleton thin(const BinaryImage& binary) {
  Skeleton skel = binary;
  // Iterate subpasses and the 2x2 cleanup to a joint fixed point so the
  // result is stable under a repeated call.
  while (true) {
    bool changed = false;
    while (true) {
      bool sub = thinning_subpass(skel, 0);
      sub |= thinning_subpass(skel, 1);
      if (!sub) break;
      changed = true;
    }
    changed |= break_squares(skel);
    if (!changed) break;
  }
  return skel;
}

}  // namespace ridgekit
