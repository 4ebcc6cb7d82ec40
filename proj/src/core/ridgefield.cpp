// License: Apache 2.0. See LICENSE file in root directory.
// Copyright(c) 2026 RidgeKit Contributors.

#include "core/ridgefield.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "core/common.hpp"

namespace ridgekit {

std::size_t RoiMask::foreground_count() const {
  std::size_t n = 0;
  for (auto f : foreground) n += f != 0;
  return n;
}

GradientImage sobel_gradients(const GrayImage& img) {
  GradientImage g;
  g.width = img.width;
  g.height = img.height;
  g.gx.assign(img.pixels.size(), 0.0);
  g.gy.assign(img.pixels.size(), 0.0);
  auto px = [&](int x, int y) {
    x = std::clamp(x, 0, img.width - 1);
    y = std::clamp(y, 0, img.height - 1);
    return img.at(x, y);
  };
  // 3x3 Sobel scaled by 1/8 to approximate the true derivative.
  for (int y = 0; y < img.height; ++y) {
    for (int x = 0; x < img.width; ++x) {
      double tl = px(x - 1, y - 1), tc = px(x, y - 1), tr = px(x + 1, y - 1);
      double ml = px(x - 1, y), mr = px(x + 1, y);
      double bl = px(x - 1, y + 1), bc = px(x, y + 1), br = px(x + 1, y + 1);
      std::size_t i = static_cast<std::size_t>(y) * img.width + x;
      g.gx[i] = ((tr + 2.0 * mr + br) - (tl + 2.0 * ml + bl)) / 8.0;
      g.gy[i] = ((bl + 2.0 * bc + br) - (tl + 2.0 * tc + tr)) / 8.0;
    }
  }
  return g;
}

RoiMask segment_roi(const GrayImage& img, int block_size, double g_thresh) {
  if (block_size < 4) throw DataError("segment_roi: block size must be >= 4");
  GradientImage grad = sobel_gradients(img);
  RoiMask mask;
  mask.grid = BlockGrid(img.width, img.height, block_size);
  mask.foreground.assign(mask.grid.cells(), 0);

  for (int r = 0; r < mask.grid.rows; ++r) {
    for (int c = 0; c < mask.grid.cols; ++c) {
      int y0 = r * block_size, y1 = std::min(y0 + block_size, img.height);
      int x0 = c * block_size, x1 = std::min(x0 + block_size, img.width);
      double sum = 0.0;
      for (int y = y0; y < y1; ++y)
        for (int x = x0; x < x1; ++x) {
          std::size_t i = static_cast<std::size_t>(y) * img.width + x;
          sum += std::hypot(grad.gx[i], grad.gy[i]);
        }
      double mean = sum / (static_cast<double>(y1 - y0) * (x1 - x0));
      mask.foreground[mask.grid.index(r, c)] = mean >= g_thresh ? 1 : 0;
    }
  }

  // Demote isolated foreground blocks (no foreground 4-neighbor).
  std::vector<std::uint8_t> out = mask.foreground;
  for (int r = 0; r < mask.grid.rows; ++r) {
    for (int c = 0; c < mask.grid.cols; ++c) {
      if (!mask.foreground[mask.grid.index(r, c)]) continue;
      bool has_neighbor = mask.fg(r - 1, c) || mask.fg(r + 1, c) ||
                          mask.fg(r, c - 1) || mask.fg(r, c + 1);
      if (!has_neighbor) out[mask.grid.index(r, c)] = 0;
    }
  }
  mask.foreground = std::move(out);
  return mask;
}

OrientationField estimate_orientation(const GrayImage& img, int block_size) {
  if (block_size < 4) throw DataError("estimate_orientation: block size must be >= 4");
  GradientImage grad = sobel_gradients(img);
  OrientationField field;
  field.grid = BlockGrid(img.width, img.height, block_size);
  field.angles.assign(field.grid.cells(), 0.0);

  for (int r = 0; r < field.grid.rows; ++r) {
    for (int c = 0; c < field.grid.cols; ++c) {
      int y0 = r * block_size, y1 = std::min(y0 + block_size, img.height);
      int x0 = c * block_size, x1 = std::min(x0 + block_size, img.width);
      double sxy = 0.0, sxx_yy = 0.0;
      for (int y = y0; y < y1; ++y)
        for (int x = x0; x < x1; ++x) {
          std::size_t i = static_cast<std::size_t>(y) * img.width + x;
          sxy += 2.0 * grad.gx[i] * grad.gy[i];
          sxx_yy += grad.gx[i] * grad.gx[i] - grad.gy[i] * grad.gy[i];
        }
      double angle = 0.0;
      if (sxy != 0.0 || sxx_yy != 0.0) {
        // Doubled-angle average gives the gradient direction; the ridge
        // runs perpendicular to it.
        double grad_angle = 0.5 * std::atan2(sxy, sxx_yy);
        angle = wrap_orientation(grad_angle + kPi / 2.0);
      }
      field.angles[field.grid.index(r, c)] = angle;
    }
  }
  return field;
}

OrientationField smooth_orientation(const OrientationField& field, int window) {
  if (window < 1 || window % 2 == 0)
    throw DataError("smooth_orientation: window must be odd and >= 1");
  if (window == 1) return field;
  OrientationField out;
  out.grid = field.grid;
  out.angles.assign(field.grid.cells(), 0.0);
  int half = window / 2;
  for (int r = 0; r < field.grid.rows; ++r) {
    for (int c = 0; c < field.grid.cols; ++c) {
      double s = 0.0, cs = 0.0;
      for (int dr = -half; dr <= half; ++dr)
        for (int dc = -half; dc <= half; ++dc) {
          if (!field.grid.in_grid(r + dr, c + dc)) continue;
          double a2 = 2.0 * field.angle(r + dr, c + dc);
          s += std::sin(a2);
          cs += std::cos(a2);
        }
      double angle = 0.0;
      if (s != 0.0 || cs != 0.0) angle = wrap_orientation(0.5 * std::atan2(s, cs));
      out.angles[out.grid.index(r, c)] = angle;
    }
  }
  return out;
}

namespace {

struct SegmentFreq {
  double freq = 0.0;
  bool valid = false;
};

// x-signature frequency of one horizontal band of the rotated window:
// 3-tap smoothing, strict local maxima, (P-1)/D with parabolic sub-pixel
// peak refinement.
SegmentFreq signature_frequency(const std::vector<double>& signature) {
  int n = static_cast<int>(signature.size());
  std::vector<double> smooth(n);
  for (int i = 0; i < n; ++i) {
    double s = signature[i];
    int cnt = 1;
    if (i > 0) { s += signature[i - 1]; ++cnt; }
    if (i + 1 < n) { s += signature[i + 1]; ++cnt; }
    smooth[i] = s / cnt;
  }
  std::vector<double> peaks;
  for (int i = 1; i + 1 < n; ++i) {
    if (smooth[i] > smooth[i - 1] && smooth[i] > smooth[i + 1]) {
      double denom = smooth[i - 1] - 2.0 * smooth[i] + smooth[i + 1];
      double offset = denom != 0.0 ? 0.5 * (smooth[i - 1] - smooth[i + 1]) / denom : 0.0;
      peaks.push_back(i + std::clamp(offset, -0.5, 0.5));
    }
  }
  SegmentFreq out;
  if (peaks.size() < 2) return out;
  double dist = peaks.back() - peaks.front();
  if (dist <= 0.0) return out;
  out.freq = (static_cast<double>(peaks.size()) - 1.0) / dist;
  out.valid = true;
  return out;
}

}  // namespace

FrequencyField estimate_frequency(const GrayImage& img, const OrientationField& field,
                                  const RoiMask& roi, const FrequencyParams& params) {
  if (params.segments < 3) throw DataError("estimate_frequency: need segments >= 3");
  if (2 * params.trim >= params.segments)
    throw DataError("estimate_frequency: need 2*trim < segments");
  if (field.grid.rows != roi.grid.rows || field.grid.cols != roi.grid.cols ||
      field.grid.block != roi.grid.block)
    throw DataError("estimate_frequency: field/roi grids do not match");

  const int b = field.grid.block;
  const int win_w = 2 * b;  // across ridges, after rotation
  const int win_h = b;      // along ridges
  const int s_rows = win_h / params.segments;

  FrequencyField out;
  out.grid = field.grid;
  out.freqs.assign(out.grid.cells(), 0.0);
  out.valid.assign(out.grid.cells(), 0);

  for (int r = 0; r < out.grid.rows; ++r) {
    for (int c = 0; c < out.grid.cols; ++c) {
      if (!roi.fg(r, c)) continue;
      double theta = field.angle(r, c);
      double cx = c * b + b / 2.0;
      double cy = r * b + b / 2.0;
      // Window axes in image space: u runs across ridges (the ridge
      // normal), v runs along them.
      double ux = -std::sin(theta), uy = std::cos(theta);
      double vx = std::cos(theta), vy = std::sin(theta);

      std::vector<double> seg_freqs;
      for (int s = 0; s < params.segments; ++s) {
        std::vector<double> signature(win_w, 0.0);
        for (int j = 0; j < win_w; ++j) {
          double u = j - (win_w - 1) / 2.0;
          double col_sum = 0.0;
          for (int i = 0; i < s_rows; ++i) {
            double v = s * s_rows + i - (win_h - 1) / 2.0;
            col_sum += img.sample(cx + u * ux + v * vx, cy + u * uy + v * vy);
          }
          signature[j] = col_sum / s_rows;
        }
        SegmentFreq sf = signature_frequency(signature);
        if (sf.valid) seg_freqs.push_back(sf.freq);
      }

      int needed = params.segments - 2 * params.trim;
      if (static_cast<int>(seg_freqs.size()) < needed) continue;
      std::sort(seg_freqs.begin(), seg_freqs.end());
      // Trim as much as the valid count allows while keeping >= 1 value.
      int t = std::min(params.trim, (static_cast<int>(seg_freqs.size()) - 1) / 2);
      double sum = 0.0;
      int kept = 0;
      for (int i = t; i < static_cast<int>(seg_freqs.size()) - t; ++i) {
        sum += seg_freqs[i];
        ++kept;
      }
      double freq = sum / kept;
      if (freq < params.f_min || freq > params.f_max) continue;
      out.freqs[out.grid.index(r, c)] = freq;
      out.valid[out.grid.index(r, c)] = 1;
    }
  }
  return out;
}

FrequencyField interpolate_frequency(const FrequencyField& field, const RoiMask& roi) {
  FrequencyField out = field;
  bool any_valid = false;
  for (std::size_t i = 0; i < field.valid.size(); ++i)
    if (field.valid[i]) { any_valid = true; break; }
  if (!any_valid) throw PipelineError("frequency estimation failed: no valid block");

  int max_radius = std::max(field.grid.rows, field.grid.cols);
  for (int r = 0; r < field.grid.rows; ++r) {
    for (int c = 0; c < field.grid.cols; ++c) {
      if (!roi.fg(r, c) || field.is_valid(r, c)) continue;
      for (int radius = 1; radius <= max_radius; ++radius) {
        double sum = 0.0;
        int cnt = 0;
        for (int dr = -radius; dr <= radius; ++dr)
          for (int dc = -radius; dc <= radius; ++dc) {
            int rr = r + dr, cc = c + dc;
            if (!field.grid.in_grid(rr, cc) || !field.is_valid(rr, cc)) continue;
            sum += field.freq(rr, cc);
            ++cnt;
          }
        if (cnt > 0) {
          out.freqs[out.grid.index(r, c)] = sum / cnt;
          out.valid[out.grid.index(r, c)] = 1;
          break;
        }
      }
    }
  }
  return out;
}

namespace {

void save_grid(const BlockGrid& grid, const std::vector<double>& values,
               const std::string& path, const std::string& what,
               const std::string& comment) {
  std::ofstream out(path);
  if (!out) throw DataError(path + ": cannot open for writing");
  out << "# ridgekit " << what << " b=" << grid.block << " rows=" << grid.rows
      << " cols=" << grid.cols << "\n";
  if (!comment.empty()) out << "# " << comment << "\n";
  for (int r = 0; r < grid.rows; ++r) {
    for (int c = 0; c < grid.cols; ++c) {
      if (c) out << ' ';
      out << format_g9(values[grid.index(r, c)]);
    }
    out << '\n';
  }
  if (!out) throw DataError(path + ": write failed");
}

}  // namespace

void save_orientation_grid(const OrientationField& field, const std::string& path,
                           const std::string& comment) {
  save_grid(field.grid, field.angles, path, "orientation(rad)", comment);
}

void save_frequency_grid(const FrequencyField& field, const std::string& path,
                         const std::string& comment) {
  save_grid(field.grid, field.freqs, path, "frequency(cycles/px)", comment);
}

}  // namespace ridgekit
