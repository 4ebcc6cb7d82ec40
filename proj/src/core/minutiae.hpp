// License: Apache 2.0. See LICENSE file in root directory.
// Copyright(c) 2026 RidgeKit Contributors.

#pragma once

#include <array>
#include <string>
#include <vector>

#include "core/image.hpp"
#include "core/ridgefield.hpp"

namespace ridgekit {

enum class MinutiaKind { kEnding, kBifurcation };

struct Minutia {
  double x = 0.0;
  double y = 0.0;
  double theta = 0.0;  // ridge direction at the minutia, [0, 2*pi)
  MinutiaKind kind = MinutiaKind::kEnding;
};

struct MinutiaList {
  std::vector<Minutia> minutiae;
  std::string image_id;

  std::size_t size() const { return minutiae.size(); }
  const Minutia& operator[](std::size_t i) const { return minutiae[i]; }
};

/// Blocks eligible for minutiae: ROI foreground, valid frequency, and local
/// ridge curvature (max orientation step to a 4-neighbor) within kappa_max.
struct QualityMask {
  BlockGrid grid;
  std::vector<std::uint8_t> ok;

  bool is_ok(int row, int col) const {
    return grid.in_grid(row, col) && ok[grid.index(row, col)] != 0;
  }
  bool ok_at_pixel(int x, int y) const {
    return is_ok(grid.block_of_y(y), grid.block_of_x(x));
  }
};

QualityMask compute_quality_mask(const OrientationField& field, const FrequencyField& freq,
                                 const RoiMask& roi, double kappa_max);

/// Count of 0->1 transitions scanning the 8 neighbors clockwise from the
/// top-left, wrap-around included. 1 = ridge ending, 3 = bifurcation.
int crossing_transitions(const std::array<bool, 8>& neighborhood);

/// Collect the clockwise-from-top-left neighborhood of (x,y).
std::array<bool, 8> pixel_neighborhood(const Skeleton& skel, int x, int y);

/// Ridge direction at a detected minutia, from walking the skeleton
/// trace_len pixels along each branch. Endings point into the ridge;
/// bifurcations point opposite the branch resultant.
double minutia_direction(const Skeleton& skel, int x, int y, MinutiaKind kind,
                         int trace_len);

/// Crossing-number scan over quality-ok blocks (1-px image border excluded);
/// output ordered by (y, x).
MinutiaList extract_minutiae(const Skeleton& skel, const QualityMask& qmask,
                             int trace_len);

struct RemovalParams {
  int window = 17;  // W
  int d_min = 8;
  int border = 8;
};

/// Drop false minutiae, in order: (a) points within `border` px of a
/// quality-bad block or the image edge; (b) anti-parallel ending pairs
/// within d_min (broken ridge); (c) pairs involving a bifurcation within
/// d_min; (d) spur endings whose branch dies within W/2 px. A final sweep
/// enforces the pairwise d_min separation.
MinutiaList remove_false_minutiae(const MinutiaList& list, const Skeleton& skel,
                                  const QualityMask& qmask, const RemovalParams& params);

/// Text format v1: header line with the image id, one
/// x<TAB>y<TAB>theta<TAB>kind line per minutia.
void save_minutiae(const MinutiaList& list, const std::string& path,
                   const std::string& comment = "");
MinutiaList load_minutiae(const std::string& path);

}  // namespace ridgekit
