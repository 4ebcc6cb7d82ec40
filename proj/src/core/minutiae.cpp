// License: Apache 2.0. See LICENSE file in root directory.
// Copyright(c) 2026 RidgeKit Contributors.

#include "core/minutiae.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>

#include "core/common.hpp"

namespace ridgekit {

QualityMask compute_quality_mask(const OrientationField& field, const FrequencyField& freq,
                                 const RoiMask& roi, double kappa_max) {
  const BlockGrid& grid = roi.grid;
  if (field.grid.rows != grid.rows || field.grid.cols != grid.cols ||
      freq.grid.rows != grid.rows || freq.grid.cols != grid.cols)
    throw DataError("compute_quality_mask: grids do not match");

  QualityMask mask;
  mask.grid = grid;
  mask.ok.assign(grid.cells(), 0);
  for (int r = 0; r < grid.rows; ++r) {
    for (int c = 0; c < grid.cols; ++c) {
      if (!roi.fg(r, c) || !freq.is_valid(r, c)) continue;
      double curvature = 0.0;
      const int dr[4] = {-1, 1, 0, 0};
      const int dc[4] = {0, 0, -1, 1};
      for (int k = 0; k < 4; ++k) {
        int rr = r + dr[k], cc = c + dc[k];
        if (!grid.in_grid(rr, cc)) continue;
        curvature = std::max(curvature, ang_dist_pi(field.angle(r, c), field.angle(rr, cc)));
      }
      if (curvature <= kappa_max) mask.ok[grid.index(r, c)] = 1;
    }
  }
  return mask;
}

int crossing_transitions(const std::array<bool, 8>& neighborhood) {
  int count = 0;
  for (int i = 0; i < 8; ++i)
    if (!neighborhood[i] && neighborhood[(i + 1) % 8]) ++count;
  return count;
}

std::array<bool, 8> pixel_neighborhood(const Skeleton& skel, int x, int y) {
  // Clockwise from the top-left corner.
  return {skel.get(x - 1, y - 1), skel.get(x, y - 1), skel.get(x + 1, y - 1),
          skel.get(x + 1, y),     skel.get(x + 1, y + 1), skel.get(x, y + 1),
          skel.get(x - 1, y + 1), skel.get(x - 1, y)};
}

namespace {

// Neighborhood offsets in the clockwise-from-top-left order used above.
const int kNbrDx[8] = {-1, 0, 1, 1, 1, 0, -1, -1};
const int kNbrDy[8] = {-1, -1, -1, 0, 1, 1, 1, 0};

struct WalkResult {
  int end_x = 0;
  int end_y = 0;
  int steps = 0;
  bool dead_end = false;   // ran out of ridge before max_steps
  bool hit_junction = false;  // reached a pixel with multiple continuations
};

// Follow the ridge from `start` (a neighbor of the minutia) for up to
// max_steps pixels, never revisiting pixels. Unvisited neighbors are grouped
// into runs around the ring; several runs mean a junction, none a dead end.
WalkResult walk_branch(const Skeleton& skel, int origin_x, int origin_y, int start_x,
                       int start_y, int max_steps) {
  std::set<std::pair<int, int>> visited;
  visited.insert({origin_x, origin_y});
  visited.insert({start_x, start_y});
  WalkResult res;
  res.end_x = start_x;
  res.end_y = start_y;
  res.steps = 1;
  int cx = start_x, cy = start_y;
  while (res.steps < max_steps) {
    bool nbr[8];
    int total = 0;
    for (int i = 0; i < 8; ++i) {
      int nx = cx + kNbrDx[i], ny = cy + kNbrDy[i];
      nbr[i] = skel.get(nx, ny) && !visited.count({nx, ny});
      total += nbr[i];
    }
    if (total == 0) {
      res.dead_end = true;
      return res;
    }
    int runs = 0;
    for (int i = 0; i < 8; ++i)
      if (!nbr[i] && nbr[(i + 1) % 8]) ++runs;
    if (runs == 0) runs = 1;  // full ring
    if (runs > 1) {
      res.hit_junction = true;
      return res;
    }
    // Single continuation; prefer a 4-connected member of the run.
    int pick = -1;
    for (int i = 1; i < 8 && pick < 0; i += 2)
      if (nbr[i]) pick = i;
    for (int i = 0; i < 8 && pick < 0; ++i)
      if (nbr[i]) pick = i;
    cx += kNbrDx[pick];
    cy += kNbrDy[pick];
    visited.insert({cx, cy});
    res.end_x = cx;
    res.end_y = cy;
    ++res.steps;
  }
  return res;
}

// First pixel of each run of consecutive true neighbors (a run entered at a
// 0->1 transition), in clockwise order.
std::vector<std::pair<int, int>> branch_starts(const Skeleton& skel, int x, int y) {
  auto nbr = pixel_neighborhood(skel, x, y);
  std::vector<std::pair<int, int>> starts;
  for (int i = 0; i < 8; ++i)
    if (!nbr[i] && nbr[(i + 1) % 8]) {
      int j = (i + 1) % 8;
      starts.emplace_back(x + kNbrDx[j], y + kNbrDy[j]);
    }
  if (starts.empty() && nbr[0]) starts.emplace_back(x + kNbrDx[0], y + kNbrDy[0]);
  return starts;
}

}  // namespace

double minutia_direction(const Skeleton& skel, int x, int y, MinutiaKind kind,
                         int trace_len) {
  auto starts = branch_starts(skel, x, y);
  if (starts.empty()) return 0.0;
  if (kind == MinutiaKind::kEnding) {
    WalkResult w = walk_branch(skel, x, y, starts[0].first, starts[0].second, trace_len);
    return wrap_two_pi(std::atan2(w.end_y - y, w.end_x - x));
  }
  double sx = 0.0, sy = 0.0;
  for (const auto& [bx, by] : starts) {
    WalkResult w = walk_branch(skel, x, y, bx, by, trace_len);
    sx += w.end_x - x;
    sy += w.end_y - y;
  }
  if (sx == 0.0 && sy == 0.0) return 0.0;
  return wrap_two_pi(std::atan2(-sy, -sx));
}

MinutiaList extract_minutiae(const Skeleton& skel, const QualityMask& qmask,
                             int trace_len) {
  MinutiaList list;
  for (int y = 1; y + 1 < skel.height; ++y) {
    for (int x = 1; x + 1 < skel.width; ++x) {
      if (!skel.get(x, y) || !qmask.ok_at_pixel(x, y)) continue;
      int cn = crossing_transitions(pixel_neighborhood(skel, x, y));
      if (cn != 1 && cn != 3) continue;
      Minutia m;
      m.x = x;
      m.y = y;
      m.kind = cn == 1 ? MinutiaKind::kEnding : MinutiaKind::kBifurcation;
      m.theta = minutia_direction(skel, x, y, m.kind, trace_len);
      list.minutiae.push_back(m);
    }
  }
  return list;
}

namespace {

double dist(const Minutia& a, const Minutia& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

std::vector<Minutia> drop_marked(const std::vector<Minutia>& in,
                                 const std::vector<bool>& marked) {
  std::vector<Minutia> out;
  for (std::size_t i = 0; i < in.size(); ++i)
    if (!marked[i]) out.push_back(in[i]);
  return out;
}

}  // namespace

MinutiaList remove_false_minutiae(const MinutiaList& list, const Skeleton& skel,
                                  const QualityMask& qmask, const RemovalParams& params) {
  std::vector<Minutia> cur = list.minutiae;
  const BlockGrid& grid = qmask.grid;
  const int b = grid.block;

  // (a) mask-boundary artifacts: anything within `border` px of a bad block.
  {
    std::vector<bool> marked(cur.size(), false);
    for (std::size_t i = 0; i < cur.size(); ++i) {
      int x = static_cast<int>(std::lround(cur[i].x));
      int y = static_cast<int>(std::lround(cur[i].y));
      int r0 = std::max(0, (y - params.border) / b);
      int r1 = std::min(grid.rows - 1, (y + params.border) / b);
      int c0 = std::max(0, (x - params.border) / b);
      int c1 = std::min(grid.cols - 1, (x + params.border) / b);
      for (int r = r0; r <= r1 && !marked[i]; ++r) {
        for (int c = c0; c <= c1 && !marked[i]; ++c) {
          if (qmask.is_ok(r, c)) continue;
          double dx = std::max({0, c * b - x, x - ((c + 1) * b - 1)});
          double dy = std::max({0, r * b - y, y - ((r + 1) * b - 1)});
          if (std::hypot(dx, dy) <= params.border) marked[i] = true;
        }
      }
    }
    cur = drop_marked(cur, marked);
  }

  // (b) broken-ridge artifacts: close anti-parallel ending pairs.
  {
    std::vector<bool> marked(cur.size(), false);
    for (std::size_t i = 0; i < cur.size(); ++i) {
      if (cur[i].kind != MinutiaKind::kEnding) continue;
      for (std::size_t j = i + 1; j < cur.size(); ++j) {
        if (cur[j].kind != MinutiaKind::kEnding) continue;
        if (dist(cur[i], cur[j]) >= params.d_min) continue;
        if (ang_dist_two_pi(cur[i].theta, cur[j].theta + kPi) <= kPi / 6.0) {
          marked[i] = true;
          marked[j] = true;
        }
      }
    }
    cur = drop_marked(cur, marked);
  }

  // (c) close pairs involving a bifurcation.
  {
    std::vector<bool> marked(cur.size(), false);
    for (std::size_t i = 0; i < cur.size(); ++i) {
      for (std::size_t j = i + 1; j < cur.size(); ++j) {
        if (cur[i].kind == MinutiaKind::kEnding && cur[j].kind == MinutiaKind::kEnding)
          continue;
        if (dist(cur[i], cur[j]) < params.d_min) {
          marked[i] = true;
          marked[j] = true;
        }
      }
    }
    cur = drop_marked(cur, marked);
  }

  // (d) spurs: the ridge behind an ending dies or forks within W/2 px.
  {
    std::vector<bool> marked(cur.size(), false);
    int max_steps = params.window / 2;
    for (std::size_t i = 0; i < cur.size(); ++i) {
      if (cur[i].kind != MinutiaKind::kEnding) continue;
      int x = static_cast<int>(std::lround(cur[i].x));
      int y = static_cast<int>(std::lround(cur[i].y));
      auto starts = branch_starts(skel, x, y);
      if (starts.empty()) {
        marked[i] = true;
        continue;
      }
      WalkResult w = walk_branch(skel, x, y, starts[0].first, starts[0].second, max_steps);
      if (w.dead_end || w.hit_junction) marked[i] = true;
    }
    cur = drop_marked(cur, marked);
  }

  // Final sweep: enforce the pairwise d_min separation on whatever remains.
  {
    std::vector<bool> marked(cur.size(), false);
    for (std::size_t i = 0; i < cur.size(); ++i)
      for (std::size_t j = i + 1; j < cur.size(); ++j)
        if (dist(cur[i], cur[j]) < params.d_min) {
          marked[i] = true;
          marked[j] = true;
        }
    cur = drop_marked(cur, marked);
  }

  MinutiaList out;
  out.image_id = list.image_id;
  out.minutiae = std::move(cur);
  return out;
}

void save_minutiae(const MinutiaList& list, const std::string& path,
                   const std::string& comment) {
  std::ofstream out(path);
  if (!out) throw DataError(path + ": cannot open for writing");
  out << "#ridgekit-minutiae v1 " << (list.image_id.empty() ? "-" : list.image_id) << "\n";
  if (!comment.empty()) out << "# " << comment << "\n";
  for (const auto& m : list.minutiae) {
    out << format_g9(m.x) << '\t' << format_g9(m.y) << '\t' << format_g9(m.theta) << '\t'
        << (m.kind == MinutiaKind::kEnding ? "ending" : "bifurcation") << '\n';
  }
  if (!out) throw DataError(path + ": write failed");
}

MinutiaList load_minutiae(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError(path + ": cannot open file");
  std::string line;
  if (!std::getline(in, line)) throw DataError(path + ": empty file");
  auto header = split(trim(line), ' ');
  if (header.size() < 2 || header[0] != "#ridgekit-minutiae" || header[1] != "v1")
    throw DataError(path + ": missing '#ridgekit-minutiae v1' header");
  MinutiaList list;
  if (header.size() >= 3 && header[2] != "-") list.image_id = header[2];
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    auto fields = split(line, '\t');
    if (fields.size() != 4)
      throw DataError(path + ":" + std::to_string(lineno) +
                      ": expected x<TAB>y<TAB>theta<TAB>kind");
    Minutia m;
    try {
      m.x = std::stod(fields[0]);
      m.y = std::stod(fields[1]);
      m.theta = std::stod(fields[2]);
    } catch (const std::exception&) {
      throw DataError(path + ":" + std::to_string(lineno) + ": bad numeric field");
    }
    std::string kind = trim(fields[3]);
    if (kind == "ending") m.kind = MinutiaKind::kEnding;
    else if (kind == "bifurcation") m.kind = MinutiaKind::kBifurcation;
    else throw DataError(path + ":" + std::to_string(lineno) + ": unknown kind " + kind);
    list.minutiae.push_back(m);
  }
  return list;
}

}  // namespace ridgekit
