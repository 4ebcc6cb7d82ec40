// License: Apache 2.0. See LICENSE file in root directory.
// Copyright(c) 2026 RidgeKit Contributors.

#include "core/encode.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "core/common.hpp"

namespace ridgekit {

namespace {

std::vector<std::size_t> sorted_by_distance(const MinutiaList& list, std::size_t i) {
  std::vector<std::pair<double, std::size_t>> order;
  order.reserve(list.size() - 1);
  const Minutia& ref = list[i];
  for (std::size_t j = 0; j < list.size(); ++j) {
    if (j == i) continue;
    double dx = ref.x - list[j].x;
    double dy = ref.y - list[j].y;
    order.emplace_back(dx * dx + dy * dy, j);
  }
  std::sort(order.begin(), order.end());
  std::vector<std::size_t> idx;
  idx.reserve(order.size());
  for (const auto& [d2, j] : order) idx.push_back(j);
  return idx;
}

}  // namespace

std::vector<std::size_t> nearest_neighbors(const MinutiaList& list, std::size_t i, int n) {
  if (list.size() < 2) throw PipelineError("insufficient minutiae: need at least 2");
  if (i >= list.size()) throw DataError("nearest_neighbors: index out of range");
  if (n < 1) throw DataError("nearest_neighbors: n must be >= 1");
  auto idx = sorted_by_distance(list, i);
  if (idx.size() > static_cast<std::size_t>(n)) idx.resize(static_cast<std::size_t>(n));
  return idx;
}

MinutiaCode encode_minutia(const MinutiaList& list, std::size_t i,
                           const std::vector<std::size_t>& neighbor_indices,
                           ThetaMode mode) {
  if (neighbor_indices.empty()) throw DataError("encode_minutia: no neighbors given");
  const Minutia& ref = list[i];
  MinutiaCode code;
  code.ref_index = i;
  code.features.reserve(neighbor_indices.size());
  for (std::size_t j : neighbor_indices) {
    if (j == i) throw DataError("encode_minutia: reference included in neighbors");
    const Minutia& nb = list[j];
    double dx = ref.x - nb.x;
    double dy = ref.y - nb.y;
    NeighborFeature f;
    f.rho = std::hypot(dx, dy);
    if (f.rho <= 0.0) continue;  // coincident minutia; caller supplies spares
    f.theta = std::atan2(dy, dx);
    if (mode == ThetaMode::kNormalized) f.theta = wrap_angle(f.theta - ref.theta);
    f.phi = wrap_angle(ref.theta - nb.theta);
    code.features.push_back(f);
  }
  return code;
}

FingerCode encode_fingerprint(const MinutiaList& list, int n, ThetaMode mode,
                              const std::string& subject_id,
                              const std::string& sample_id) {
  if (list.size() < 2) throw PipelineError("insufficient minutiae: need at least 2");
  if (n < 1) throw DataError("encode_fingerprint: n must be >= 1");
  FingerCode fc;
  fc.n = n;
  fc.mode = mode;
  fc.subject_id = subject_id;
  fc.sample_id = sample_id;
  fc.minutiae = list;
  fc.codes.reserve(list.size());
  std::size_t want = std::min<std::size_t>(static_cast<std::size_t>(n), list.size() - 1);
  for (std::size_t i = 0; i < list.size(); ++i) {
    // Fetch the full distance ordering so coincident neighbors can be
    // skipped in favor of the next-nearest ones.
    auto all = sorted_by_distance(list, i);
    MinutiaCode code = encode_minutia(list, i, all, mode);
    if (code.features.size() > want) code.features.resize(want);
    fc.codes.push_back(std::move(code));
  }
  return fc;
}

void write_fingercode(const FingerCode& code, const std::string& path,
                      const std::string& comment) {
  std::ofstream out(path);
  if (!out) throw DataError(path + ": cannot open for writing");
  out << "#ridgekit-fingercode v1 subject=" << (code.subject_id.empty() ? "-" : code.subject_id)
      << " sample=" << (code.sample_id.empty() ? "-" : code.sample_id) << " n=" << code.n
      << " N=" << code.codes.size() << " mode=" << theta_mode_name(code.mode) << "\n";
  if (!comment.empty()) out << "# " << comment << "\n";
  for (std::size_t i = 0; i < code.codes.size(); ++i) {
    const Minutia& m = code.minutiae[i];
    out << format_g9(m.x) << ' ' << format_g9(m.y) << ' ' << format_g9(m.theta) << ' '
        << (m.kind == MinutiaKind::kEnding ? "ending" : "bifurcation") << '\n';
    for (const auto& f : code.codes[i].features)
      out << format_g9(f.rho) << ' ' << format_g9(f.theta) << ' ' << format_g9(f.phi) << '\n';
  }
  if (!out) throw DataError(path + ": write failed");
}

namespace {

std::string header_value(const std::vector<std::string>& tokens, const std::string& key,
                         const std::string& path) {
  for (const auto& t : tokens) {
    if (t.rfind(key + "=", 0) == 0) return t.substr(key.size() + 1);
  }
  throw DataError(path + ": fingercode header missing " + key + "=");
}

}  // namespace

FingerCode read_fingercode(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError(path + ": cannot open file");
  std::string line;
  if (!std::getline(in, line)) throw DataError(path + ": empty file");
  auto tokens = split(trim(line), ' ');
  if (tokens.size() < 2 || tokens[0] != "#ridgekit-fingercode" || tokens[1] != "v1")
    throw DataError(path + ": missing '#ridgekit-fingercode v1' header");

  FingerCode fc;
  std::string subject = header_value(tokens, "subject", path);
  std::string sample = header_value(tokens, "sample", path);
  fc.subject_id = subject == "-" ? "" : subject;
  fc.sample_id = sample == "-" ? "" : sample;
  std::size_t count = 0;
  try {
    fc.n = std::stoi(header_value(tokens, "n", path));
    count = static_cast<std::size_t>(std::stoul(header_value(tokens, "N", path)));
  } catch (const std::exception&) {
    throw DataError(path + ": bad numeric header field");
  }
  fc.mode = theta_mode_from_name(header_value(tokens, "mode", path));

  std::size_t features_per_record =
      count == 0 ? 0 : std::min<std::size_t>(static_cast<std::size_t>(fc.n), count - 1);

  auto next_data_line = [&](std::string& out_line) {
    while (std::getline(in, out_line)) {
      std::string t = trim(out_line);
      if (t.empty() || t[0] == '#') continue;
      out_line = t;
      return true;
    }
    return false;
  };

  for (std::size_t i = 0; i < count; ++i) {
    if (!next_data_line(line)) throw DataError(path + ": truncated fingercode record");
    std::istringstream ms(line);
    Minutia m;
    std::string kind;
    if (!(ms >> m.x >> m.y >> m.theta >> kind))
      throw DataError(path + ": malformed minutia record");
    if (kind == "ending") m.kind = MinutiaKind::kEnding;
    else if (kind == "bifurcation") m.kind = MinutiaKind::kBifurcation;
    else throw DataError(path + ": unknown minutia kind " + kind);
    fc.minutiae.minutiae.push_back(m);

    MinutiaCode code;
    code.ref_index = i;
    for (std::size_t k = 0; k < features_per_record; ++k) {
      if (!next_data_line(line)) throw DataError(path + ": truncated feature record");
      std::istringstream fscan(line);
      NeighborFeature f;
      if (!(fscan >> f.rho >> f.theta >> f.phi))
        throw DataError(path + ": malformed feature record");
      std::string extra;
      if (fscan >> extra) throw DataError(path + ": malformed feature record");
      code.features.push_back(f);
    }
    fc.codes.push_back(std::move(code));
  }
  std::string tail;
  if (next_data_line(tail))
    throw DataError(path + ": trailing records beyond declared N");
  return fc;
}

}  // namespace ridgekit
