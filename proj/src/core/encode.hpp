// License: Apache 2.0. See LICENSE file in root directory.
// Copyright(c) 2026 RidgeKit Contributors.

#pragma once

#include <string>
#include <vector>

#include "core/config.hpp"
#include "core/minutiae.hpp"

namespace ridgekit {

/// Relative position/direction of one neighboring minutia: distance rho,
/// displacement angle theta, direction difference phi; angles in (-pi, pi].
/// In normalized mode theta is taken relative to the reference minutia's
/// direction, which makes the whole code rotation-invariant.
struct NeighborFeature {
  double rho = 0.0;
  double theta = 0.0;
  double phi = 0.0;
};

struct MinutiaCode {
  std::size_t ref_index = 0;
  std::vector<NeighborFeature> features;  // ascending rho
};

struct FingerCode {
  std::vector<MinutiaCode> codes;  // one per minutia, list order
  int n = 0;                       // requested neighbor count
  ThetaMode mode = ThetaMode::kNormalized;
  std::string subject_id;
  std::string sample_id;
  MinutiaList minutiae;  // retained for diagnostics and re-encoding

  std::size_t size() const { return codes.size(); }
};

/// Indices of the min(n, N-1) minutiae nearest to minutia i, ascending
/// Euclidean distance, ties by index. Throws PipelineError when the list
/// has fewer than two minutiae.
std::vector<std::size_t> nearest_neighbors(const MinutiaList& list, std::size_t i, int n);

/// Features of minutia i against the given neighbor indices, in that order.
MinutiaCode encode_minutia(const MinutiaList& list, std::size_t i,
                           const std::vector<std::size_t>& neighbor_indices,
                           ThetaMode mode);

FingerCode encode_fingerprint(const MinutiaList& list, int n, ThetaMode mode,
                              const std::string& subject_id = "",
                              const std::string& sample_id = "");

/// Text format v1; numeric fields carry 9 significant digits, so a
/// round-trip agrees within 1e-6 per field.
void write_fingercode(const FingerCode& code, const std::string& path,
                      const std::string& comment = "");
FingerCode read_fingercode(const std::string& path);

}  // namespace ridgekit
