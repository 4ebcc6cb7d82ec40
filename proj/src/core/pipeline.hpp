// License: Apache 2.0. See LICENSE file in root directory.
// Copyright(c) 2026 RidgeKit Contributors.

#pragma once

#include <optional>

#include "core/config.hpp"
#include "core/dataset.hpp"
#include "core/encode.hpp"
#include "core/enhance.hpp"
#include "core/image.hpp"
#include "core/minutiae.hpp"
#include "core/ridgefield.hpp"

namespace ridgekit {

/// Everything the enhancement stage produces, kept for debug dumps and the
/// downstream extraction steps.
struct EnhanceArtifacts {
  RoiMask roi;
  OrientationField orientation;
  FrequencyField frequency;         // as estimated (pre-interpolation)
  FrequencyField frequency_filled;  // every foreground block valid
  QualityMask quality;
  GrayImage enhanced;
  BinaryImage binary;
  Skeleton skeleton;
};

/// Normalize, estimate fields, Gabor-filter (cfg.passes times), binarize and
/// thin. Throws PipelineError when the ROI is empty or no block yields a
/// frequency.
EnhanceArtifacts run_enhance(const GrayImage& input, const Config& cfg);

/// Full extraction: run_enhance, crossing-number scan, false-minutiae removal.
MinutiaList run_extract(const GrayImage& input, const Config& cfg,
                        const std::string& image_id = "");

/// Extraction followed by neighbor encoding at cfg.neighbors.
FingerCode run_encode_image(const GrayImage& input, const Config& cfg,
                            const std::string& subject_id = "",
                            const std::string& sample_id = "");

/// Process every dataset entry into a finger-code (parallel over images).
/// With require_all the first failure is rethrown; otherwise failed entries
/// stay empty.
std::vector<std::optional<FingerCode>> encode_dataset(const DatasetIndex& index,
                                                      const Config& cfg, int jobs,
                                                      bool require_all);

}  // namespace ridgekit
