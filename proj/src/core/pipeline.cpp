// License: Apache 2.0. See LICENSE file in root directory.
// Copyright(c) 2026 RidgeKit Contributors.

#include "core/pipeline.hpp"

#include "core/common.hpp"

namespace ridgekit {

EnhanceArtifacts run_enhance(const GrayImage& input, const Config& cfg) {
  if (input.width < 32 || input.height < 32)
    throw PipelineError("image too small for pipeline entry (need >= 32x32)");

  GrayImage img = input;
  if (cfg.invert)
    for (double& v : img.pixels) v = 1.0 - v;

  EnhanceArtifacts art;
  GrayImage work = img;

  for (int pass = 0; pass < cfg.passes; ++pass) {
    // Each pass re-conditions its input; a second pass consumes the
    // previous pass's filtered output like a fresh image.
    work = normalize(work, cfg.target_mean, cfg.target_var);
    art.roi = segment_roi(work, cfg.block_size, cfg.g_thresh);
    if (art.roi.foreground_count() == 0) throw PipelineError("empty ROI");

    art.orientation =
        smooth_orientation(estimate_orientation(work, cfg.block_size), cfg.orient_window);

    FrequencyParams fp;
    fp.segments = cfg.segments;
    fp.trim = cfg.trim;
    fp.f_min = cfg.f_min;
    fp.f_max = cfg.f_max;
    art.frequency = estimate_frequency(work, art.orientation, art.roi, fp);

    // Quality gating uses the raw validity; filtering needs full coverage.
    art.quality = compute_quality_mask(art.orientation, art.frequency, art.roi,
                                       cfg.kappa_max);
    art.frequency_filled = interpolate_frequency(art.frequency, art.roi);

    BankParams bp;
    bp.k_theta = cfg.k_theta;
    bp.sigma_x = cfg.sigma_x;
    bp.sigma_y = cfg.sigma_y;
    bp.half_width = cfg.kernel_half_width;
    bp.f_min = cfg.f_min;
    bp.f_max = cfg.f_max;
    GaborBank bank = build_gabor_bank(art.frequency_filled, bp);

    work = gabor_enhance(work, art.orientation, art.frequency_filled, art.roi, bank);
  }

  art.enhanced = work;
  art.binary = binarize(art.enhanced, art.roi);
  art.skeleton = thin(art.binary);
  return art;
}

MinutiaList run_extract(const GrayImage& input, const Config& cfg,
                        const std::string& image_id) {
  EnhanceArtifacts art = run_enhance(input, cfg);
  MinutiaList raw = extract_minutiae(art.skeleton, art.quality, cfg.trace_len);
  RemovalParams rp;
  rp.window = cfg.window;
  rp.d_min = cfg.d_min;
  rp.border = cfg.border;
  MinutiaList clean = remove_false_minutiae(raw, art.skeleton, art.quality, rp);
  clean.image_id = image_id;
  return clean;
}

FingerCode run_encode_image(const GrayImage& input, const Config& cfg,
                            const std::string& subject_id, const std::string& sample_id) {
  MinutiaList list = run_extract(input, cfg, subject_id + ":" + sample_id);
  return encode_fingerprint(list, cfg.neighbors, cfg.mode, subject_id, sample_id);
}

std::vector<std::optional<FingerCode>> encode_dataset(const DatasetIndex& index,
                                                      const Config& cfg, int jobs,
                                                      bool require_all) {
  std::vector<std::optional<FingerCode>> codes(index.size());
  std::vector<std::string> errors(index.size());
  parallel_for(index.size(), jobs, [&](std::size_t i) {
    const DatasetEntry& e = index.entries[i];
    try {
      GrayImage img = load_image(e.path);
      codes[i] = run_encode_image(img, cfg, e.subject, std::to_string(e.sample));
    } catch (const std::exception& ex) {
      errors[i] = ex.what();
    }
  });
  if (require_all) {
    for (std::size_t i = 0; i < codes.size(); ++i)
      if (!codes[i])
        throw PipelineError("entry " + index.entries[i].subject + ":" +
                            std::to_string(index.entries[i].sample) + " failed: " +
                            errors[i]);
  }
  return codes;
}

}  // namespace ridgekit
