// License: Apache 2.0. See LICENSE file in root directory.
// Copyright(c) 2026 RidgeKit Contributors.

#include "core/pipeline.hpp"
#include "core/synth.hpp"
#include "doctest.h"
#include "testutil.hpp"

using namespace ridgekit;
using ridgekit::kPi;

TEST_CASE("run_enhance: artifacts are mutually consistent") {
  SynthSpec spec = make_random_spec(303, 224, 224, 8.0, 6, 1, 0.02);
  SynthResult res = generate(spec);
  Config cfg;
  EnhanceArtifacts art = run_enhance(res.image, cfg);

  CHECK(art.roi.foreground_count() > 0);
  // Every foreground block carries a filled frequency.
  for (int r = 0; r < art.roi.grid.rows; ++r)
    for (int c = 0; c < art.roi.grid.cols; ++c)
      if (art.roi.fg(r, c)) CHECK(art.frequency_filled.is_valid(r, c));
  // Skeleton is a subset of the binary image.
  for (std::size_t i = 0; i < art.skeleton.bits.size(); ++i)
    if (art.skeleton.bits[i]) CHECK(art.binary.bits[i]);
  // No 2x2 square survives thinning.
  for (int y = 0; y + 1 < art.skeleton.height; ++y)
    for (int x = 0; x + 1 < art.skeleton.width; ++x) {
      bool square = art.skeleton.get(x, y) && art.skeleton.get(x + 1, y) &&
                    art.skeleton.get(x, y + 1) && art.skeleton.get(x + 1, y + 1);
      CHECK_FALSE(square);
    }
}

TEST_CASE("run_enhance: constant image has an empty ROI") {
  GrayImage img(128, 128, 0.5);
  Config cfg;
  CHECK_THROWS_AS(run_enhance(img, cfg), PipelineError);
}

TEST_CASE("run_enhance: tiny images are refused") {
  GrayImage img(16, 16, 0.5);
  Config cfg;
  CHECK_THROWS_AS(run_enhance(img, cfg), PipelineError);
}

TEST_CASE("run_extract: deterministic across runs") {
  SynthSpec spec = make_random_spec(404, 192, 192, 8.0, 5, 0, 0.02);
  SynthResult res = generate(spec);
  Config cfg;
  MinutiaList a = run_extract(res.image, cfg, "x");
  MinutiaList b = run_extract(res.image, cfg, "x");
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].x == b[i].x);
    CHECK(a[i].y == b[i].y);
    CHECK(a[i].theta == b[i].theta);
  }
}

TEST_CASE("passes=2 runs a second enhancement round") {
  SynthSpec spec = make_random_spec(505, 160, 160, 8.0, 3, 0, 0.02);
  SynthResult res = generate(spec);
  Config cfg;
  cfg.passes = 2;
  EnhanceArtifacts art = run_enhance(res.image, cfg);
  CHECK(art.skeleton.count() > 200);
}

TEST_CASE("invert flag flips the input polarity") {
  SynthSpec spec = make_random_spec(606, 160, 160, 8.0, 3, 0, 0.0);
  SynthResult res = generate(spec);
  GrayImage inverted(res.image.width, res.image.height);
  for (std::size_t i = 0; i < res.image.pixels.size(); ++i)
    inverted.pixels[i] = 1.0 - res.image.pixels[i];

  Config cfg;
  MinutiaList direct = run_extract(res.image, cfg, "d");
  Config icfg;
  icfg.invert = 1;
  MinutiaList via_invert = run_extract(inverted, icfg, "i");
  REQUIRE(direct.size() == via_invert.size());
  for (std::size_t i = 0; i < direct.size(); ++i) {
    CHECK(direct[i].x == via_invert[i].x);
    CHECK(direct[i].y == via_invert[i].y);
  }
}
