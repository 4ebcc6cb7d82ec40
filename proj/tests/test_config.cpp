// License: Apache 2.0. See LICENSE file in root directory.
// Copyright(c) 2026 RidgeKit Contributors.

#include <fstream>

#include "core/config.hpp"
#include "doctest.h"
#include "testutil.hpp"

using namespace ridgekit;

TEST_CASE("config defaults validate and serialize deterministically") {
  Config cfg;
  cfg.validate();
  CHECK(cfg.block_size == 16);
  CHECK(cfg.neighbors == 9);
  CHECK(cfg.matched_threshold == 5);
  CHECK(cfg.mode == ThetaMode::kNormalized);
  CHECK(cfg.canonical() == Config{}.canonical());
  CHECK(cfg.fingerprint() == Config{}.fingerprint());
}

TEST_CASE("config fingerprint changes with any knob") {
  Config a;
  Config b;
  b.set("neighbors", "7");
  CHECK(a.fingerprint() != b.fingerprint());
  Config c;
  c.set("rho_tol", "8.5");
  CHECK(a.fingerprint() != c.fingerprint());
}

TEST_CASE("config set: unknown keys and bad values rejected") {
  Config cfg;
  CHECK_THROWS_AS(cfg.set("no_such_knob", "1"), DataError);
  CHECK_THROWS_AS(cfg.set("block_size", "abc"), DataError);
  CHECK_THROWS_AS(cfg.set("mode", "sideways"), DataError);
}

TEST_CASE("config validation: range checks") {
  Config cfg;
  cfg.block_size = 2;
  CHECK_THROWS_AS(cfg.validate(), DataError);
  cfg = Config{};
  cfg.trim = 2;  // 2*trim >= segments=4
  CHECK_THROWS_AS(cfg.validate(), DataError);
  cfg = Config{};
  cfg.matched_threshold = 12;  // t > n
  CHECK_THROWS_AS(cfg.validate(), DataError);
  cfg = Config{};
  cfg.orient_window = 4;  // even
  CHECK_THROWS_AS(cfg.validate(), DataError);
}

TEST_CASE("config file round trip preserves the fingerprint") {
  testutil::TempDir tmp;
  Config cfg;
  cfg.set("neighbors", "7");
  cfg.set("theta_tol", "0.3");
  cfg.set("mode", "literal");
  cfg.save(tmp.file("r.cfg"));
  Config back = Config::load(tmp.file("r.cfg"));
  CHECK(back.fingerprint() == cfg.fingerprint());
  CHECK(back.neighbors == 7);
  CHECK(back.mode == ThetaMode::kLiteral);

  {
    std::ofstream out(tmp.file("bad.cfg"));
    out << "nonsense_key=3\n";
  }
  CHECK_THROWS_AS(Config::load(tmp.file("bad.cfg")), DataError);
}
