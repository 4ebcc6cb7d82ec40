// License: Apache 2.0. See LICENSE file in root directory.
// Copyright(c) 2026 RidgeKit Contributors.

#include <cstdint>
#include <fstream>
#include <random>

#include "core/dataset.hpp"
#include "core/image.hpp"
#include "doctest.h"
#include "testutil.hpp"

using namespace ridgekit;

namespace {

void write_bytes(const std::string& path, const void* data, std::size_t size) {
  std::ofstream out(path, std::ios::binary);
  out.write(static_cast<const char*>(data), static_cast<std::streamsize>(size));
}

}  // namespace

TEST_CASE("load_image: 2x2 binary PGM maps 0-255 to [0,1]") {
  testutil::TempDir tmp;
  const unsigned char pgm[] = {'P', '5', '\n', '2', ' ', '2', '\n', '2', '5', '5', '\n',
                               0, 255, 128, 64};
  write_bytes(tmp.file("a.pgm"), pgm, sizeof(pgm));
  GrayImage img = load_image(tmp.file("a.pgm"));
  REQUIRE(img.width == 2);
  REQUIRE(img.height == 2);
  CHECK(img.at(0, 0) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(img.at(1, 0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(img.at(0, 1) == doctest::Approx(0.50196).epsilon(1e-4));
  CHECK(img.at(1, 1) == doctest::Approx(0.25098).epsilon(1e-4));
}

TEST_CASE("load_image: ASCII PGM and all-zero image") {
  testutil::TempDir tmp;
  {
    std::ofstream out(tmp.file("z.pgm"));
    out << "P2\n64 64\n255\n";
    for (int i = 0; i < 64 * 64; ++i) out << "0\n";
  }
  GrayImage img = load_image(tmp.file("z.pgm"));
  CHECK(img.width == 64);
  for (double v : img.pixels) CHECK(v == 0.0);
}

TEST_CASE("load_image: truncated header / bad format errors") {
  testutil::TempDir tmp;
  write_bytes(tmp.file("trunc.pgm"), "P5\n64", 5);
  CHECK_THROWS_AS(load_image(tmp.file("trunc.pgm")), DataError);
  write_bytes(tmp.file("junk.bin"), "hello world", 11);
  CHECK_THROWS_AS(load_image(tmp.file("junk.bin")), DataError);
  CHECK_THROWS_AS(load_image(tmp.file("missing.pgm")), DataError);
}

TEST_CASE("load_image: 8-bit grayscale PNG") {
  // 3x2 image, rows {0,128,255} and {10,20,30}.
  static const std::uint8_t png[] = {
      0x89, 0x50, 0x4e, 0x47, 0x0d, 0x0a, 0x1a, 0x0a, 0x00, 0x00, 0x00, 0x0d, 0x49,
      0x48, 0x44, 0x52, 0x00, 0x00, 0x00, 0x03, 0x00, 0x00, 0x00, 0x02, 0x08, 0x00,
      0x00, 0x00, 0x00, 0xb8, 0x1f, 0x39, 0xc6, 0x00, 0x00, 0x00, 0x10, 0x49, 0x44,
      0x41, 0x54, 0x78, 0x9c, 0x63, 0x60, 0x68, 0xf8, 0xcf, 0xc0, 0x25, 0x22, 0x07,
      0x00, 0x08, 0x67, 0x01, 0xbc, 0x9c, 0x67, 0x35, 0xa0, 0x00, 0x00, 0x00, 0x00,
      0x49, 0x45, 0x4e, 0x44, 0xae, 0x42, 0x60, 0x82};
  testutil::TempDir tmp;
  write_bytes(tmp.file("g.png"), png, sizeof(png));
  GrayImage img = load_image(tmp.file("g.png"));
  REQUIRE(img.width == 3);
  REQUIRE(img.height == 2);
  CHECK(img.at(0, 0) == 0.0);
  CHECK(img.at(1, 0) == doctest::Approx(128.0 / 255.0));
  CHECK(img.at(2, 0) == doctest::Approx(1.0));
  CHECK(img.at(0, 1) == doctest::Approx(10.0 / 255.0));
}

TEST_CASE("PGM round-trip reproduces pixels exactly") {
  testutil::TempDir tmp;
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> level(0, 255);
  GrayImage img(37, 23);
  for (double& v : img.pixels) v = level(rng) / 255.0;
  save_pgm(img, tmp.file("rt.pgm"));
  GrayImage back = load_image(tmp.file("rt.pgm"));
  REQUIRE(back.pixels.size() == img.pixels.size());
  for (std::size_t i = 0; i < img.pixels.size(); ++i) CHECK(back.pixels[i] == img.pixels[i]);
}

TEST_CASE("normalize: constant image maps to constant target mean") {
  GrayImage img(8, 8, 0.7);
  GrayImage out = normalize(img, 0.5, 0.01);
  for (double v : out.pixels) CHECK(v == 0.5);
}

TEST_CASE("normalize: matching stats is the identity") {
  GrayImage img = testutil::make_stripes(64, 64, 8.0, ridgekit::kPi / 2.0);
  double m = image_mean(img);
  double v = image_variance(img);
  GrayImage out = normalize(img, m, v);
  for (std::size_t i = 0; i < img.pixels.size(); ++i)
    CHECK(out.pixels[i] == doctest::Approx(img.pixels[i]).epsilon(1e-12));
}

TEST_CASE("normalize: two-pixel {0,1} with targets (0.5, 0.25) is unchanged") {
  GrayImage img(2, 1);
  img.at(0, 0) = 0.0;
  img.at(1, 0) = 1.0;
  // Oracle: mean = 0.5, population variance = 0.25 already.
  CHECK(image_mean(img) == doctest::Approx(0.5));
  CHECK(image_variance(img) == doctest::Approx(0.25));
  GrayImage out = normalize(img, 0.5, 0.25);
  CHECK(out.at(0, 0) == doctest::Approx(0.0));
  CHECK(out.at(1, 0) == doctest::Approx(1.0));
}

TEST_CASE("normalize: hits target stats and is idempotent") {
  GrayImage img = testutil::make_stripes(48, 48, 10.0, 0.3);
  GrayImage a = normalize(img, 0.5, 0.01);
  CHECK(image_mean(a) == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(image_variance(a) == doctest::Approx(0.01).epsilon(1e-9));
  GrayImage b = normalize(a, 0.5, 0.01);
  for (std::size_t i = 0; i < a.pixels.size(); ++i)
    CHECK(b.pixels[i] == doctest::Approx(a.pixels[i]).epsilon(1e-9));
}

TEST_CASE("load_dataset: counts, ordering, and error paths") {
  testutil::TempDir tmp;
  GrayImage dummy(4, 4, 0.5);
  save_pgm(dummy, tmp.file("x1.pgm"));
  save_pgm(dummy, tmp.file("x2.pgm"));
  save_pgm(dummy, tmp.file("y1.pgm"));
  save_pgm(dummy, tmp.file("y2.pgm"));

  SUBCASE("well-formed manifest") {
    std::ofstream out(tmp.file("m.tsv"));
    out << "#ridgekit-manifest v1\n";
    out << "bob\t2\tx2.pgm\n";
    out << "alice\t1\ty1.pgm\n";
    out << "bob\t1\tx1.pgm\n";
    out << "alice\t2\ty2.pgm\n";
    out.close();
    DatasetIndex idx = load_dataset(tmp.file("m.tsv"));
    REQUIRE(idx.size() == 4);
    CHECK(idx.samples_per_subject == 2);
    // Deterministic order: subject lexicographic, then sample ascending.
    CHECK(idx.entries[0].subject == "alice");
    CHECK(idx.entries[0].sample == 1);
    CHECK(idx.entries[1].sample == 2);
    CHECK(idx.entries[2].subject == "bob");
  }

  SUBCASE("single entry manifest") {
    std::ofstream out(tmp.file("one.tsv"));
    out << "#ridgekit-manifest v1\nsolo\t1\tx1.pgm\n";
    out.close();
    DatasetIndex idx = load_dataset(tmp.file("one.tsv"));
    CHECK(idx.size() == 1);
    CHECK(idx.samples_per_subject == 1);
  }

  SUBCASE("duplicate entry rejected") {
    std::ofstream out(tmp.file("dup.tsv"));
    out << "#ridgekit-manifest v1\nA\t1\tx1.pgm\nA\t1\tx2.pgm\n";
    out.close();
    CHECK_THROWS_AS(load_dataset(tmp.file("dup.tsv")), DataError);
  }

  SUBCASE("inconsistent sample counts rejected") {
    std::ofstream out(tmp.file("bad.tsv"));
    out << "#ridgekit-manifest v1\nA\t1\tx1.pgm\nA\t2\tx2.pgm\nB\t1\ty1.pgm\n";
    out.close();
    CHECK_THROWS_AS(load_dataset(tmp.file("bad.tsv")), DataError);
  }

  SUBCASE("missing referenced file rejected") {
    std::ofstream out(tmp.file("miss.tsv"));
    out << "#ridgekit-manifest v1\nA\t1\tnope.pgm\n";
    out.close();
    CHECK_THROWS_AS(load_dataset(tmp.file("miss.tsv")), DataError);
  }

  SUBCASE("missing header rejected") {
    std::ofstream out(tmp.file("nohdr.tsv"));
    out << "A\t1\tx1.pgm\n";
    out.close();
    CHECK_THROWS_AS(load_dataset(tmp.file("nohdr.tsv")), DataError);
  }
}
