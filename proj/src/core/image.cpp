// License: Apache 2.0. See LICENSE file in root directory.
// Copyright(c) 2026 RidgeKit Contributors.

#include "core/image.hpp"

#include <png.h>

#include <algorithm>
#include <cmath>
#include <csetjmp>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <memory>
#include <sstream>

#include "core/common.hpp"

namespace ridgekit {

double GrayImage::sample(double x, double y) const {
  double cx = std::clamp(x, 0.0, static_cast<double>(width - 1));
  double cy = std::clamp(y, 0.0, static_cast<double>(height - 1));
  int x0 = static_cast<int>(std::floor(cx));
  int y0 = static_cast<int>(std::floor(cy));
  int x1 = std::min(x0 + 1, width - 1);
  int y1 = std::min(y0 + 1, height - 1);
  double fx = cx - x0;
  double fy = cy - y0;
  double top = at(x0, y0) * (1.0 - fx) + at(x1, y0) * fx;
  double bot = at(x0, y1) * (1.0 - fx) + at(x1, y1) * fx;
  return top * (1.0 - fy) + bot * fy;
}

std::size_t BinaryImage::count() const {
  std::size_t n = 0;
  for (auto b : bits) n += b != 0;
  return n;
}

namespace {

// Skips whitespace and '#' comments inside a PGM header.
bool next_header_token(std::istream& in, std::string& tok) {
  tok.clear();
  int c;
  while ((c = in.get()) != EOF) {
    if (c == '#') {
      while ((c = in.get()) != EOF && c != '\n') {
      }
      continue;
    }
    if (std::isspace(c)) continue;
    break;
  }
  if (c == EOF) return false;
  do {
    tok.push_back(static_cast<char>(c));
    c = in.get();
  } while (c != EOF && !std::isspace(c) && c != '#');
  if (c == '#') in.unget();
  return true;
}

GrayImage load_pgm(std::ifstream& in, const std::string& path) {
  std::string magic, tok;
  if (!next_header_token(in, magic)) throw DataError(path + ": truncated PGM header");
  bool ascii = magic == "P2";
  if (!ascii && magic != "P5") throw DataError(path + ": unsupported PNM type " + magic);

  long dims[3];
  for (int i = 0; i < 3; ++i) {
    if (!next_header_token(in, tok)) throw DataError(path + ": truncated PGM header");
    try {
      dims[i] = std::stol(tok);
    } catch (const std::exception&) {
      throw DataError(path + ": bad PGM header token '" + tok + "'");
    }
  }
  long w = dims[0], h = dims[1], maxval = dims[2];
  if (w <= 0 || h <= 0) throw DataError(path + ": zero-sized image");
  if (maxval <= 0 || maxval > 255) throw DataError(path + ": unsupported PGM maxval");

  GrayImage img(static_cast<int>(w), static_cast<int>(h));
  std::size_t n = img.pixels.size();
  if (ascii) {
    for (std::size_t i = 0; i < n; ++i) {
      long v;
      if (!(in >> v)) throw DataError(path + ": truncated PGM pixel data");
      if (v < 0 || v > maxval) throw DataError(path + ": PGM pixel out of range");
      img.pixels[i] = static_cast<double>(v) / maxval;
    }
  } else {
    // P5: exactly one whitespace byte separates header and raster.
    std::vector<std::uint8_t> raw(n);
    in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(n));
    if (static_cast<std::size_t>(in.gcount()) != n)
      throw DataError(path + ": truncated PGM pixel data");
    for (std::size_t i = 0; i < n; ++i)
      img.pixels[i] = static_cast<double>(raw[i]) / maxval;
  }
  return img;
}

GrayImage load_png(const std::string& path) {
  std::FILE* fp = std::fopen(path.c_str(), "rb");
  if (!fp) throw DataError(path + ": cannot open file");
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!png || !info) {
    if (png) png_destroy_read_struct(&png, &info, nullptr);
    std::fclose(fp);
    throw DataError(path + ": libpng init failed");
  }
  std::vector<std::uint8_t> data;
  std::vector<png_bytep> rows;
  png_uint_32 w = 0, h = 0;
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    std::fclose(fp);
    throw DataError(path + ": corrupt PNG");
  }
  png_init_io(png, fp);
  png_read_info(png, info);
  w = png_get_image_width(png, info);
  h = png_get_image_height(png, info);
  int color = png_get_color_type(png, info);
  int depth = png_get_bit_depth(png, info);
  if (color != PNG_COLOR_TYPE_GRAY || depth != 8) {
    png_destroy_read_struct(&png, &info, nullptr);
    std::fclose(fp);
    throw DataError(path + ": only 8-bit grayscale PNG is supported");
  }
  if (w == 0 || h == 0) {
    png_destroy_read_struct(&png, &info, nullptr);
    std::fclose(fp);
    throw DataError(path + ": zero-sized image");
  }
  data.resize(static_cast<std::size_t>(w) * h);
  rows.resize(h);
  for (png_uint_32 y = 0; y < h; ++y) rows[y] = data.data() + static_cast<std::size_t>(y) * w;
  png_read_image(png, rows.data());
  png_destroy_read_struct(&png, &info, nullptr);
  std::fclose(fp);

  GrayImage img(static_cast<int>(w), static_cast<int>(h));
  for (std::size_t i = 0; i < data.size(); ++i)
    img.pixels[i] = static_cast<double>(data[i]) / 255.0;
  return img;
}

void write_pgm_bytes(const std::vector<std::uint8_t>& bytes, int w, int h,
                     const std::string& path, const std::string& comment) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError(path + ": cannot open for writing");
  out << "P5\n";
  if (!comment.empty()) {
    for (const auto& line : split(comment, '\n'))
      if (!line.empty()) out << "# " << line << "\n";
  }
  out << w << " " << h << "\n255\n";
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw DataError(path + ": write failed");
}

}  // namespace

GrayImage load_image(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError(path + ": cannot open file");
  char sig[2] = {0, 0};
  in.read(sig, 2);
  if (in.gcount() != 2) throw DataError(path + ": file too short");
  in.seekg(0);
  if (sig[0] == 'P' && (sig[1] == '5' || sig[1] == '2')) return load_pgm(in, path);
  if (static_cast<unsigned char>(sig[0]) == 0x89 && sig[1] == 'P') {
    in.close();
    return load_png(path);
  }
  throw DataError(path + ": unsupported image format");
}

void save_pgm(const GrayImage& img, const std::string& path, const std::string& comment) {
  if (img.empty()) throw DataError(path + ": refusing to write empty image");
  std::vector<std::uint8_t> bytes(img.pixels.size());
  for (std::size_t i = 0; i < bytes.size(); ++i) {
    double v = std::clamp(img.pixels[i], 0.0, 1.0);
    bytes[i] = static_cast<std::uint8_t>(std::lround(v * 255.0));
  }
  write_pgm_bytes(bytes, img.width, img.height, path, comment);
}

void save_pgm(const BinaryImage& img, const std::string& path, const std::string& comment) {
  std::vector<std::uint8_t> bytes(img.bits.size());
  for (std::size_t i = 0; i < bytes.size(); ++i) bytes[i] = img.bits[i] ? 255 : 0;
  write_pgm_bytes(bytes, img.width, img.height, path, comment);
}

double image_mean(const GrayImage& img) {
  double s = 0.0;
  for (double v : img.pixels) s += v;
  return s / static_cast<double>(img.pixels.size());
}

double image_variance(const GrayImage& img) {
  double m = image_mean(img);
  double s = 0.0;
  for (double v : img.pixels) s += (v - m) * (v - m);
  return s / static_cast<double>(img.pixels.size());
}

GrayImage normalize(const GrayImage& img, double target_mean, double target_var) {
  if (img.empty()) throw DataError("normalize: empty image");
  auto [lo, hi] = std::minmax_element(img.pixels.begin(), img.pixels.end());
  double m = image_mean(img);
  double var = image_variance(img);
  GrayImage out(img.width, img.height);
  if (*lo == *hi || var <= 0.0) {
    std::fill(out.pixels.begin(), out.pixels.end(), target_mean);
    return out;
  }
  double gain = std::sqrt(target_var / var);
  for (std::size_t i = 0; i < img.pixels.size(); ++i)
    out.pixels[i] = target_mean + (img.pixels[i] - m) * gain;
  return out;
}

}  // namespace ridgekit
