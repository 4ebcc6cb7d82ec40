// License: Apache 2.0. See LICENSE file in root directory.
// Copyright(c) 2026 RidgeKit Contributors.

#include "core/config.hpp"

#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <vector>

#include "core/common.hpp"

namespace ridgekit {

namespace {

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

int parse_int(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    int r = std::stoi(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return r;
  } catch (const std::exception&) {
    throw DataError("config: bad integer for " + key + ": '" + v + "'");
  }
}

double parse_double(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    double r = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return r;
  } catch (const std::exception&) {
    throw DataError("config: bad number for " + key + ": '" + v + "'");
  }
}

}  // namespace

const char* theta_mode_name(ThetaMode m) {
  return m == ThetaMode::kLiteral ? "literal" : "normalized";
}

ThetaMode theta_mode_from_name(const std::string& s) {
  if (s == "literal") return ThetaMode::kLiteral;
  if (s == "normalized") return ThetaMode::kNormalized;
  throw DataError("config: mode must be 'literal' or 'normalized', got '" + s + "'");
}

void Config::set(const std::string& key, const std::string& value) {
  if (key == "block_size") block_size = parse_int(key, value);
  else if (key == "g_thresh") g_thresh = parse_double(key, value);
  else if (key == "orient_window") orient_window = parse_int(key, value);
  else if (key == "segments") segments = parse_int(key, value);
  else if (key == "trim") trim = parse_int(key, value);
  else if (key == "f_min") f_min = parse_double(key, value);
  else if (key == "f_max") f_max = parse_double(key, value);
  else if (key == "k_theta") k_theta = parse_int(key, value);
  else if (key == "sigma_x") sigma_x = parse_double(key, value);
  else if (key == "sigma_y") sigma_y = parse_double(key, value);
  else if (key == "kernel_half_width") kernel_half_width = parse_int(key, value);
  else if (key == "passes") passes = parse_int(key, value);
  else if (key == "invert") invert = parse_int(key, value);
  else if (key == "target_mean") target_mean = parse_double(key, value);
  else if (key == "target_var") target_var = parse_double(key, value);
  else if (key == "kappa_max") kappa_max = parse_double(key, value);
  else if (key == "window") window = parse_int(key, value);
  else if (key == "d_min") d_min = parse_int(key, value);
  else if (key == "border") border = parse_int(key, value);
  else if (key == "trace_len") trace_len = parse_int(key, value);
  else if (key == "neighbors") neighbors = parse_int(key, value);
  else if (key == "rho_tol") rho_tol = parse_double(key, value);
  else if (key == "theta_tol") theta_tol = parse_double(key, value);
  else if (key == "phi_tol") phi_tol = parse_double(key, value);
  else if (key == "matched_threshold") matched_threshold = parse_int(key, value);
  else if (key == "mode") mode = theta_mode_from_name(value);
  else if (key == "match_rule") {
    if (value == "ge") match_rule = MatchRule::kAtLeast;
    else if (value == "eq") match_rule = MatchRule::kExact;
    else throw DataError("config: match_rule must be 'ge' or 'eq'");
  } else {
    throw DataError("config: unknown key '" + key + "'");
  }
}

std::string Config::get(const std::string& key) const {
  for (const auto& line : split(canonical(), '\n')) {
    auto eq = line.find('=');
    if (eq != std::string::npos && line.substr(0, eq) == key) return line.substr(eq + 1);
  }
  throw DataError("config: unknown key '" + key + "'");
}

std::string Config::canonical() const {
  // Keys in sorted order; doubles at full precision so distinct configs
  // always get distinct fingerprints.
  std::map<std::string, std::string> kv = {
      {"block_size", std::to_string(block_size)},
      {"border", std::to_string(border)},
      {"d_min", std::to_string(d_min)},
      {"f_max", fmt_double(f_max)},
      {"f_min", fmt_double(f_min)},
      {"g_thresh", fmt_double(g_thresh)},
      {"invert", std::to_string(invert)},
      {"k_theta", std::to_string(k_theta)},
      {"kappa_max", fmt_double(kappa_max)},
      {"kernel_half_width", std::to_string(kernel_half_width)},
      {"match_rule", match_rule == MatchRule::kAtLeast ? "ge" : "eq"},
      {"matched_threshold", std::to_string(matched_threshold)},
      {"mode", theta_mode_name(mode)},
      {"neighbors", std::to_string(neighbors)},
      {"orient_window", std::to_string(orient_window)},
      {"passes", std::to_string(passes)},
      {"phi_tol", fmt_double(phi_tol)},
      {"rho_tol", fmt_double(rho_tol)},
      {"segments", std::to_string(segments)},
      {"sigma_x", fmt_double(sigma_x)},
      {"sigma_y", fmt_double(sigma_y)},
      {"target_mean", fmt_double(target_mean)},
      {"target_var", fmt_double(target_var)},
      {"theta_tol", fmt_double(theta_tol)},
      {"trace_len", std::to_string(trace_len)},
      {"trim", std::to_string(trim)},
      {"window", std::to_string(window)},
  };
  std::ostringstream out;
  for (const auto& [k, v] : kv) out << k << '=' << v << '\n';
  return out.str();
}

std::string Config::fingerprint() const {
  char buf[24];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(fnv1a64(canonical())));
  return buf;
}

Config Config::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError(path + ": cannot open config");
  Config cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = ridgekit::trim(line);
    if (t.empty() || t[0] == '#') continue;
    auto eq = t.find('=');
    if (eq == std::string::npos)
      throw DataError(path + ":" + std::to_string(lineno) + ": expected key=value");
    cfg.set(ridgekit::trim(t.substr(0, eq)), ridgekit::trim(t.substr(eq + 1)));
  }
  cfg.validate();
  return cfg;
}

void Config::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw DataError(path + ": cannot open for writing");
  out << "# ridgekit config (cfg=" << fingerprint() << ")\n" << canonical();
}

void Config::validate() const {
  auto require = [](bool ok, const std::string& msg) {
    if (!ok) throw DataError("config: " + msg);
  };
  require(block_size >= 4, "block_size must be >= 4");
  require(g_thresh >= 0.0, "g_thresh must be >= 0");
  require(orient_window >= 1 && orient_window % 2 == 1, "orient_window must be odd and >= 1");
  require(segments >= 3, "segments must be >= 3");
  require(trim >= 0 && 2 * trim < segments, "need 2*trim < segments");
  require(f_min > 0.0 && f_max > f_min && f_max < 0.5, "need 0 < f_min < f_max < 0.5");
  require(k_theta >= 4, "k_theta must be >= 4");
  require(sigma_x > 0.0 && sigma_y > 0.0, "sigma_x/sigma_y must be > 0");
  require(kernel_half_width >= 1, "kernel_half_width must be >= 1");
  require(passes >= 1, "passes must be >= 1");
  require(invert == 0 || invert == 1, "invert must be 0 or 1");
  require(target_var > 0.0, "target_var must be > 0");
  require(kappa_max > 0.0 && kappa_max <= kPi / 2.0, "kappa_max must be in (0, pi/2]");
  require(window >= 3 && window % 2 == 1, "window must be odd and >= 3");
  require(d_min >= 1, "d_min must be >= 1");
  require(border >= 0, "border must be >= 0");
  require(trace_len >= 3, "trace_len must be >= 3");
  require(neighbors >= 1, "neighbors must be >= 1");
  require(rho_tol > 0.0, "rho_tol must be > 0");
  require(theta_tol > 0.0 && theta_tol < kPi, "theta_tol must be in (0, pi)");
  require(phi_tol > 0.0 && phi_tol < kPi, "phi_tol must be in (0, pi)");
  require(matched_threshold >= 1, "matched_threshold must be >= 1");
  require(matched_threshold <= neighbors, "matched_threshold must be <= neighbors");
}

}  // namespace ridgekit
