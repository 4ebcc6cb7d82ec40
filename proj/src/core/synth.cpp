// License: Apache 2.0. See LICENSE file in root directory.
// Copyright(c) 2026 RidgeKit Contributors.

#include "core/synth.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>

#include "core/common.hpp"

namespace ridgekit {

namespace {

double smoothstep(double edge0, double edge1, double x) {
  double t = std::clamp((x - edge0) / (edge1 - edge0), 0.0, 1.0);
  return t * t * (3.0 - 2.0 * t);
}

// Canonical-frame pattern evaluator. Planned modifications are confined to
// one ridge band each (|ls| < period/2 around the snapped center line).
struct Pattern {
  const SynthSpec* spec = nullptr;
  double ux = 0.0, uy = 0.0;  // ridge normal (unit)
  double vx = 0.0, vy = 0.0;  // ridge direction (unit)
  double phase0 = 0.0;        // random carrier offset

  struct Mod {
    double qx, qy;      // snapped position
    double dx, dy;      // unit direction (ending: into the ridge; bif: stem)
    MinutiaKind kind;
  };
  std::vector<Mod> mods;

  double phase(double x, double y) const {
    double s = x * ux + y * uy;
    if (spec->field == FieldKind::kWavy) {
      double t = x * vx + y * vy;
      double c = spec->wave_amp * spec->wave_lambda / kTwoPi;
      s += c * std::sin(kTwoPi * t / spec->wave_lambda);
    }
    return kTwoPi * s / spec->period + phase0;
  }

  double intensity(double x, double y) const {
    const double A = spec->amplitude;
    const double T = spec->period;
    double base = 0.5 + A * std::cos(phase(x, y));
    for (const Mod& m : mods) {
      double rx = x - m.qx, ry = y - m.qy;
      double ls = rx * ux + ry * uy;          // across the band
      if (std::fabs(ls) >= T / 2.0) continue;  // other bands untouched
      double lt = rx * m.dx + ry * m.dy;      // along the ridge
      if (m.kind == MinutiaKind::kEnding) {
        // Beyond the tip the bump gives way to a wide valley floor.
        double w = 1.0 - smoothstep(-2.0, 2.0, lt);
        base = base * (1.0 - w) + (0.5 - A) * w;
      } else {
        // Opposite the stem the band carries two half-period bumps.
        double w = 1.0 - smoothstep(-3.0, 3.0, lt);
        double fork = 0.5 - A * std::cos(2.0 * (kTwoPi * ls / T));
        base = base * (1.0 - w) + fork * w;
      }
    }
    return base;
  }
};

Pattern build_pattern(const SynthSpec& spec) {
  if (spec.period < 3.0 || spec.period > 25.0)
    throw DataError("synth: period must lie in [3, 25] px");
  if (!spec.plan.empty() && spec.field == FieldKind::kWavy)
    throw DataError("synth: infeasible minutiae plan (plans need a uniform field)");

  Pattern pat;
  pat.spec = &spec;
  double normal = spec.theta + kPi / 2.0;
  pat.ux = std::cos(normal);
  pat.uy = std::sin(normal);
  pat.vx = std::cos(spec.theta);
  pat.vy = std::sin(spec.theta);
  std::mt19937_64 rng(spec.seed);
  pat.phase0 = std::uniform_real_distribution<double>(0.0, kTwoPi)(rng);

  const double T = spec.period;
  for (const auto& pm : spec.plan) {
    Pattern::Mod m;
    m.kind = pm.kind;
    // Snap the position onto the nearest ridge center line.
    double offset = wrap_angle(pat.phase(pm.x, pm.y)) * T / kTwoPi;
    m.qx = pm.x - offset * pat.ux;
    m.qy = pm.y - offset * pat.uy;
    // Snap the direction onto the ridge axis, keeping the hinted sense.
    double along = std::cos(pm.theta) * pat.vx + std::sin(pm.theta) * pat.vy;
    double sign = along >= 0.0 ? 1.0 : -1.0;
    m.dx = sign * pat.vx;
    m.dy = sign * pat.vy;
    pat.mods.push_back(m);
  }

  // Plan feasibility: margins, pairwise spacing, one minutia per band.
  for (std::size_t i = 0; i < pat.mods.size(); ++i) {
    const auto& a = pat.mods[i];
    if (a.qx < spec.margin || a.qy < spec.margin || a.qx > spec.width - 1 - spec.margin ||
        a.qy > spec.height - 1 - spec.margin)
      throw DataError("synth: infeasible minutiae plan (too close to the border)");
    for (std::size_t j = i + 1; j < pat.mods.size(); ++j) {
      const auto& b = pat.mods[j];
      double dist = std::hypot(a.qx - b.qx, a.qy - b.qy);
      if (dist < 2.0 * spec.d_min)
        throw DataError("synth: infeasible minutiae plan (pair closer than 2*d_min)");
      double ls_a = a.qx * pat.ux + a.qy * pat.uy;
      double ls_b = b.qx * pat.ux + b.qy * pat.uy;
      if (std::fabs(ls_a - ls_b) < T)
        throw DataError("synth: infeasible minutiae plan (two minutiae share a ridge)");
    }
  }
  return pat;
}

SynthResult render(const SynthSpec& spec, const RigidTransform& tf,
                   std::uint64_t noise_seed) {
  Pattern pat = build_pattern(spec);
  const double cx = (spec.width - 1) / 2.0;
  const double cy = (spec.height - 1) / 2.0;
  const double ca = std::cos(tf.alpha), sa = std::sin(tf.alpha);

  SynthResult res;
  res.image = GrayImage(spec.width, spec.height);
  for (int y = 0; y < spec.height; ++y) {
    for (int x = 0; x < spec.width; ++x) {
      // Pull back through the rigid transform and evaluate analytically.
      double px = x - cx - tf.dx, py = y - cy - tf.dy;
      double qx = ca * px + sa * py + cx;
      double qy = -sa * px + ca * py + cy;
      res.image.at(x, y) = pat.intensity(qx, qy);
    }
  }
  if (spec.noise_sigma > 0.0) {
    std::mt19937_64 rng(noise_seed);
    std::normal_distribution<double> noise(0.0, spec.noise_sigma);
    for (double& v : res.image.pixels) v = std::clamp(v + noise(rng), 0.0, 1.0);
  } else {
    for (double& v : res.image.pixels) v = std::clamp(v, 0.0, 1.0);
  }

  for (const auto& m : pat.mods) {
    double px = m.qx - cx, py = m.qy - cy;
    Minutia gt;
    gt.x = ca * px - sa * py + cx + tf.dx;
    gt.y = sa * px + ca * py + cy + tf.dy;
    gt.theta = wrap_two_pi(std::atan2(m.dy, m.dx) + tf.alpha);
    gt.kind = m.kind;
    if (gt.x < 1 || gt.y < 1 || gt.x > spec.width - 2 || gt.y > spec.height - 2)
      throw DataError("synth: out-of-frame transform");
    res.truth.minutiae.push_back(gt);
  }
  return res;
}

}  // namespace

SynthResult generate(const SynthSpec& spec) {
  return render(spec, RigidTransform{}, spec.seed);
}

SynthResult impression(const SynthSpec& spec, const RigidTransform& transform,
                       std::uint64_t noise_seed) {
  if (std::fabs(transform.alpha) > kPi / 6.0 + 1e-12)
    throw DataError("synth: impression rotation must satisfy |alpha| <= 30 degrees");
  return render(spec, transform, noise_seed);
}

SynthSpec make_random_spec(std::uint64_t seed, int width, int height, double period,
                           int endings, int bifurcations, double noise_sigma) {
  SynthSpec spec;
  spec.seed = seed;
  spec.width = width;
  spec.height = height;
  spec.period = period;
  spec.noise_sigma = noise_sigma;

  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
  spec.theta = std::uniform_real_distribution<double>(0.0, kPi)(rng);

  double normal = spec.theta + kPi / 2.0;
  double ux = std::cos(normal), uy = std::sin(normal);

  std::uniform_real_distribution<double> px(spec.margin, width - 1 - spec.margin);
  std::uniform_real_distribution<double> py(spec.margin, height - 1 - spec.margin);
  std::bernoulli_distribution flip(0.5);

  int wanted = endings + bifurcations;
  int attempts = 0;
  while (static_cast<int>(spec.plan.size()) < wanted && attempts < 20000) {
    ++attempts;
    PlannedMinutia pm;
    pm.x = px(rng);
    pm.y = py(rng);
    pm.theta = flip(rng) ? spec.theta : wrap_two_pi(spec.theta + kPi);
    pm.kind = static_cast<int>(spec.plan.size()) < endings ? MinutiaKind::kEnding
                                                           : MinutiaKind::kBifurcation;
    bool ok = true;
    for (const auto& other : spec.plan) {
      double dist = std::hypot(pm.x - other.x, pm.y - other.y);
      double ls_a = pm.x * ux + pm.y * uy;
      double ls_b = other.x * ux + other.y * uy;
      if (dist < 2.0 * spec.d_min + period || std::fabs(ls_a - ls_b) < 1.5 * period) {
        ok = false;
        break;
      }
    }
    if (ok) spec.plan.push_back(pm);
  }
  if (static_cast<int>(spec.plan.size()) < wanted)
    throw DataError("synth: could not place the requested minutiae plan");
  return spec;
}

SynthSpec load_synth_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError(path + ": cannot open synth spec");
  SynthSpec spec;
  int endings = 0, bifurcations = 0;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    auto eq = t.find('=');
    if (eq == std::string::npos)
      throw DataError(path + ":" + std::to_string(lineno) + ": expected key=value");
    std::string key = trim(t.substr(0, eq));
    std::string value = trim(t.substr(eq + 1));
    try {
      if (key == "seed") spec.seed = std::stoull(value);
      else if (key == "width") spec.width = std::stoi(value);
      else if (key == "height") spec.height = std::stoi(value);
      else if (key == "period") spec.period = std::stod(value);
      else if (key == "theta") spec.theta = std::stod(value);
      else if (key == "field") {
        if (value == "uniform") spec.field = FieldKind::kUniform;
        else if (value == "wavy") spec.field = FieldKind::kWavy;
        else throw DataError(path + ": field must be 'uniform' or 'wavy'");
      } else if (key == "wave_amp") spec.wave_amp = std::stod(value);
      else if (key == "wave_lambda") spec.wave_lambda = std::stod(value);
      else if (key == "endings") endings = std::stoi(value);
      else if (key == "bifurcations") bifurcations = std::stoi(value);
      else if (key == "noise_sigma") spec.noise_sigma = std::stod(value);
      else if (key == "amplitude") spec.amplitude = std::stod(value);
      else throw DataError(path + ": unknown synth key '" + key + "'");
    } catch (const DataError&) {
      throw;
    } catch (const std::exception&) {
      throw DataError(path + ":" + std::to_string(lineno) + ": bad value for " + key);
    }
  }
  if (endings + bifurcations > 0) {
    SynthSpec planned = make_random_spec(spec.seed, spec.width, spec.height, spec.period,
                                         endings, bifurcations, spec.noise_sigma);
    planned.amplitude = spec.amplitude;
    planned.field = spec.field;
    planned.wave_amp = spec.wave_amp;
    planned.wave_lambda = spec.wave_lambda;
    return planned;
  }
  return spec;
}

}  // namespace ridgekit
