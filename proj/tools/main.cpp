// License: Apache 2.0. See LICENSE file in root directory.
// Copyright(c) 2026 RidgeKit Contributors.
//
// ridgekit command-line front end. Exit codes: 0 success, 1 usage error,
// 2 data error, 3 pipeline failure.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ridgekit.h"

namespace fs = std::filesystem;

namespace {

struct Exit {
  int code;
  std::string message;
};

int status_to_exit(rk_status st) {
  switch (st) {
    case RK_OK: return 0;
    case RK_ERR_USAGE: return 1;
    case RK_ERR_DATA: return 2;
    default: return 3;
  }
}

void check(rk_status st, const std::string& context) {
  if (st == RK_OK) return;
  throw Exit{status_to_exit(st), context + ": " + rk_last_error()};
}

template <typename T, void (*Free)(T*)>
using Handle = std::unique_ptr<T, decltype([](T* p) { Free(p); })>;

using ConfigPtr = Handle<rk_config, rk_config_free>;
using ImagePtr = Handle<rk_image, rk_image_free>;
using MinutiaePtr = Handle<rk_minutiae, rk_minutiae_free>;
using FingercodePtr = Handle<rk_fingercode, rk_fingercode_free>;
using ArtifactsPtr = Handle<rk_artifacts, rk_artifacts_free>;
using DatasetPtr = Handle<rk_dataset, rk_dataset_free>;
using SynthPtr = Handle<rk_synthspec, rk_synthspec_free>;

std::string fingerprint_of(const rk_config* cfg) {
  char buf[32];
  check(rk_config_fingerprint(cfg, buf, sizeof(buf)), "config fingerprint");
  return buf;
}

// Config assembly: file first, then per-knob CLI overrides.
struct ConfigArgs {
  std::string config_path;
  std::vector<std::pair<std::string, std::string>> overrides;
  int jobs = 1;

  void attach(CLI::App* cmd) {
    cmd->add_option("--config", config_path, "key=value config file");
    cmd->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
    auto knob = [this, cmd](const char* flag, const char* key, const char* help) {
      cmd->add_option_function<std::string>(
          flag, [this, key](const std::string& v) { overrides.emplace_back(key, v); },
          help);
    };
    knob("--block-size", "block_size", "block size b, px");
    knob("--neighbors", "neighbors", "n nearest neighbors in codes");
    knob("--matched-threshold", "matched_threshold", "matched-neighbor threshold t");
    knob("--rho-tol", "rho_tol", "distance tolerance, px");
    knob("--theta-tol", "theta_tol", "angle tolerance, rad");
    knob("--phi-tol", "phi_tol", "direction-difference tolerance, rad");
    knob("--mode", "mode", "theta mode: literal|normalized");
    knob("--passes", "passes", "Gabor enhancement passes");
    knob("--invert", "invert", "1 = input has dark ridges");
    knob("--match-rule", "match_rule", "threshold rule: ge|eq");
  }

  ConfigPtr build() const {
    rk_config* raw = nullptr;
    if (!config_path.empty()) {
      check(rk_config_load(config_path.c_str(), &raw), config_path);
    } else {
      raw = rk_config_create();
    }
    ConfigPtr cfg(raw);
    for (const auto& [key, value] : overrides)
      check(rk_config_set(cfg.get(), key.c_str(), value.c_str()), "config " + key);
    check(rk_config_validate(cfg.get()), "config");
    return cfg;
  }
};

ImagePtr load_image(const std::string& path) {
  rk_image* img = nullptr;
  check(rk_image_load(path.c_str(), &img), path);
  return ImagePtr(img);
}

// ---- enhance -------------------------------------------------------------

int cmd_enhance(const std::string& input, const std::string& out_dir,
                const ConfigArgs& cargs) {
  ConfigPtr cfg = cargs.build();
  ImagePtr img = load_image(input);
  rk_artifacts* raw = nullptr;
  check(rk_enhance(img.get(), cfg.get(), &raw), input);
  ArtifactsPtr art(raw);

  fs::create_directories(out_dir);
  std::string stem = fs::path(input).stem().string();
  const std::pair<const char*, const char*> outputs[] = {
      {"enhanced", "_enhanced.pgm"},   {"binary", "_binary.pgm"},
      {"skeleton", "_skeleton.pgm"},   {"orientation", "_orientation.txt"},
      {"frequency", "_frequency.txt"},
  };
  for (const auto& [what, suffix] : outputs) {
    std::string path = (fs::path(out_dir) / (stem + suffix)).string();
    check(rk_artifacts_save(art.get(), what, path.c_str()), path);
    std::printf("wrote %s\n", path.c_str());
  }
  return 0;
}

// ---- extract ---------------------------------------------------------------

int cmd_extract(const std::string& input, const std::string& out_path,
                const ConfigArgs& cargs) {
  ConfigPtr cfg = cargs.build();
  ImagePtr img = load_image(input);
  rk_minutiae* raw = nullptr;
  std::string id = fs::path(input).stem().string();
  check(rk_extract(img.get(), cfg.get(), id.c_str(), &raw), input);
  MinutiaePtr list(raw);
  check(rk_minutiae_save(list.get(), out_path.c_str()), out_path);
  std::printf("wrote %s (%d minutiae, cfg=%s)\n", out_path.c_str(),
              rk_minutiae_count(list.get()), fingerprint_of(cfg.get()).c_str());
  return 0;
}

// ---- encode -----------------------------------------------------------------

bool looks_like_minutiae_file(const std::string& path) {
  std::ifstream in(path);
  std::string line;
  return in && std::getline(in, line) && line.rfind("#ridgekit-minutiae", 0) == 0;
}

int cmd_encode(const std::string& input, const std::string& out_path,
               const std::string& subject, const std::string& sample,
               const ConfigArgs& cargs) {
  ConfigPtr cfg = cargs.build();
  MinutiaePtr list;
  if (looks_like_minutiae_file(input)) {
    rk_minutiae* raw = nullptr;
    check(rk_minutiae_load(input.c_str(), &raw), input);
    list.reset(raw);
  } else {
    ImagePtr img = load_image(input);
    rk_minutiae* raw = nullptr;
    check(rk_extract(img.get(), cfg.get(), fs::path(input).stem().string().c_str(), &raw),
          input);
    list.reset(raw);
  }
  rk_fingercode* raw_code = nullptr;
  check(rk_encode(list.get(), cfg.get(), subject.c_str(), sample.c_str(), &raw_code),
        input);
  FingercodePtr code(raw_code);
  std::string comment = "cfg=" + fingerprint_of(cfg.get());
  check(rk_fingercode_save(code.get(), out_path.c_str(), comment.c_str()), out_path);
  std::printf("wrote %s (N=%d n=%d)\n", out_path.c_str(), rk_fingercode_size(code.get()),
              rk_fingercode_n(code.get()));
  return 0;
}

// ---- enroll -------------------------------------------------------------------

struct GalleryEntry {
  std::string subject;
  int sample = 0;
  std::string file;  // relative to the gallery dir, "-" when absent
  bool ok = false;
};

std::string gallery_code_name(const std::string& subject, int sample) {
  return subject + "_" + std::to_string(sample) + ".fc";
}

void write_gallery_index(const std::string& dir, const std::string& cfg_fp,
                         const std::vector<GalleryEntry>& entries) {
  std::string path = (fs::path(dir) / "index.tsv").string();
  std::ofstream out(path);
  if (!out) throw Exit{2, path + ": cannot open for writing"};
  out << "#ridgekit-gallery v1\n# cfg=" << cfg_fp << "\n";
  for (const auto& e : entries)
    out << e.subject << '\t' << e.sample << '\t' << (e.ok ? e.file : "-") << '\t'
        << (e.ok ? "ok" : "absent") << '\n';
}

std::pair<std::string, std::vector<GalleryEntry>> read_gallery_index(
    const std::string& dir) {
  std::string path = (fs::path(dir) / "index.tsv").string();
  std::ifstream in(path);
  if (!in) throw Exit{2, path + ": cannot open gallery index"};
  std::string line;
  if (!std::getline(in, line) || line != "#ridgekit-gallery v1")
    throw Exit{2, path + ": missing '#ridgekit-gallery v1' header"};
  std::string cfg_fp;
  std::vector<GalleryEntry> entries;
  while (std::getline(in, line)) {
    if (line.rfind("# cfg=", 0) == 0) {
      cfg_fp = line.substr(6);
      continue;
    }
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    GalleryEntry e;
    std::string status;
    std::getline(ls, e.subject, '\t');
    ls >> e.sample;
    ls.ignore(1);
    std::getline(ls, e.file, '\t');
    std::getline(ls, status);
    e.ok = status == "ok";
    entries.push_back(e);
  }
  return {cfg_fp, entries};
}

int cmd_enroll(const std::string& manifest, const std::string& gallery_dir,
               const ConfigArgs& cargs) {
  ConfigPtr cfg = cargs.build();
  rk_dataset* raw_ds = nullptr;
  check(rk_dataset_load(manifest.c_str(), &raw_ds), manifest);
  DatasetPtr ds(raw_ds);
  fs::create_directories(gallery_dir);

  std::string cfg_fp = fingerprint_of(cfg.get());
  std::string comment = "cfg=" + cfg_fp;
  int total = rk_dataset_size(ds.get());
  std::vector<GalleryEntry> entries(static_cast<std::size_t>(total));
  int failures = 0;

  for (int i = 0; i < total; ++i) {
    char subject[256], path[4096];
    int sample = 0;
    check(rk_dataset_entry(ds.get(), i, subject, sizeof(subject), &sample, path,
                           sizeof(path)),
          manifest);
    GalleryEntry& e = entries[static_cast<std::size_t>(i)];
    e.subject = subject;
    e.sample = sample;
    e.file = gallery_code_name(e.subject, e.sample);

    rk_image* img = nullptr;
    rk_minutiae* list = nullptr;
    rk_fingercode* code = nullptr;
    std::string sample_str = std::to_string(sample);
    rk_status st = rk_image_load(path, &img);
    if (st == RK_OK) st = rk_extract(img, cfg.get(), subject, &list);
    if (st == RK_OK) st = rk_encode(list, cfg.get(), subject, sample_str.c_str(), &code);
    if (st == RK_OK) {
      std::string out_path = (fs::path(gallery_dir) / e.file).string();
      st = rk_fingercode_save(code, out_path.c_str(), comment.c_str());
    }
    if (st == RK_OK) {
      e.ok = true;
    } else {
      ++failures;
      std::fprintf(stderr, "enroll: %s sample %d failed: %s\n", subject, sample,
                   rk_last_error());
    }
    rk_fingercode_free(code);
    rk_minutiae_free(list);
    rk_image_free(img);
  }

  write_gallery_index(gallery_dir, cfg_fp, entries);
  std::printf("enrolled %d/%d codes into %s (cfg=%s)\n", total - failures, total,
              gallery_dir.c_str(), cfg_fp.c_str());
  if (failures == total) throw Exit{3, "enroll: every entry failed"};
  return 0;
}

// ---- identify -----------------------------------------------------------------

int cmd_identify(const std::string& probe, const std::string& gallery_dir, int top_k,
                 const ConfigArgs& cargs) {
  ConfigPtr cfg = cargs.build();
  auto [gallery_fp, entries] = read_gallery_index(gallery_dir);
  std::string cfg_fp = fingerprint_of(cfg.get());
  if (gallery_fp != cfg_fp)
    throw Exit{2, "gallery was enrolled under config " + gallery_fp +
                      " but current config is " + cfg_fp};

  ImagePtr img = load_image(probe);
  rk_minutiae* raw_list = nullptr;
  check(rk_extract(img.get(), cfg.get(), fs::path(probe).stem().string().c_str(),
                   &raw_list),
        probe);
  MinutiaePtr list(raw_list);
  rk_fingercode* raw_code = nullptr;
  check(rk_encode(list.get(), cfg.get(), "probe", "0", &raw_code), probe);
  FingercodePtr probe_code(raw_code);

  struct Ranked {
    double score;
    std::string subject;
    int sample;
  };
  std::vector<Ranked> ranking;
  int usable = 0;
  for (const auto& e : entries) {
    if (!e.ok) continue;
    ++usable;
    std::string path = (fs::path(gallery_dir) / e.file).string();
    rk_fingercode* raw_tmpl = nullptr;
    check(rk_fingercode_load(path.c_str(), &raw_tmpl), path);
    FingercodePtr tmpl(raw_tmpl);
    double score = 0.0;
    check(rk_match(probe_code.get(), tmpl.get(), cfg.get(), &score, nullptr, nullptr,
                   nullptr),
          path);
    ranking.push_back({score, e.subject, e.sample});
  }
  if (usable == 0) throw Exit{2, "gallery is empty"};

  std::sort(ranking.begin(), ranking.end(), [](const Ranked& a, const Ranked& b) {
    if (a.score != b.score) return a.score > b.score;
    if (a.subject != b.subject) return a.subject < b.subject;
    return a.sample < b.sample;
  });
  int shown = std::min<int>(top_k, static_cast<int>(ranking.size()));
  for (int i = 0; i < shown; ++i)
    std::printf("%d\t%s\t%d\t%.9g\n", i + 1, ranking[i].subject.c_str(),
                ranking[i].sample, ranking[i].score);
  return 0;
}

// ---- evaluate / sweep -----------------------------------------------------------

int cmd_evaluate(const std::string& manifest, const std::string& out_dir,
                 bool write_matches, const ConfigArgs& cargs) {
  ConfigPtr cfg = cargs.build();
  fs::create_directories(out_dir);
  std::string report_path = (fs::path(out_dir) / "report.csv").string();
  std::string matches_path = (fs::path(out_dir) / "matches.tsv").string();
  double eer = 0.0, rate = 0.0;
  long total = 0;
  check(rk_evaluate(manifest.c_str(), cfg.get(), cargs.jobs, report_path.c_str(),
                    write_matches ? matches_path.c_str() : nullptr, &eer, &rate, &total),
        manifest);
  std::printf("matches: %ld\neer: %.4f%%\nthroughput: %.1f matches/sec\nreport: %s\n",
              total, eer * 100.0, rate, report_path.c_str());
  if (write_matches) std::printf("matches log: %s\n", matches_path.c_str());
  return 0;
}

int cmd_sweep(const std::string& manifest, const std::string& out_csv, int n_min,
              int n_max, int t_min, int t_max, const ConfigArgs& cargs) {
  ConfigPtr cfg = cargs.build();
  if (fs::path(out_csv).has_parent_path())
    fs::create_directories(fs::path(out_csv).parent_path());
  check(rk_sweep(manifest.c_str(), cfg.get(), cargs.jobs, n_min, n_max, t_min, t_max,
                 out_csv.c_str()),
        manifest);
  std::printf("wrote %s\n", out_csv.c_str());
  return 0;
}

// ---- synth -------------------------------------------------------------------

int cmd_synth(const std::string& out_dir, const std::string& spec_path, int fingers,
              int impressions, unsigned long long seed, int size, double period,
              int endings, int bifurcations, double noise, double max_rotation_deg,
              double max_shift) {
  fs::create_directories(out_dir);
  std::ofstream manifest((fs::path(out_dir) / "manifest.tsv").string());
  if (!manifest) throw Exit{2, out_dir + ": cannot write manifest"};
  manifest << "#ridgekit-manifest v1\n";

  std::mt19937_64 rng(seed * 0x2545f4914f6cdd1dull + 1);
  std::uniform_real_distribution<double> rot(-max_rotation_deg * M_PI / 180.0,
                                             max_rotation_deg * M_PI / 180.0);
  std::uniform_real_distribution<double> shift(-max_shift, max_shift);

  for (int f = 0; f < fingers; ++f) {
    SynthPtr spec;
    rk_synthspec* raw_spec = nullptr;
    if (!spec_path.empty()) {
      check(rk_synthspec_load(spec_path.c_str(), &raw_spec), spec_path);
    } else {
      check(rk_synthspec_create(seed + static_cast<unsigned long long>(f), size, size,
                                period, endings, bifurcations, noise, &raw_spec),
            "synth spec");
    }
    spec.reset(raw_spec);

    for (int s = 0; s < impressions; ++s) {
      double dx = s == 0 ? 0.0 : shift(rng);
      double dy = s == 0 ? 0.0 : shift(rng);
      double alpha = s == 0 ? 0.0 : rot(rng);
      unsigned long long noise_seed = seed * 1000003ull + f * 131ull + s;

      rk_image* img = nullptr;
      rk_minutiae* truth = nullptr;
      check(rk_synth_render(spec.get(), dx, dy, alpha, noise_seed, &img, &truth),
            "synth render");
      ImagePtr image(img);
      MinutiaePtr gt(truth);

      char name[64];
      std::snprintf(name, sizeof(name), "f%03d_s%d", f, s + 1);
      std::string img_rel = std::string(name) + ".pgm";
      std::string img_path = (fs::path(out_dir) / img_rel).string();
      std::string gt_path = (fs::path(out_dir) / (std::string(name) + ".min")).string();
      check(rk_image_save_pgm(image.get(), img_path.c_str()), img_path);
      check(rk_minutiae_save(gt.get(), gt_path.c_str()), gt_path);
      char subject[32];
      std::snprintf(subject, sizeof(subject), "f%03d", f);
      manifest << subject << '\t' << (s + 1) << '\t' << img_rel << '\n';
    }
  }
  std::printf("wrote %d x %d images under %s\n", fingers, impressions, out_dir.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ridgekit: contactless fingerprint enhancement, encoding and matching"};
  app.require_subcommand(1);

  ConfigArgs cargs;

  // enhance
  std::string in_path, out_path = ".";
  auto* enhance = app.add_subcommand("enhance", "run the enhancement stages, dump artifacts");
  enhance->add_option("input", in_path, "input image (PGM/PNG)")->required();
  enhance->add_option("--out", out_path, "output directory")->required();
  cargs.attach(enhance);

  // extract
  auto* extract = app.add_subcommand("extract", "extract minutiae to a text file");
  std::string ex_in, ex_out;
  extract->add_option("input", ex_in, "input image")->required();
  extract->add_option("--out", ex_out, "output minutiae file")->required();
  cargs.attach(extract);

  // encode
  auto* encode = app.add_subcommand("encode", "build a finger-code from an image or minutiae file");
  std::string en_in, en_out, en_subject = "-", en_sample = "0";
  encode->add_option("input", en_in, "image or minutiae file")->required();
  encode->add_option("--out", en_out, "output finger-code file")->required();
  encode->add_option("--subject", en_subject, "subject id recorded in the header");
  encode->add_option("--sample", en_sample, "sample id recorded in the header");
  cargs.attach(encode);

  // enroll
  auto* enroll = app.add_subcommand("enroll", "encode every manifest entry into a gallery");
  std::string er_manifest, er_gallery;
  enroll->add_option("manifest", er_manifest, "dataset manifest")->required();
  enroll->add_option("--gallery", er_gallery, "gallery directory")->required();
  cargs.attach(enroll);

  // identify
  auto* identify = app.add_subcommand("identify", "rank gallery entries against a probe image");
  std::string id_probe, id_gallery;
  int id_top = 5;
  identify->add_option("probe", id_probe, "probe image")->required();
  identify->add_option("--gallery", id_gallery, "gallery directory")->required();
  identify->add_option("--top", id_top, "entries to print")->check(CLI::PositiveNumber);
  cargs.attach(identify);

  // evaluate
  auto* evaluate = app.add_subcommand("evaluate", "run the FVC protocol over a manifest");
  std::string ev_manifest, ev_out = ".";
  bool ev_matches = false;
  evaluate->add_option("manifest", ev_manifest, "dataset manifest")->required();
  evaluate->add_option("--out", ev_out, "output directory");
  evaluate->add_flag("--matches", ev_matches, "also write per-pair matches.tsv");
  cargs.attach(evaluate);

  // sweep
  auto* sweep = app.add_subcommand("sweep", "EER grid over (n, t) combinations");
  std::string sw_manifest, sw_out = "sweep.csv";
  int sw_nmin = 1, sw_nmax = 10, sw_tmin = 1, sw_tmax = 10;
  sweep->add_option("manifest", sw_manifest, "dataset manifest")->required();
  sweep->add_option("--out", sw_out, "output CSV path");
  sweep->add_option("--n-min", sw_nmin, "smallest n");
  sweep->add_option("--n-max", sw_nmax, "largest n");
  sweep->add_option("--t-min", sw_tmin, "smallest t");
  sweep->add_option("--t-max", sw_tmax, "largest t");
  cargs.attach(sweep);

  // synth
  auto* synth = app.add_subcommand("synth", "generate synthetic fingerprint-like images");
  std::string sy_out = "synth", sy_spec;
  int sy_fingers = 1, sy_impressions = 1, sy_size = 256, sy_endings = 8, sy_bifs = 2;
  unsigned long long sy_seed = 1;
  double sy_period = 8.0, sy_noise = 0.02, sy_maxrot = 15.0, sy_maxshift = 10.0;
  synth->add_option("--out", sy_out, "output directory")->required();
  synth->add_option("--spec", sy_spec, "synth spec file (key=value)");
  synth->add_option("--fingers", sy_fingers, "distinct fingers")->check(CLI::PositiveNumber);
  synth->add_option("--impressions", sy_impressions, "impressions per finger")
      ->check(CLI::PositiveNumber);
  synth->add_option("--seed", sy_seed, "master seed");
  synth->add_option("--size", sy_size, "image side, px");
  synth->add_option("--period", sy_period, "ridge period, px");
  synth->add_option("--endings", sy_endings, "planned endings per finger");
  synth->add_option("--bifurcations", sy_bifs, "planned bifurcations per finger");
  synth->add_option("--noise", sy_noise, "additive Gaussian noise sigma");
  synth->add_option("--max-rotation", sy_maxrot, "max |rotation| between impressions, deg");
  synth->add_option("--max-shift", sy_maxshift, "max |shift| between impressions, px");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (enhance->parsed()) return cmd_enhance(in_path, out_path, cargs);
    if (extract->parsed()) return cmd_extract(ex_in, ex_out, cargs);
    if (encode->parsed()) return cmd_encode(en_in, en_out, en_subject, en_sample, cargs);
    if (enroll->parsed()) return cmd_enroll(er_manifest, er_gallery, cargs);
    if (identify->parsed()) return cmd_identify(id_probe, id_gallery, id_top, cargs);
    if (evaluate->parsed()) return cmd_evaluate(ev_manifest, ev_out, ev_matches, cargs);
    if (sweep->parsed())
      return cmd_sweep(sw_manifest, sw_out, sw_nmin, sw_nmax, sw_tmin, sw_tmax, cargs);
    if (synth->parsed())
      return cmd_synth(sy_out, sy_spec, sy_fingers, sy_impressions, sy_seed, sy_size,
                       sy_period, sy_endings, sy_bifs, sy_noise, sy_maxrot, sy_maxshift);
  } catch (const Exit& e) {
    std::fprintf(stderr, "error: %s\n", e.message.c_str());
    return e.code;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
  return 1;
}
