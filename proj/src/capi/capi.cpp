// License: Apache 2.0. See LICENSE file in root directory.
// Copyright(c) 2026 RidgeKit Contributors.

#include "ridgekit.h"

#include <cstring>
#include <fstream>
#include <string>

#include "core/common.hpp"
#include "core/config.hpp"
#include "core/dataset.hpp"
#include "core/encode.hpp"
#include "core/eval.hpp"
#include "core/image.hpp"
#include "core/match.hpp"
#include "core/minutiae.hpp"
#include "core/pipeline.hpp"
#include "core/synth.hpp"

struct rk_image {
  ridgekit::GrayImage img;
};
struct rk_config {
  ridgekit::Config cfg;
};
struct rk_dataset {
  ridgekit::DatasetIndex idx;
};
struct rk_artifacts {
  ridgekit::EnhanceArtifacts art;
};
struct rk_minutiae {
  ridgekit::MinutiaList list;
};
struct rk_fingercode {
  ridgekit::FingerCode code;
};
struct rk_report {
  ridgekit::EvalReport rep;
};
struct rk_synthspec {
  ridgekit::SynthSpec spec;
};

namespace {

thread_local std::string g_last_error;

rk_status fail(rk_status code, const std::string& msg) {
  g_last_error = msg;
  return code;
}

// Maps C++ exceptions onto status codes; clears the error slot on success.
template <typename Fn>
rk_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return RK_OK;
  } catch (const ridgekit::DataError& e) {
    return fail(RK_ERR_DATA, e.what());
  } catch (const ridgekit::PipelineError& e) {
    return fail(RK_ERR_PIPELINE, e.what());
  } catch (const std::exception& e) {
    return fail(RK_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(RK_ERR_INTERNAL, "unknown error");
  }
}

rk_status copy_string(const std::string& s, char* buf, size_t cap) {
  if (!buf || cap == 0) return fail(RK_ERR_USAGE, "null/empty output buffer");
  if (s.size() + 1 > cap) return fail(RK_ERR_USAGE, "output buffer too small");
  std::memcpy(buf, s.c_str(), s.size() + 1);
  return RK_OK;
}

ridgekit::MatchParams params_of(const rk_config* cfg) {
  return ridgekit::MatchParams::from_config(cfg->cfg);
}

}  // namespace

extern "C" {

const char* rk_version(void) { return "1.0.0"; }

const char* rk_last_error(void) { return g_last_error.c_str(); }

/* ---- configuration -------------------------------------------------- */

rk_config* rk_config_create(void) { return new rk_config{}; }

rk_status rk_config_set(rk_config* cfg, const char* key, const char* value) {
  if (!cfg || !key || !value) return fail(RK_ERR_USAGE, "null argument");
  return guarded([&] { cfg->cfg.set(key, value); });
}

rk_status rk_config_get(const rk_config* cfg, const char* key, char* buf, size_t cap) {
  if (!cfg || !key) return fail(RK_ERR_USAGE, "null argument");
  std::string value;
  rk_status st = guarded([&] { value = cfg->cfg.get(key); });
  if (st != RK_OK) return st;
  return copy_string(value, buf, cap);
}

rk_status rk_config_load(const char* path, rk_config** out) {
  if (!path || !out) return fail(RK_ERR_USAGE, "null argument");
  return guarded([&] { *out = new rk_config{ridgekit::Config::load(path)}; });
}

rk_status rk_config_save(const rk_config* cfg, const char* path) {
  if (!cfg || !path) return fail(RK_ERR_USAGE, "null argument");
  return guarded([&] { cfg->cfg.save(path); });
}

rk_status rk_config_fingerprint(const rk_config* cfg, char* buf, size_t cap) {
  if (!cfg) return fail(RK_ERR_USAGE, "null argument");
  return copy_string(cfg->cfg.fingerprint(), buf, cap);
}

rk_status rk_config_validate(const rk_config* cfg) {
  if (!cfg) return fail(RK_ERR_USAGE, "null argument");
  return guarded([&] { cfg->cfg.validate(); });
}

void rk_config_free(rk_config* cfg) { delete cfg; }

/* ---- images ---------------------------------------------------------- */

rk_status rk_image_load(const char* path, rk_image** out) {
  if (!path || !out) return fail(RK_ERR_USAGE, "null argument");
  return guarded([&] { *out = new rk_image{ridgekit::load_image(path)}; });
}

rk_status rk_image_create(int width, int height, const double* pixels, rk_image** out) {
  if (!pixels || !out) return fail(RK_ERR_USAGE, "null argument");
  if (width <= 0 || height <= 0) return fail(RK_ERR_USAGE, "non-positive dimensions");
  return guarded([&] {
    ridgekit::GrayImage img(width, height);
    std::memcpy(img.pixels.data(), pixels, img.pixels.size() * sizeof(double));
    *out = new rk_image{std::move(img)};
  });
}

int rk_image_width(const rk_image* img) { return img ? img->img.width : 0; }
int rk_image_height(const rk_image* img) { return img ? img->img.height : 0; }

rk_status rk_image_pixels(const rk_image* img, double* buf, size_t cap) {
  if (!img || !buf) return fail(RK_ERR_USAGE, "null argument");
  if (cap < img->img.pixels.size()) return fail(RK_ERR_USAGE, "output buffer too small");
  std::memcpy(buf, img->img.pixels.data(), img->img.pixels.size() * sizeof(double));
  g_last_error.clear();
  return RK_OK;
}

rk_status rk_image_save_pgm(const rk_image* img, const char* path) {
  if (!img || !path) return fail(RK_ERR_USAGE, "null argument");
  return guarded([&] { ridgekit::save_pgm(img->img, path); });
}

void rk_image_free(rk_image* img) { delete img; }

/* ---- dataset manifests ------------------------------------------------ */

rk_status rk_dataset_load(const char* manifest_path, rk_dataset** out) {
  if (!manifest_path || !out) return fail(RK_ERR_USAGE, "null argument");
  return guarded([&] { *out = new rk_dataset{ridgekit::load_dataset(manifest_path)}; });
}

int rk_dataset_size(const rk_dataset* ds) {
  return ds ? static_cast<int>(ds->idx.size()) : 0;
}
int rk_dataset_subject_count(const rk_dataset* ds) {
  return ds ? static_cast<int>(ds->idx.subjects.size()) : 0;
}
int rk_dataset_samples_per_subject(const rk_dataset* ds) {
  return ds ? ds->idx.samples_per_subject : 0;
}

rk_status rk_dataset_entry(const rk_dataset* ds, int i, char* subject_buf,
                           size_t subject_cap, int* sample, char* path_buf,
                           size_t path_cap) {
  if (!ds) return fail(RK_ERR_USAGE, "null argument");
  if (i < 0 || i >= static_cast<int>(ds->idx.size()))
    return fail(RK_ERR_USAGE, "entry index out of range");
  const auto& e = ds->idx.entries[static_cast<std::size_t>(i)];
  if (subject_buf) {
    rk_status st = copy_string(e.subject, subject_buf, subject_cap);
    if (st != RK_OK) return st;
  }
  if (sample) *sample = e.sample;
  if (path_buf) {
    rk_status st = copy_string(e.path, path_buf, path_cap);
    if (st != RK_OK) return st;
  }
  g_last_error.clear();
  return RK_OK;
}

rk_status rk_dataset_pair_counts(const rk_dataset* ds, long* genuine, long* impostor) {
  if (!ds) return fail(RK_ERR_USAGE, "null argument");
  return guarded([&] {
    if (genuine) *genuine = static_cast<long>(ridgekit::genuine_pairs(ds->idx).size());
    if (impostor) *impostor = static_cast<long>(ridgekit::impostor_pairs(ds->idx).size());
  });
}

void rk_dataset_free(rk_dataset* ds) { delete ds; }

/* ---- enhancement ------------------------------------------------------ */

rk_status rk_enhance(const rk_image* img, const rk_config* cfg, rk_artifacts** out) {
  if (!img || !cfg || !out) return fail(RK_ERR_USAGE, "null argument");
  return guarded([&] { *out = new rk_artifacts{ridgekit::run_enhance(img->img, cfg->cfg)}; });
}

rk_status rk_artifacts_save(const rk_artifacts* art, const char* what, const char* path) {
  if (!art || !what || !path) return fail(RK_ERR_USAGE, "null argument");
  std::string w = what;
  return guarded([&] {
    if (w == "enhanced") ridgekit::save_pgm(art->art.enhanced, path);
    else if (w == "binary") ridgekit::save_pgm(art->art.binary, path);
    else if (w == "skeleton") ridgekit::save_pgm(art->art.skeleton, path);
    else if (w == "orientation") ridgekit::save_orientation_grid(art->art.orientation, path);
    else if (w == "frequency") ridgekit::save_frequency_grid(art->art.frequency_filled, path);
    else throw ridgekit::DataError("unknown artifact '" + w + "'");
  });
}

void rk_artifacts_free(rk_artifacts* art) { delete art; }

/* ---- minutiae ---------------------------------------------------------- */

rk_status rk_extract(const rk_image* img, const rk_config* cfg, const char* image_id,
                     rk_minutiae** out) {
  if (!img || !cfg || !out) return fail(RK_ERR_USAGE, "null argument");
  std::string id = image_id ? image_id : "";
  return guarded(
      [&] { *out = new rk_minutiae{ridgekit::run_extract(img->img, cfg->cfg, id)}; });
}

int rk_minutiae_count(const rk_minutiae* m) {
  return m ? static_cast<int>(m->list.size()) : 0;
}

rk_status rk_minutiae_get(const rk_minutiae* m, int i, double* x, double* y,
                          double* theta, int* kind) {
  if (!m) return fail(RK_ERR_USAGE, "null argument");
  if (i < 0 || i >= static_cast<int>(m->list.size()))
    return fail(RK_ERR_USAGE, "minutia index out of range");
  const auto& mi = m->list[static_cast<std::size_t>(i)];
  if (x) *x = mi.x;
  if (y) *y = mi.y;
  if (theta) *theta = mi.theta;
  if (kind) *kind = mi.kind == ridgekit::MinutiaKind::kEnding ? 0 : 1;
  g_last_error.clear();
  return RK_OK;
}

rk_status rk_minutiae_save(const rk_minutiae* m, const char* path) {
  if (!m || !path) return fail(RK_ERR_USAGE, "null argument");
  return guarded([&] { ridgekit::save_minutiae(m->list, path); });
}

rk_status rk_minutiae_load(const char* path, rk_minutiae** out) {
  if (!path || !out) return fail(RK_ERR_USAGE, "null argument");
  return guarded([&] { *out = new rk_minutiae{ridgekit::load_minutiae(path)}; });
}

void rk_minutiae_free(rk_minutiae* m) { delete m; }

/* ---- finger-codes ------------------------------------------------------ */

rk_status rk_encode(const rk_minutiae* m, const rk_config* cfg, const char* subject,
                    const char* sample, rk_fingercode** out) {
  if (!m || !cfg || !out) return fail(RK_ERR_USAGE, "null argument");
  std::string subj = subject ? subject : "";
  std::string samp = sample ? sample : "";
  return guarded([&] {
    *out = new rk_fingercode{ridgekit::encode_fingerprint(
        m->list, cfg->cfg.neighbors, cfg->cfg.mode, subj, samp)};
  });
}

int rk_fingercode_size(const rk_fingercode* code) {
  return code ? static_cast<int>(code->code.size()) : 0;
}
int rk_fingercode_n(const rk_fingercode* code) { return code ? code->code.n : 0; }

rk_status rk_fingercode_save(const rk_fingercode* code, const char* path,
                             const char* comment) {
  if (!code || !path) return fail(RK_ERR_USAGE, "null argument");
  std::string c = comment ? comment : "";
  return guarded([&] { ridgekit::write_fingercode(code->code, path, c); });
}

rk_status rk_fingercode_load(const char* path, rk_fingercode** out) {
  if (!path || !out) return fail(RK_ERR_USAGE, "null argument");
  return guarded([&] { *out = new rk_fingercode{ridgekit::read_fingercode(path)}; });
}

void rk_fingercode_free(rk_fingercode* code) { delete code; }

/* ---- matching ----------------------------------------------------------- */

rk_status rk_match(const rk_fingercode* candidate, const rk_fingercode* templ,
                   const rk_config* cfg, double* score, int* matched_pairs,
                   int* candidate_count, int* template_count) {
  if (!candidate || !templ || !cfg) return fail(RK_ERR_USAGE, "null argument");
  return guarded([&] {
    ridgekit::MatchResult r =
        ridgekit::match_fingercodes(candidate->code, templ->code, params_of(cfg));
    if (score) *score = r.score;
    if (matched_pairs) *matched_pairs = r.matched_pairs;
    if (candidate_count) *candidate_count = r.candidate_count;
    if (template_count) *template_count = r.template_count;
  });
}

/* ---- evaluation --------------------------------------------------------- */

rk_status rk_rates_compute(const double* genuine, size_t genuine_count,
                           const double* impostor, size_t impostor_count,
                           rk_report** out) {
  if (!genuine || !impostor || !out) return fail(RK_ERR_USAGE, "null argument");
  return guarded([&] {
    std::vector<double> g(genuine, genuine + genuine_count);
    std::vector<double> i(impostor, impostor + impostor_count);
    *out = new rk_report{ridgekit::compute_rates(g, i)};
  });
}

rk_status rk_report_eer(const rk_report* rep, double* eer, double* threshold) {
  if (!rep) return fail(RK_ERR_USAGE, "null argument");
  if (eer) *eer = rep->rep.eer;
  if (threshold) *threshold = rep->rep.eer_threshold;
  g_last_error.clear();
  return RK_OK;
}

rk_status rk_report_save_csv(const rk_report* rep, const char* path,
                             const char* comment) {
  if (!rep || !path) return fail(RK_ERR_USAGE, "null argument");
  std::string c = comment ? comment : "";
  return guarded([&] { ridgekit::write_report_csv(rep->rep, path, c); });
}

void rk_report_free(rk_report* rep) { delete rep; }

rk_status rk_evaluate(const char* manifest_path, const rk_config* cfg, int jobs,
                      const char* report_csv_path, const char* matches_tsv_path,
                      double* eer, double* matches_per_sec, long* total_matches) {
  if (!manifest_path || !cfg) return fail(RK_ERR_USAGE, "null argument");
  return guarded([&] {
    ridgekit::DatasetIndex idx = ridgekit::load_dataset(manifest_path);
    auto codes = ridgekit::encode_dataset(idx, cfg->cfg, jobs, true);
    ridgekit::ProtocolOptions opts;
    opts.jobs = jobs;
    opts.log_matches = matches_tsv_path != nullptr;
    ridgekit::ProtocolResult res = ridgekit::run_protocol(idx, codes, params_of(cfg), opts);
    std::string comment = "cfg=" + cfg->cfg.fingerprint();
    if (report_csv_path) ridgekit::write_report_csv(res.report, report_csv_path, comment);
    if (matches_tsv_path) {
      std::ofstream out(matches_tsv_path);
      if (!out) throw ridgekit::DataError(std::string(matches_tsv_path) + ": cannot open");
      out << "# " << comment << "\n";
      for (const auto& line : res.match_log) out << line << '\n';
    }
    if (eer) *eer = res.report.eer;
    if (matches_per_sec)
      *matches_per_sec = res.elapsed_seconds > 0.0
                             ? static_cast<double>(res.total_matches) / res.elapsed_seconds
                             : 0.0;
    if (total_matches) *total_matches = static_cast<long>(res.total_matches);
  });
}

rk_status rk_sweep(const char* manifest_path, const rk_config* cfg, int jobs,
                   int n_min, int n_max, int t_min, int t_max, const char* csv_path) {
  if (!manifest_path || !cfg || !csv_path) return fail(RK_ERR_USAGE, "null argument");
  return guarded([&] {
    ridgekit::DatasetIndex idx = ridgekit::load_dataset(manifest_path);
    auto codes = ridgekit::encode_dataset(idx, cfg->cfg, jobs, true);
    ridgekit::SweepGrid grid = ridgekit::sweep_grid(idx, codes, n_min, n_max, t_min, t_max,
                                                    params_of(cfg), jobs);
    ridgekit::write_sweep_csv(grid, csv_path, "cfg=" + cfg->cfg.fingerprint());
  });
}

/* ---- synthetic patterns -------------------------------------------------- */

rk_status rk_synthspec_create(unsigned long long seed, int width, int height,
                              double period, int endings, int bifurcations,
                              double noise_sigma, rk_synthspec** out) {
  if (!out) return fail(RK_ERR_USAGE, "null argument");
  return guarded([&] {
    *out = new rk_synthspec{ridgekit::make_random_spec(seed, width, height, period,
                                                       endings, bifurcations, noise_sigma)};
  });
}

rk_status rk_synthspec_load(const char* path, rk_synthspec** out) {
  if (!path || !out) return fail(RK_ERR_USAGE, "null argument");
  return guarded([&] { *out = new rk_synthspec{ridgekit::load_synth_spec(path)}; });
}

rk_status rk_synth_render(const rk_synthspec* spec, double dx, double dy, double alpha,
                          unsigned long long noise_seed, rk_image** image,
                          rk_minutiae** truth) {
  if (!spec || !image) return fail(RK_ERR_USAGE, "null argument");
  return guarded([&] {
    ridgekit::RigidTransform tf{dx, dy, alpha};
    ridgekit::SynthResult res = ridgekit::impression(spec->spec, tf, noise_seed);
    *image = new rk_image{std::move(res.image)};
    if (truth) *truth = new rk_minutiae{std::move(res.truth)};
  });
}

void rk_synthspec_free(rk_synthspec* spec) { delete spec; }

} /* extern "C" */
