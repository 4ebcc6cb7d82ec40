/* License: Apache 2.0. See LICENSE file in root directory.
 * Copyright(c) 2026 RidgeKit Contributors.
 *
 * Public C interface of the ridgekit fingerprint library. All state lives
 * behind opaque handles; every fallible call returns an rk_status and leaves
 * a human-readable message in rk_last_error() (thread-local). Handles are
 * created by rk_*_load/create/... functions and released with the matching
 * rk_*_free; freeing NULL is a no-op. Distinct handles may be used from
 * different threads concurrently.
 */

#ifndef RIDGEKIT_H
#define RIDGEKIT_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rk_status {
  RK_OK = 0,
  RK_ERR_USAGE = 1,    /* bad arguments / misuse of the API */
  RK_ERR_DATA = 2,     /* malformed or inconsistent input data */
  RK_ERR_PIPELINE = 3, /* a processing stage failed on valid input */
  RK_ERR_INTERNAL = 4
} rk_status;

typedef struct rk_image rk_image;
typedef struct rk_config rk_config;
typedef struct rk_dataset rk_dataset;
typedef struct rk_artifacts rk_artifacts;
typedef struct rk_minutiae rk_minutiae;
typedef struct rk_fingercode rk_fingercode;
typedef struct rk_report rk_report;
typedef struct rk_synthspec rk_synthspec;

const char* rk_version(void);

/* Message for the most recent failure on this thread ("" if none). */
const char* rk_last_error(void);

/* ---- configuration -------------------------------------------------- */

rk_config* rk_config_create(void);
rk_status rk_config_set(rk_config* cfg, const char* key, const char* value);
rk_status rk_config_get(const rk_config* cfg, const char* key, char* buf, size_t cap);
rk_status rk_config_load(const char* path, rk_config** out);
rk_status rk_config_save(const rk_config* cfg, const char* path);
/* Hex hash of the canonical serialization; stable across runs. */
rk_status rk_config_fingerprint(const rk_config* cfg, char* buf, size_t cap);
rk_status rk_config_validate(const rk_config* cfg);
void rk_config_free(rk_config* cfg);

/* ---- images ---------------------------------------------------------- */

/* PGM (P5/P2) or 8-bit grayscale PNG; intensities map to [0,1]. */
rk_status rk_image_load(const char* path, rk_image** out);
rk_status rk_image_create(int width, int height, const double* pixels, rk_image** out);
int rk_image_width(const rk_image* img);
int rk_image_height(const rk_image* img);
/* Row-major copy into caller storage (width*height doubles). */
rk_status rk_image_pixels(const rk_image* img, double* buf, size_t cap);
rk_status rk_image_save_pgm(const rk_image* img, const char* path);
void rk_image_free(rk_image* img);

/* ---- dataset manifests ------------------------------------------------ */

rk_status rk_dataset_load(const char* manifest_path, rk_dataset** out);
int rk_dataset_size(const rk_dataset* ds);
int rk_dataset_subject_count(const rk_dataset* ds);
int rk_dataset_samples_per_subject(const rk_dataset* ds);
rk_status rk_dataset_entry(const rk_dataset* ds, int i, char* subject_buf,
                           size_t subject_cap, int* sample, char* path_buf,
                           size_t path_cap);
/* FVC-protocol pair counts: S*s(s-1)/2 genuine, S(S-1)/2 impostor. */
rk_status rk_dataset_pair_counts(const rk_dataset* ds, long* genuine, long* impostor);
void rk_dataset_free(rk_dataset* ds);

/* ---- enhancement ------------------------------------------------------ */

rk_status rk_enhance(const rk_image* img, const rk_config* cfg, rk_artifacts** out);
/* what: "enhanced" | "binary" | "skeleton" (PGM),
 *       "orientation" | "frequency" (text grids). */
rk_status rk_artifacts_save(const rk_artifacts* art, const char* what, const char* path);
void rk_artifacts_free(rk_artifacts* art);

/* ---- minutiae ---------------------------------------------------------- */

rk_status rk_extract(const rk_image* img, const rk_config* cfg, const char* image_id,
                     rk_minutiae** out);
int rk_minutiae_count(const rk_minutiae* m);
/* kind: 0 = ending, 1 = bifurcation. */
rk_status rk_minutiae_get(const rk_minutiae* m, int i, double* x, double* y,
                          double* theta, int* kind);
rk_status rk_minutiae_save(const rk_minutiae* m, const char* path);
rk_status rk_minutiae_load(const char* path, rk_minutiae** out);
void rk_minutiae_free(rk_minutiae* m);

/* ---- finger-codes ------------------------------------------------------ */

rk_status rk_encode(const rk_minutiae* m, const rk_config* cfg, const char* subject,
                    const char* sample, rk_fingercode** out);
int rk_fingercode_size(const rk_fingercode* code); /* minutiae count N */
int rk_fingercode_n(const rk_fingercode* code);    /* neighbors per code */
rk_status rk_fingercode_save(const rk_fingercode* code, const char* path,
                             const char* comment);
rk_status rk_fingercode_load(const char* path, rk_fingercode** out);
void rk_fingercode_free(rk_fingercode* code);

/* ---- matching ----------------------------------------------------------- */

rk_status rk_match(const rk_fingercode* candidate, const rk_fingercode* templ,
                   const rk_config* cfg, double* score, int* matched_pairs,
                   int* candidate_count, int* template_count);

/* ---- evaluation --------------------------------------------------------- */

/* FMR/FNMR curves and EER from raw score lists. */
rk_status rk_rates_compute(const double* genuine, size_t genuine_count,
                           const double* impostor, size_t impostor_count,
                           rk_report** out);
rk_status rk_report_eer(const rk_report* rep, double* eer, double* threshold);
rk_status rk_report_save_csv(const rk_report* rep, const char* path,
                             const char* comment);
void rk_report_free(rk_report* rep);

/* Full FVC protocol over a manifest: enhance + extract + encode every
 * sample, match every genuine and impostor pair. Optional outputs are
 * skipped when their path is NULL. */
rk_status rk_evaluate(const char* manifest_path, const rk_config* cfg, int jobs,
                      const char* report_csv_path, const char* matches_tsv_path,
                      double* eer, double* matches_per_sec, long* total_matches);

/* Table-style EER grid over (n, t); cells with t > n are emitted as '-'. */
rk_status rk_sweep(const char* manifest_path, const rk_config* cfg, int jobs,
                   int n_min, int n_max, int t_min, int t_max, const char* csv_path);

/* ---- synthetic patterns -------------------------------------------------- */

rk_status rk_synthspec_create(unsigned long long seed, int width, int height,
                              double period, int endings, int bifurcations,
                              double noise_sigma, rk_synthspec** out);
rk_status rk_synthspec_load(const char* path, rk_synthspec** out);
/* Rigid transform (dx, dy, alpha about the image center) plus fresh noise;
 * ground-truth minutiae move with the pattern. */
rk_status rk_synth_render(const rk_synthspec* spec, double dx, double dy, double alpha,
                          unsigned long long noise_seed, rk_image** image,
                          rk_minutiae** truth);
void rk_synthspec_free(rk_synthspec* spec);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* RIDGEKIT_H */
