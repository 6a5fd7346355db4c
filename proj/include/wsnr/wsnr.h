/*
 * C interface to the weighted spatial outlier library.
 *
 * Every handle is opaque and owned by the caller once returned; release it
 * with the matching *_free function. Functions return WSNR_OK or an error
 * status; the message of the most recent failure on the calling thread is
 * available from wsnr_last_error().
 */
#ifndef WSNR_H
#define WSNR_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(WSNR_BUILDING)
#    define WSNR_API __declspec(dllexport)
#  else
#    define WSNR_API __declspec(dllimport)
#  endif
#else
#  define WSNR_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum wsnr_status {
    WSNR_OK = 0,
    WSNR_E_INVALID_ARGUMENT,
    WSNR_E_PARSE,
    WSNR_E_DUPLICATE_ID,
    WSNR_E_INVALID_GEOMETRY,
    WSNR_E_DEGENERATE_GEOMETRY,
    WSNR_E_UNKNOWN_OBJECT,
    WSNR_E_REFERENTIAL,
    WSNR_E_INVALID_RADIUS,
    WSNR_E_NOT_POLYGONAL,
    WSNR_E_ZERO_DISTANCE,
    WSNR_E_ZERO_COST,
    WSNR_E_NO_CONNECTIONS,
    WSNR_E_COEFFICIENT_SUM,
    WSNR_E_MISSING_FACTOR_DATA,
    WSNR_E_MISSING_NETWORK,
    WSNR_E_EMPTY_NEIGHBORHOOD,
    WSNR_E_WEIGHTS_NOT_NORMALIZED,
    WSNR_E_DEGENERATE_DISTRIBUTION,
    WSNR_E_TOO_FEW_OBJECTS,
    WSNR_E_MISSING_ATTRIBUTE,
    WSNR_E_EMPTY_DATASET,
    WSNR_E_BASELINE_ZERO_ERROR,
    WSNR_E_MISMATCHED_DATASETS,
    WSNR_E_INVALID_SPEC,
    WSNR_E_TOO_LARGE,
    WSNR_E_IO,
    WSNR_E_INTERNAL
} wsnr_status;

/* Broad class of a status, used for process exit codes. */
typedef enum wsnr_status_class {
    WSNR_CLASS_OK = 0,
    WSNR_CLASS_CONFIG,
    WSNR_CLASS_DATA,
    WSNR_CLASS_DEGENERATE,
    WSNR_CLASS_INTERNAL
} wsnr_status_class;

typedef enum wsnr_model {
    WSNR_MODEL_ONE_DIMENSIONAL = 0,
    WSNR_MODEL_CLASSICAL_SPATIAL,
    WSNR_MODEL_WEIGHTED_SPATIAL
} wsnr_model;

typedef enum wsnr_format { WSNR_FORMAT_CSV = 0, WSNR_FORMAT_JSON } wsnr_format;

typedef enum wsnr_gen_kind { WSNR_GEN_GRID = 0, WSNR_GEN_RANDOM_POINTS } wsnr_gen_kind;

typedef struct wsnr_dataset wsnr_dataset;
typedef struct wsnr_network wsnr_network;
typedef struct wsnr_config wsnr_config;
typedef struct wsnr_framework wsnr_framework;
typedef struct wsnr_report wsnr_report;
typedef struct wsnr_comparison wsnr_comparison;
typedef struct wsnr_run_result wsnr_run_result;

/* ---- diagnostics ------------------------------------------------------ */

WSNR_API const char* wsnr_last_error(void);
WSNR_API const char* wsnr_status_name(wsnr_status status);
WSNR_API wsnr_status_class wsnr_status_classify(wsnr_status status);
WSNR_API const char* wsnr_version(void);

/* ---- datasets and networks -------------------------------------------- */

WSNR_API wsnr_status wsnr_dataset_load(const char* geojson_path, wsnr_dataset** out);
WSNR_API wsnr_status wsnr_dataset_join_attributes(wsnr_dataset* dataset, const char* csv_path,
                                                  const char* key_column);
WSNR_API wsnr_status wsnr_dataset_save(const wsnr_dataset* dataset, const char* geojson_path);
WSNR_API size_t wsnr_dataset_size(const wsnr_dataset* dataset);
/* Borrowed pointer valid while the dataset lives. */
WSNR_API const char* wsnr_dataset_id(const wsnr_dataset* dataset, size_t index);
WSNR_API wsnr_status wsnr_dataset_attribute(const wsnr_dataset* dataset, size_t index,
                                            const char* name, double* out);
WSNR_API void wsnr_dataset_free(wsnr_dataset* dataset);

WSNR_API wsnr_status wsnr_network_load(const char* csv_path, const wsnr_dataset* dataset,
                                       wsnr_network** out);
WSNR_API wsnr_status wsnr_network_save(const wsnr_network* network, const char* csv_path);
WSNR_API size_t wsnr_network_edge_count(const wsnr_network* network);
WSNR_API wsnr_status wsnr_network_min_cost(const wsnr_network* network, const char* from,
                                           const char* to, double limit, double* cost,
                                           int* reachable);
WSNR_API void wsnr_network_free(wsnr_network* network);

typedef struct wsnr_plant {
    size_t index;
    double sigmas;
} wsnr_plant;

typedef struct wsnr_gen_spec {
    wsnr_gen_kind kind;
    size_t rows;
    size_t cols;
    double cell_size;
    size_t n_points;
    double extent;
    size_t links;
    size_t smoothing;
    const wsnr_plant* plants;
    size_t plant_count;
    uint64_t seed;
    const char* attribute; /* NULL selects "value" */
} wsnr_gen_spec;

/* Fills `spec` with the library defaults (5x5 unit grid, no smoothing). */
WSNR_API void wsnr_gen_spec_init(wsnr_gen_spec* spec);
WSNR_API wsnr_status wsnr_generate(const wsnr_gen_spec* spec, wsnr_dataset** dataset,
                                   wsnr_network** network);

/* ---- configuration ---------------------------------------------------- */

WSNR_API wsnr_config* wsnr_config_create(void);
/* Keys: dataset, network, attributes, join-key, attribute, model (comma
 * separated list), strategy, alpha, beta, delta, radius, cost-limit, theta,
 * polygon-mode, out, format, strict. */
WSNR_API wsnr_status wsnr_config_set(wsnr_config* config, const char* key, const char* value);
/* Applies every `key = value` line of a flat config file. */
WSNR_API wsnr_status wsnr_config_load(wsnr_config* config, const char* path);
WSNR_API wsnr_status wsnr_config_validate(const wsnr_config* config);
WSNR_API size_t wsnr_config_model_count(const wsnr_config* config);
WSNR_API int wsnr_config_strict(const wsnr_config* config);
WSNR_API void wsnr_config_free(wsnr_config* config);

/* ---- analysis --------------------------------------------------------- */

/* `network` may be NULL when the configuration does not need one. */
WSNR_API wsnr_status wsnr_framework_build(const wsnr_dataset* dataset, const wsnr_network* network,
                                          const wsnr_config* config, wsnr_framework** out);
WSNR_API size_t wsnr_framework_neighbor_count(const wsnr_framework* framework, size_t index);
WSNR_API wsnr_status wsnr_framework_neighbor(const wsnr_framework* framework, size_t index,
                                             size_t k, const char** id, double* weight);
WSNR_API size_t wsnr_framework_excluded_count(const wsnr_framework* framework);
WSNR_API void wsnr_framework_free(wsnr_framework* framework);

typedef struct wsnr_score {
    const char* id; /* borrowed from the report */
    double actual;
    double expected;
    double diff;
    double z;
    int is_outlier;
} wsnr_score;

/* `framework` may be NULL for WSNR_MODEL_ONE_DIMENSIONAL. */
WSNR_API wsnr_status wsnr_detect(const wsnr_dataset* dataset, const wsnr_framework* framework,
                                 const char* attribute, wsnr_model model, double theta,
                                 wsnr_report** out);
WSNR_API wsnr_status wsnr_report_load(const char* path, wsnr_report** out);
WSNR_API wsnr_status wsnr_report_write(const wsnr_report* report, const char* path,
                                       wsnr_format format);
WSNR_API wsnr_status wsnr_report_write_scatter(const wsnr_report* report, const char* path,
                                               wsnr_format format);
WSNR_API size_t wsnr_report_size(const wsnr_report* report);
WSNR_API wsnr_status wsnr_report_score(const wsnr_report* report, size_t index, wsnr_score* out);
WSNR_API wsnr_model wsnr_report_model(const wsnr_report* report);
WSNR_API const char* wsnr_report_attribute(const wsnr_report* report);
WSNR_API size_t wsnr_report_flagged_count(const wsnr_report* report);
WSNR_API size_t wsnr_report_excluded_count(const wsnr_report* report);
WSNR_API int wsnr_report_degenerate(const wsnr_report* report);
WSNR_API void wsnr_report_stats(const wsnr_report* report, double* theta, double* mu,
                                double* sigma);
WSNR_API void wsnr_report_free(wsnr_report* report);

WSNR_API wsnr_status wsnr_compare(const wsnr_report* baseline, const wsnr_report* candidate,
                                  wsnr_comparison** out);
/* Returns 0 and leaves *mean untouched when no row has a defined improvement. */
WSNR_API int wsnr_comparison_mean_improvement(const wsnr_comparison* comparison, double* mean);
WSNR_API size_t wsnr_comparison_size(const wsnr_comparison* comparison);
WSNR_API wsnr_status wsnr_comparison_write(const wsnr_comparison* comparison, const char* path,
                                           wsnr_format format);
WSNR_API void wsnr_comparison_free(wsnr_comparison* comparison);

/* ---- end-to-end ------------------------------------------------------- */

/* Runs the configured models and writes all output files. With `strict`
 * set, a zero-spread difference distribution yields
 * WSNR_E_DEGENERATE_DISTRIBUTION after the files are written. */
WSNR_API wsnr_status wsnr_run(const wsnr_config* config, wsnr_run_result** out);
WSNR_API size_t wsnr_run_file_count(const wsnr_run_result* result);
WSNR_API const char* wsnr_run_file(const wsnr_run_result* result, size_t index);
WSNR_API size_t wsnr_run_warning_count(const wsnr_run_result* result);
WSNR_API const char* wsnr_run_warning(const wsnr_run_result* result, size_t index);
WSNR_API size_t wsnr_run_report_count(const wsnr_run_result* result);
/* Borrowed; valid while the result lives. */
WSNR_API const wsnr_report* wsnr_run_report(const wsnr_run_result* result, size_t index);
WSNR_API size_t wsnr_run_comparison_count(const wsnr_run_result* result);
WSNR_API const wsnr_comparison* wsnr_run_comparison(const wsnr_run_result* result, size_t index);
WSNR_API void wsnr_run_result_free(wsnr_run_result* result);

#ifdef __cplusplus
}
#endif

#endif /* WSNR_H */
