#ifndef LONGDOC_LONGDOC_H
#define LONGDOC_LONGDOC_H

/*
 * C interface to the long-document classification library.
 *
 * Every function returns a longdoc_status. On failure the message for the
 * calling thread is available from longdoc_last_error() until the next call
 * on that thread. Strings returned through `char**` out-parameters are owned
 * by the caller and released with longdoc_string_free(). Pass NULL for any
 * optional output path or out-parameter you do not need.
 */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(LONGDOC_BUILDING)
#    define LONGDOC_API __declspec(dllexport)
#  else
#    define LONGDOC_API __declspec(dllimport)
#  endif
#else
#  define LONGDOC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Values match the command-line tool's exit codes. */
typedef enum longdoc_status {
    LONGDOC_OK = 0,
    LONGDOC_ERR_INTERNAL = 1,
    LONGDOC_ERR_INPUT = 2,    /* unreadable or malformed input */
    LONGDOC_ERR_CONTRACT = 3, /* config or data contract violation */
    LONGDOC_ERR_REMOTE = 4    /* remote embedding provider failure */
} longdoc_status;

typedef struct longdoc_pipeline longdoc_pipeline; /* validated pipeline config + provider */
typedef struct longdoc_model longdoc_model;       /* trained classification head */

LONGDOC_API const char* longdoc_version(void);
LONGDOC_API const char* longdoc_last_error(void);
LONGDOC_API void longdoc_string_free(char* s);

/* Pipeline handles. `config_json` may be NULL or "" for all defaults. */
LONGDOC_API longdoc_status longdoc_pipeline_create(const char* config_json, longdoc_pipeline** out);
LONGDOC_API longdoc_status longdoc_pipeline_load(const char* config_path, longdoc_pipeline** out);
LONGDOC_API void longdoc_pipeline_destroy(longdoc_pipeline* pipeline);
/* Canonical config JSON and its hash. */
LONGDOC_API longdoc_status longdoc_pipeline_config(const longdoc_pipeline* pipeline, char** config_json);
LONGDOC_API longdoc_status longdoc_pipeline_hash(const longdoc_pipeline* pipeline, char** hash);

/* Commands. `summary_json`, when not NULL, receives the command's JSON output. */
LONGDOC_API longdoc_status longdoc_generate(size_t classes, size_t docs_per_class, size_t sentences_per_doc,
                                            double signal_ratio, uint64_t seed, const char* out_path,
                                            char** summary_json);
LONGDOC_API longdoc_status longdoc_split(const char* corpus_path, const double fractions[3], uint64_t seed,
                                         const char* out_path, char** summary_json);
LONGDOC_API longdoc_status longdoc_segment(const longdoc_pipeline* pipeline, const char* corpus_path,
                                           const char* out_path, char** summary_json);
LONGDOC_API longdoc_status longdoc_train(const longdoc_pipeline* pipeline, const char* corpus_path,
                                         const char* manifest_path, const char* checkpoint_out,
                                         const char* metrics_out, char** metrics_json);
LONGDOC_API longdoc_status longdoc_eval(const longdoc_pipeline* pipeline, const char* corpus_path,
                                        const char* manifest_path, const char* checkpoint_path,
                                        const char* report_out, const char* predictions_out, char** report_json);
LONGDOC_API longdoc_status longdoc_compare(const longdoc_pipeline* const* pipelines, size_t count,
                                           const char* corpus_path, const char* manifest_path, const char* out_path,
                                           char** comparison_json);
/* GET /info against the configured provider (or the reference embedder's info). */
LONGDOC_API longdoc_status longdoc_probe_provider(const longdoc_pipeline* pipeline, char** info_json);

/* Trained heads. */
LONGDOC_API longdoc_status longdoc_model_load(const longdoc_pipeline* pipeline, const char* checkpoint_path,
                                              longdoc_model** out);
LONGDOC_API void longdoc_model_destroy(longdoc_model* model);
LONGDOC_API size_t longdoc_model_classes(const longdoc_model* model);
/* Class name for index `k`, or NULL when out of range. Owned by the model. */
LONGDOC_API const char* longdoc_model_class_name(const longdoc_model* model, size_t k);
/* Classifies one document under the pipeline's strategy. `probs` receives
 * longdoc_model_classes() values when `capacity` allows; `predicted` the class index. */
LONGDOC_API longdoc_status longdoc_model_classify(const longdoc_model* model, const char* text, double* probs,
                                                  size_t capacity, size_t* predicted);

#ifdef __cplusplus
}
#endif

#endif /* LONGDOC_LONGDOC_H */
