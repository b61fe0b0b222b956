/* C interface to the infogain library. Every function returns an ig_status;
 * on failure ig_last_error() describes the problem (per thread). */
#ifndef INFOGAIN_INFOGAIN_H
#define INFOGAIN_INFOGAIN_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define IG_API __declspec(dllexport)
#else
#define IG_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ig_status {
  IG_OK = 0,
  IG_INVALID_ARGUMENT = 1,
  IG_EMPTY_VOCABULARY = 2,
  IG_ZERO_SUPPORT = 3,
  IG_UNKNOWN_WORD = 4,
  IG_NOT_PSD = 5,
  IG_DIVERGED = 6,
  IG_IO = 7,
  IG_PARSE = 8,
  IG_INTERNAL = 9
} ig_status;

typedef enum ig_statistic { IG_STAT_KL = 0, IG_STAT_ENTROPY = 1, IG_STAT_NORM2 = 2 } ig_statistic;
typedef enum ig_bias_method { IG_BIAS_SHUFFLE = 0, IG_BIAS_PERCENTILE = 1 } ig_bias_method;
typedef enum ig_u0_mode { IG_U0_TOPK_WORDS = 0, IG_U0_WEIGHTED_MEAN = 1 } ig_u0_mode;

typedef struct ig_config {
  int dim;
  int epochs;
  int window;
  int negatives;
  double lr;
  double lr_min;
  int64_t min_count;
  uint64_t seed;
  int threads;
  int deterministic;
  int lowercase;
  const char* cache_dir; /* NULL or "" disables caching; copied on open */
  int64_t fit_min_count;
  int u0_top_k;
  int n_shuffles;
  int n_bins;
  int min_bin;
  double percentile;
} ig_config;

typedef struct ig_fit {
  double slope;
  double intercept;
  double r_squared;
  int64_t n_points;
} ig_fit;

/* One corpus with its lazily computed, cached stages. */
typedef struct ig_pipeline ig_pipeline;

IG_API const char* ig_last_error(void);
IG_API const char* ig_status_name(ig_status status);
IG_API void ig_config_default(ig_config* config);

IG_API ig_status ig_pipeline_open(const char* corpus_path, const ig_config* config,
                                  ig_pipeline** out);
IG_API void ig_pipeline_close(ig_pipeline* pipeline);

IG_API ig_status ig_vocab_size(ig_pipeline* pipeline, size_t* out);
IG_API ig_status ig_corpus_tokens(ig_pipeline* pipeline, size_t* out);
/* Copies the word (NUL-terminated, truncated to capacity) into buf. */
IG_API ig_status ig_word(ig_pipeline* pipeline, size_t id, char* buf, size_t capacity);
IG_API ig_status ig_word_count(ig_pipeline* pipeline, size_t id, int64_t* out);
/* Per-word values in vocabulary order; n must equal the vocabulary size.
 * Missing values are NaN. */
IG_API ig_status ig_statistic_values(ig_pipeline* pipeline, ig_statistic statistic, double* out,
                                     size_t n);
IG_API ig_status ig_whitened_norms(ig_pipeline* pipeline, ig_u0_mode mode, double* out, size_t n);

IG_API ig_status ig_write_vocab(ig_pipeline* pipeline, const char* path);
IG_API ig_status ig_write_cooc(ig_pipeline* pipeline, const char* path);
IG_API ig_status ig_write_stats(ig_pipeline* pipeline, const char* path);
IG_API ig_status ig_write_embeddings(ig_pipeline* pipeline, const char* u_path, const char* v_path);
IG_API ig_status ig_write_moments(ig_pipeline* pipeline, const char* path);
/* Scatter CSV "word,n_w,kl,norm2,whitened_norm2". */
IG_API ig_status ig_write_scatter(ig_pipeline* pipeline, ig_u0_mode mode, const char* path);
IG_API ig_status ig_write_bias(ig_pipeline* pipeline, ig_statistic statistic, ig_bias_method method,
                               const char* path);
IG_API ig_status ig_run_report(ig_pipeline* pipeline, const char* out_dir);
IG_API ig_status ig_eval_pos(ig_pipeline* pipeline, const char* positive_path,
                             const char* const* negative_paths, size_t n_negative,
                             int64_t min_count, const char* out_path);
IG_API ig_status ig_eval_hypernym(ig_pipeline* pipeline, const char* const* dataset_paths,
                                  size_t n_datasets, const char* out_path);

/* OLS of column y on x_scale * column x over rows with n_w > min_count. */
IG_API ig_status ig_fit_csv(const char* path, const char* x_column, const char* y_column,
                            double x_scale, int64_t min_count, ig_fit* out);
IG_API ig_status ig_fit_arrays(const double* x, const double* y, size_t n, ig_fit* out);
IG_API ig_status ig_roc_auc(const double* positive, size_t n_positive, const double* negative,
                            size_t n_negative, int higher_is_positive, double* out);
IG_API ig_status ig_eval_keywords(const char* dataset_path, int window, uint64_t seed, int threads,
                                  const char* out_path);
/* Porter stem of an ASCII word into buf (truncated to capacity). */
IG_API ig_status ig_porter_stem(const char* word, char* buf, size_t capacity);

#ifdef __cplusplus
}
#endif

#endif
