#include "infogain/infogain.h"

#include <cstring>
#include <exception>
#include <memory>
#include <new>
#include <string>

#include "infogain/error.hpp"
#include "infogain/pipeline.hpp"

struct ig_pipeline {
  std::unique_ptr<infogain::Pipeline> impl;
};

namespace {

thread_local std::string g_last_error;

ig_status to_status(infogain::ErrorCode code) { return static_cast<ig_status>(code); }

template <typename Fn>
ig_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return IG_OK;
  } catch (const infogain::Error& e) {
    g_last_error = e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return IG_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return IG_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return IG_INTERNAL;
  }
}

void need(const void* p, const char* what) {
  if (p == nullptr) infogain::fail(infogain::ErrorCode::kInvalidArgument, std::string(what) + " is NULL");
}

infogain::Pipeline& get(ig_pipeline* p) {
  need(p, "pipeline");
  return *p->impl;
}

void copy_out(const std::string& s, char* buf, std::size_t capacity) {
  need(buf, "buffer");
  if (capacity == 0) infogain::fail(infogain::ErrorCode::kInvalidArgument, "buffer capacity is zero");
  const std::size_t n = std::min(s.size(), capacity - 1);
  std::memcpy(buf, s.data(), n);
  buf[n] = '\0';
}

void check_size(infogain::Pipeline& p, std::size_t n) {
  if (n != p.vocab().size())
    infogain::fail(infogain::ErrorCode::kInvalidArgument,
                   "output length " + std::to_string(n) + " differs from vocabulary size " +
                       std::to_string(p.vocab().size()));
}

std::vector<double> statistic(infogain::Pipeline& p, ig_statistic s) {
  switch (s) {
    case IG_STAT_KL: return p.kl();
    case IG_STAT_ENTROPY: return p.entropy();
    case IG_STAT_NORM2: return p.norm2();
  }
  infogain::fail(infogain::ErrorCode::kInvalidArgument, "unknown statistic");
}

infogain::U0Mode mode_of(ig_u0_mode m) {
  return m == IG_U0_TOPK_WORDS ? infogain::U0Mode::kTopKWords : infogain::U0Mode::kWeightedMean;
}

}  // namespace

extern "C" {

const char* ig_last_error(void) { return g_last_error.c_str(); }

const char* ig_status_name(ig_status status) {
  switch (status) {
    case IG_OK: return "ok";
    case IG_INVALID_ARGUMENT: return "invalid argument";
    case IG_EMPTY_VOCABULARY: return "empty vocabulary";
    case IG_ZERO_SUPPORT: return "zero support";
    case IG_UNKNOWN_WORD: return "unknown word";
    case IG_NOT_PSD: return "matrix not positive semidefinite";
    case IG_DIVERGED: return "training diverged";
    case IG_IO: return "i/o error";
    case IG_PARSE: return "parse error";
    case IG_INTERNAL: return "internal error";
  }
  return "unknown status";
}

void ig_config_default(ig_config* config) {
  if (config == nullptr) return;
  const infogain::PipelineConfig d;
  config->dim = d.train.dim;
  config->epochs = d.train.epochs;
  config->window = d.train.window;
  config->negatives = d.train.negatives;
  config->lr = d.train.lr_initial;
  config->lr_min = d.train.lr_min;
  config->min_count = d.train.min_count;
  config->seed = d.train.seed;
  config->threads = d.train.threads;
  config->deterministic = d.train.deterministic ? 1 : 0;
  config->lowercase = d.lowercase ? 1 : 0;
  config->cache_dir = nullptr;
  config->fit_min_count = d.fit_min_count;
  config->u0_top_k = d.u0_top_k;
  config->n_shuffles = d.n_shuffles;
  config->n_bins = d.n_bins;
  config->min_bin = d.min_bin;
  config->percentile = d.percentile;
}

ig_status ig_pipeline_open(const char* corpus_path, const ig_config* config, ig_pipeline** out) {
  return guarded([&] {
    need(corpus_path, "corpus path");
    need(config, "config");
    need(out, "output handle");
    *out = nullptr;
    infogain::PipelineConfig c;
    c.train.dim = config->dim;
    c.train.epochs = config->epochs;
    c.train.window = config->window;
    c.train.negatives = config->negatives;
    c.train.lr_initial = config->lr;
    c.train.lr_min = config->lr_min;
    c.train.min_count = config->min_count;
    c.train.seed = config->seed;
    c.train.threads = config->threads;
    c.train.deterministic = config->deterministic != 0;
    c.lowercase = config->lowercase != 0;
    c.cache_dir = config->cache_dir != nullptr ? config->cache_dir : "";
    c.fit_min_count = config->fit_min_count;
    c.u0_top_k = config->u0_top_k;
    c.n_shuffles = config->n_shuffles;
    c.n_bins = config->n_bins;
    c.min_bin = config->min_bin;
    c.percentile = config->percentile;
    c.train.validate();
    auto handle = std::make_unique<ig_pipeline>();
    handle->impl = std::make_unique<infogain::Pipeline>(corpus_path, std::move(c));
    *out = handle.release();
  });
}

void ig_pipeline_close(ig_pipeline* pipeline) { delete pipeline; }

ig_status ig_vocab_size(ig_pipeline* pipeline, size_t* out) {
  return guarded([&] {
    need(out, "output");
    *out = get(pipeline).vocab().size();
  });
}

ig_status ig_corpus_tokens(ig_pipeline* pipeline, size_t* out) {
  return guarded([&] {
    need(out, "output");
    *out = get(pipeline).corpus().stream.size();
  });
}

ig_status ig_word(ig_pipeline* pipeline, size_t id, char* buf, size_t capacity) {
  return guarded([&] {
    auto& p = get(pipeline);
    if (id >= p.vocab().size()) infogain::fail(infogain::ErrorCode::kUnknownWord, "word id out of range");
    copy_out(p.vocab().word(static_cast<infogain::WordId>(id)), buf, capacity);
  });
}

ig_status ig_word_count(ig_pipeline* pipeline, size_t id, int64_t* out) {
  return guarded([&] {
    need(out, "output");
    auto& p = get(pipeline);
    if (id >= p.vocab().size()) infogain::fail(infogain::ErrorCode::kUnknownWord, "word id out of range");
    *out = p.vocab().count(static_cast<infogain::WordId>(id));
  });
}

ig_status ig_statistic_values(ig_pipeline* pipeline, ig_statistic s, double* out, size_t n) {
  return guarded([&] {
    need(out, "output");
    auto& p = get(pipeline);
    check_size(p, n);
    const auto values = statistic(p, s);
    std::copy(values.begin(), values.end(), out);
  });
}

ig_status ig_whitened_norms(ig_pipeline* pipeline, ig_u0_mode mode, double* out, size_t n) {
  return guarded([&] {
    need(out, "output");
    auto& p = get(pipeline);
    check_size(p, n);
    const auto values = p.whitened_norm2(mode_of(mode));
    std::copy(values.begin(), values.end(), out);
  });
}

ig_status ig_write_vocab(ig_pipeline* pipeline, const char* path) {
  return guarded([&] {
    need(path, "path");
    get(pipeline).vocab().write(std::string(path));
  });
}

ig_status ig_write_cooc(ig_pipeline* pipeline, const char* path) {
  return guarded([&] {
    need(path, "path");
    get(pipeline).cooc().write(std::string(path));
  });
}

ig_status ig_write_stats(ig_pipeline* pipeline, const char* path) {
  return guarded([&] {
    need(path, "path");
    auto& p = get(pipeline);
    infogain::write_word_stats(std::string(path), p.vocab(), p.stats());
  });
}

ig_status ig_write_embeddings(ig_pipeline* pipeline, const char* u_path, const char* v_path) {
  return guarded([&] {
    need(u_path, "word embedding path");
    need(v_path, "context embedding path");
    auto& p = get(pipeline);
    infogain::write_word2vec(u_path, p.vocab(), p.embeddings(), false);
    infogain::write_word2vec(v_path, p.vocab(), p.embeddings(), true);
  });
}

ig_status ig_write_moments(ig_pipeline* pipeline, const char* path) {
  return guarded([&] {
    need(path, "path");
    infogain::write_moments(get(pipeline).moments(), path);
  });
}

ig_status ig_write_scatter(ig_pipeline* pipeline, ig_u0_mode mode, const char* path) {
  return guarded([&] {
    need(path, "path");
    auto& p = get(pipeline);
    if (mode == IG_U0_WEIGHTED_MEAN)
      infogain::run_fig1(p, path);
    else
      infogain::run_fig23(p, infogain::U0Mode::kTopKWords, path);
  });
}

ig_status ig_write_bias(ig_pipeline* pipeline, ig_statistic s, ig_bias_method method, const char* path) {
  return guarded([&] {
    need(path, "path");
    auto& p = get(pipeline);
    if (method == IG_BIAS_SHUFFLE) {
      if (s == IG_STAT_NORM2)
        infogain::fail(infogain::ErrorCode::kInvalidArgument,
                       "shuffle baseline of norm2 would need retraining per shuffle; use percentile");
      infogain::write_bias_table(path, p.vocab(), s == IG_STAT_KL ? p.kl_baseline() : p.entropy_baseline());
      return;
    }
    if (s == IG_STAT_NORM2) {
      infogain::write_bias_table(path, p.vocab(), p.norm2_baseline());
      return;
    }
    const auto values = statistic(p, s);
    const auto& c = p.config();
    infogain::write_bias_table(path, p.vocab(),
                               infogain::percentile_baseline(values, p.vocab().counts(), c.n_bins,
                                                             c.min_bin, c.percentile));
  });
}

ig_status ig_run_report(ig_pipeline* pipeline, const char* out_dir) {
  return guarded([&] {
    need(out_dir, "output directory");
    infogain::run_report(get(pipeline), out_dir);
  });
}

ig_status ig_eval_pos(ig_pipeline* pipeline, const char* positive_path, const char* const* negative_paths,
                      size_t n_negative, int64_t min_count, const char* out_path) {
  return guarded([&] {
    need(positive_path, "positive list path");
    need(out_path, "output path");
    if (n_negative > 0) need(negative_paths, "negative list paths");
    std::vector<std::string> negatives;
    for (size_t i = 0; i < n_negative; ++i) {
      need(negative_paths[i], "negative list path");
      negatives.emplace_back(negative_paths[i]);
    }
    infogain::write_pos_results(get(pipeline), positive_path, negatives, min_count, out_path);
  });
}

ig_status ig_eval_hypernym(ig_pipeline* pipeline, const char* const* dataset_paths, size_t n_datasets,
                           const char* out_path) {
  return guarded([&] {
    need(out_path, "output path");
    if (n_datasets > 0) need(dataset_paths, "dataset paths");
    std::vector<std::string> datasets;
    for (size_t i = 0; i < n_datasets; ++i) {
      need(dataset_paths[i], "dataset path");
      datasets.emplace_back(dataset_paths[i]);
    }
    infogain::write_hypernym_results(get(pipeline), datasets, out_path);
  });
}

ig_status ig_fit_csv(const char* path, const char* x_column, const char* y_column, double x_scale,
                     int64_t min_count, ig_fit* out) {
  return guarded([&] {
    need(path, "path");
    need(x_column, "x column");
    need(y_column, "y column");
    need(out, "output");
    const auto r = infogain::fit_csv(path, x_column, y_column, x_scale, min_count);
    *out = {r.fit.slope, r.fit.intercept, r.fit.r_squared, r.fit.n_points};
  });
}

ig_status ig_fit_arrays(const double* x, const double* y, size_t n, ig_fit* out) {
  return guarded([&] {
    need(out, "output");
    if (n > 0) {
      need(x, "x");
      need(y, "y");
    }
    const auto f = infogain::fit_linear(std::span<const double>(x, n), std::span<const double>(y, n));
    *out = {f.slope, f.intercept, f.r_squared, f.n_points};
  });
}

ig_status ig_roc_auc(const double* positive, size_t n_positive, const double* negative, size_t n_negative,
                     int higher_is_positive, double* out) {
  return guarded([&] {
    need(out, "output");
    if (n_positive > 0) need(positive, "positive scores");
    if (n_negative > 0) need(negative, "negative scores");
    *out = infogain::roc_auc(std::span<const double>(positive, n_positive),
                             std::span<const double>(negative, n_negative), higher_is_positive != 0);
  });
}

ig_status ig_eval_keywords(const char* dataset_path, int window, uint64_t seed, int threads,
                           const char* out_path) {
  return guarded([&] {
    need(dataset_path, "dataset path");
    need(out_path, "output path");
    infogain::write_keyword_results(dataset_path, window, seed, threads, out_path);
  });
}

ig_status ig_porter_stem(const char* word, char* buf, size_t capacity) {
  return guarded([&] {
    need(word, "word");
    copy_out(infogain::porter_stem(word), buf, capacity);
  });
}

}  // extern "C"
