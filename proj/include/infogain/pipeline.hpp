#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "infogain/bias.hpp"
#include "infogain/cooc.hpp"
#include "infogain/corpus.hpp"
#include "infogain/geometry.hpp"
#include "infogain/infostats.hpp"
#include "infogain/sgns.hpp"
#include "infogain/tasks.hpp"

namespace infogain {

struct PipelineConfig {
  TrainConfig train;          // window and min_count also govern counting
  bool lowercase = true;
  std::string cache_dir;      // empty disables caching
  std::int64_t fit_min_count = 1000;  // fits use words with n_w > this
  int u0_top_k = 3;
  int n_shuffles = 10;
  int n_bins = 200;
  int min_bin = 50;
  double percentile = 3.0;
  int table_k = 10;
  std::int64_t table_min_count = 10;
};

struct StageRecord {
  std::string name;
  std::string input_checksum;   // 16 hex digits
  std::string output_checksum;
  bool cached = false;
  double seconds = 0.0;         // reported separately from checksums
};

struct FitRecord {
  std::string name;
  RegressionFit fit;
  std::string mask;
};

struct PipelineReport {
  std::vector<StageRecord> stages;
  std::vector<FitRecord> fits;
  std::vector<std::pair<std::string, double>> top_kl;
  std::vector<std::pair<std::string, double>> bottom_kl;
};

// "slope intercept r2 n_points mask_spec".
std::string format_fit(const RegressionFit& fit, const std::string& mask);

std::string hex64(std::uint64_t h);
std::uint64_t file_checksum(const std::string& path);

enum class U0Mode { kTopKWords, kWeightedMean };

// Lazily computed stages over one corpus, each cached on disk under a key
// derived from its inputs' checksums and the configuration.
class Pipeline {
 public:
  Pipeline(std::string corpus_path, PipelineConfig config);

  const PipelineConfig& config() const { return config_; }
  const Corpus& corpus();
  const Vocabulary& vocab() { return corpus().vocab; }
  const CoocMatrix& cooc();
  const std::vector<WordStats>& stats();
  const EmbeddingSet& embeddings();
  const Moments& moments();

  std::vector<double> kl();
  std::vector<double> entropy();
  std::vector<double> norm2();
  // (u_w - u_bar)^T G (u_w - u_bar), or centred on the top-k estimate of u_0.
  std::vector<double> whitened_norm2(U0Mode mode);

  // Shuffle baselines of KL and H share one set of shuffled corpora.
  const BiasTable& kl_baseline();
  const BiasTable& entropy_baseline();
  const BiasTable& norm2_baseline();

  const PipelineReport& report() const { return report_; }
  PipelineReport& report() { return report_; }

 private:
  std::string cache_path(const std::string& stage, std::uint64_t key, const std::string& ext) const;
  std::uint64_t corpus_key();
  std::uint64_t train_key();
  void record(StageRecord r) { report_.stages.push_back(std::move(r)); }
  void compute_shuffle_baselines();

  std::string corpus_path_;
  PipelineConfig config_;
  PipelineReport report_;

  std::optional<std::uint64_t> corpus_checksum_;
  std::optional<Corpus> corpus_;
  std::optional<CoocMatrix> cooc_;
  std::optional<std::vector<WordStats>> stats_;
  std::optional<EmbeddingSet> embeddings_;
  std::optional<Moments> moments_;
  std::optional<BiasTable> kl_baseline_;
  std::optional<BiasTable> entropy_baseline_;
  std::optional<BiasTable> norm2_baseline_;
};

// Scatter CSV "word,n_w,kl,norm2,whitened_norm2" and the fit of ||u_w||^2
// on KL(w) over words with n_w > fit_min_count.
FitRecord run_fig1(Pipeline& pipeline, const std::string& scatter_csv);

// Fit of the whitened squared norm on 2 KL(w) with the chosen centre;
// optionally writes the scatter with that norm as whitened_norm2.
FitRecord run_fig23(Pipeline& pipeline, U0Mode mode);
FitRecord run_fig23(Pipeline& pipeline, U0Mode mode, const std::string& scatter_csv);

// Words with n_w >= min_count sorted by KL; k from each end.
std::pair<std::vector<std::pair<std::string, double>>, std::vector<std::pair<std::string, double>>>
run_table1(const Vocabulary& vocab, std::span<const WordStats> stats, int k,
           std::int64_t min_count = 10);

// Runs every stage and writes scatter.csv, table1.tsv, measures.tsv,
// report.txt and timings.tsv into out_dir.
void run_report(Pipeline& pipeline, const std::string& out_dir);

// TSV "word n_w entropy kl norm2 d_entropy d_kl d_norm2".
void write_measures(Pipeline& pipeline, const std::string& path);
void write_moments(const Moments& moments, const std::string& path);
void write_report(const PipelineReport& report, const std::string& path);
void write_timings(const PipelineReport& report, const std::string& path);

// Binary stage-cache formats.
void write_cooc_binary(const CoocMatrix& cooc, const std::string& path);
CoocMatrix read_cooc_binary(const std::string& path);
void write_embeddings_binary(const EmbeddingSet& emb, const std::string& path);
EmbeddingSet read_embeddings_binary(const std::string& path);

// Named column of a CSV/TSV file with a header row, aligned to vocab by the
// "word" column; NaN where a word is absent or the cell is empty.
std::vector<double> read_column(const std::string& path, const std::string& column,
                                const Vocabulary& vocab);

struct CsvFit {
  RegressionFit fit;
  std::string mask;
};
// OLS of column y on x_scale * column x over rows with n_w > min_count.
CsvFit fit_csv(const std::string& path, const std::string& x_column, const std::string& y_column,
               double x_scale, std::int64_t min_count);

// Keyword TSV "measure mrr p_at_5 documents excluded".
void write_keyword_results(const std::string& dataset_path, int window, std::uint64_t seed,
                           int threads, const std::string& out_path);

// Positive list against each negative list, every measure column; a row per
// negative list with ROC-AUC x100.
void write_pos_results(Pipeline& pipeline, const std::string& positive_path,
                       const std::vector<std::string>& negative_paths, std::int64_t min_count,
                       const std::string& out_path);

// A row per dataset (and an average row) with both frequency parts per
// method, accuracy in percent.
void write_hypernym_results(Pipeline& pipeline, const std::vector<std::string>& dataset_paths,
                            const std::string& out_path);

}  // namespace infogain
