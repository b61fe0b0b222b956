#include <cstdio>
#include <cstdlib>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "infogain/infogain.h"

namespace {

struct Options {
  std::string corpus;
  std::string out;
  std::string cache_dir;
  bool deterministic = false;
  bool keep_case = false;
};

int report_failure(const char* what, ig_status s) {
  std::fprintf(stderr, "infogain: %s failed (%s): %s\n", what, ig_status_name(s), ig_last_error());
  return static_cast<int>(s);
}

class Handle {
 public:
  Handle(const Options& opt, ig_config cfg) {
    cfg.deterministic = opt.deterministic ? 1 : 0;
    cfg.lowercase = opt.keep_case ? 0 : 1;
    cfg.cache_dir = opt.cache_dir.empty() ? nullptr : opt.cache_dir.c_str();
    status_ = ig_pipeline_open(opt.corpus.c_str(), &cfg, &p_);
  }
  ~Handle() { ig_pipeline_close(p_); }
  Handle(const Handle&) = delete;
  Handle& operator=(const Handle&) = delete;
  ig_status status() const { return status_; }
  ig_pipeline* get() const { return p_; }

 private:
  ig_pipeline* p_ = nullptr;
  ig_status status_ = IG_OK;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Information-gain statistics and SGNS embedding analysis"};
  app.require_subcommand(1);
  app.fallthrough();

  ig_config cfg;
  ig_config_default(&cfg);
  Options opt;

  app.add_option("--seed", cfg.seed, "top-level seed")->capture_default_str();
  app.add_option("--threads", cfg.threads, "worker threads")->capture_default_str();
  app.add_flag("--deterministic", opt.deterministic, "single-writer training, reproducible output");
  app.add_option("--window", cfg.window, "context half-width h")->capture_default_str();
  app.add_option("--dim", cfg.dim, "embedding dimension")->capture_default_str();
  app.add_option("--epochs", cfg.epochs)->capture_default_str();
  app.add_option("--negatives", cfg.negatives, "noise samples per positive pair")->capture_default_str();
  app.add_option("--lr", cfg.lr, "initial learning rate")->capture_default_str();
  app.add_option("--lr-min", cfg.lr_min, "final learning rate")->capture_default_str();
  app.add_option("--min-count", cfg.min_count, "drop words rarer than this")->capture_default_str();
  app.add_option("--cache-dir", opt.cache_dir, "stage cache directory (empty: no cache)");
  app.add_option("--n-shuffles", cfg.n_shuffles, "shuffled corpora per baseline")->capture_default_str();
  app.add_option("--fit-min-count", cfg.fit_min_count, "fits use words with n_w above this")
      ->capture_default_str();
  app.add_option("--u0-top-k", cfg.u0_top_k)->capture_default_str();
  app.add_option("--n-bins", cfg.n_bins, "log-frequency bins for the percentile baseline")
      ->capture_default_str();
  app.add_option("--min-bin", cfg.min_bin, "minimum words per merged bin")->capture_default_str();
  app.add_option("--percentile", cfg.percentile)->capture_default_str();
  app.add_flag("--keep-case", opt.keep_case, "do not lowercase the corpus");

  auto corpus_cmd = [&](const char* name, const char* help, bool out_required = true) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("corpus", opt.corpus, "plain-text corpus")->required()->check(CLI::ExistingFile);
    auto* o = sub->add_option("-o,--out", opt.out, "output path");
    if (out_required) o->required();
    return sub;
  };

  auto* vocab = corpus_cmd("vocab", "write the vocabulary TSV");
  auto* cooc = corpus_cmd("cooc", "write the co-occurrence TSV");
  auto* stats = corpus_cmd("stats", "write per-word statistics");

  std::string v_out;
  auto* train = corpus_cmd("train", "train SGNS and write word2vec text files");
  train->add_option("--contexts-out", v_out, "context vectors")->required();

  auto* moments = corpus_cmd("moments", "write the moments of the context vectors");

  std::string u0_mode = "mean";
  auto* whiten = corpus_cmd("whiten", "write the scatter CSV with whitened norms");
  whiten->add_option("--u0", u0_mode, "centre: topk or mean")
      ->check(CLI::IsMember({"topk", "mean"}))
      ->capture_default_str();

  std::string statistic = "kl", method = "shuffle";
  auto* bias = corpus_cmd("bias", "write a frequency-bias baseline table");
  bias->add_option("--statistic", statistic)->check(CLI::IsMember({"kl", "entropy", "norm2"}))
      ->capture_default_str();
  bias->add_option("--method", method)->check(CLI::IsMember({"shuffle", "percentile"}))
      ->capture_default_str();

  std::string csv, xcol = "kl", ycol = "norm2";
  double x_scale = 1.0;
  std::int64_t fit_min = 1000;
  auto* fit = app.add_subcommand("fit", "OLS fit of two CSV columns");
  fit->add_option("csv", csv)->required()->check(CLI::ExistingFile);
  fit->add_option("--x", xcol)->capture_default_str();
  fit->add_option("--y", ycol)->capture_default_str();
  fit->add_option("--x-scale", x_scale)->capture_default_str();
  fit->add_option("--mask-min-count", fit_min, "rows with n_w above this")->capture_default_str();

  std::string dataset;
  auto* keywords = app.add_subcommand("eval-keywords", "rank keywords and score MRR and P@5");
  keywords->add_option("dataset", dataset, "JSONL documents")->required()->check(CLI::ExistingFile);
  keywords->add_option("-o,--out", opt.out)->required();

  std::string positive;
  std::vector<std::string> negatives;
  std::int64_t pos_min = 10;
  auto* pos = corpus_cmd("eval-pos", "ROC-AUC of each measure on word lists");
  pos->add_option("--positive", positive)->required()->check(CLI::ExistingFile);
  pos->add_option("--negative", negatives)->required()->check(CLI::ExistingFile);
  pos->add_option("--pos-min-count", pos_min)->capture_default_str();

  std::vector<std::string> datasets;
  auto* hyper = corpus_cmd("eval-hypernym", "hypernym direction accuracy per method");
  hyper->add_option("--dataset", datasets, "TSV hyponym/hypernym pairs")->required()
      ->check(CLI::ExistingFile);

  auto* report = corpus_cmd("report", "run every stage and write the report directory");

  CLI11_PARSE(app, argc, argv);

  if (fit->parsed()) {
    ig_fit f;
    if (auto s = ig_fit_csv(csv.c_str(), xcol.c_str(), ycol.c_str(), x_scale, fit_min, &f))
      return report_failure("fit", s);
    std::printf("slope\tintercept\tr2\tn\n%.6f\t%.6f\t%.6f\t%lld\n", f.slope, f.intercept, f.r_squared,
                static_cast<long long>(f.n_points));
    return 0;
  }
  if (keywords->parsed()) {
    if (auto s = ig_eval_keywords(dataset.c_str(), cfg.window, cfg.seed, cfg.threads, opt.out.c_str()))
      return report_failure("eval-keywords", s);
    return 0;
  }

  Handle h(opt, cfg);
  if (h.status() != IG_OK) return report_failure("open", h.status());
  ig_pipeline* p = h.get();
  const char* out = opt.out.c_str();
  ig_status s = IG_OK;
  const char* what = "";

  if (vocab->parsed()) {
    what = "vocab";
    s = ig_write_vocab(p, out);
  } else if (cooc->parsed()) {
    what = "cooc";
    s = ig_write_cooc(p, out);
  } else if (stats->parsed()) {
    what = "stats";
    s = ig_write_stats(p, out);
  } else if (train->parsed()) {
    what = "train";
    s = ig_write_embeddings(p, out, v_out.c_str());
  } else if (moments->parsed()) {
    what = "moments";
    s = ig_write_moments(p, out);
  } else if (whiten->parsed()) {
    what = "whiten";
    s = ig_write_scatter(p, u0_mode == "topk" ? IG_U0_TOPK_WORDS : IG_U0_WEIGHTED_MEAN, out);
  } else if (bias->parsed()) {
    what = "bias";
    const std::map<std::string, ig_statistic> stat_of{
        {"kl", IG_STAT_KL}, {"entropy", IG_STAT_ENTROPY}, {"norm2", IG_STAT_NORM2}};
    s = ig_write_bias(p, stat_of.at(statistic),
                      method == "shuffle" ? IG_BIAS_SHUFFLE : IG_BIAS_PERCENTILE, out);
  } else if (pos->parsed()) {
    what = "eval-pos";
    std::vector<const char*> neg;
    for (const auto& n : negatives) neg.push_back(n.c_str());
    s = ig_eval_pos(p, positive.c_str(), neg.data(), neg.size(), pos_min, out);
  } else if (hyper->parsed()) {
    what = "eval-hypernym";
    std::vector<const char*> ds;
    for (const auto& d : datasets) ds.push_back(d.c_str());
    s = ig_eval_hypernym(p, ds.data(), ds.size(), out);
  } else if (report->parsed()) {
    what = "report";
    s = ig_run_report(p, out);
  }
  if (s != IG_OK) return report_failure(what, s);
  return 0;
}
