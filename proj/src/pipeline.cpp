#include "infogain/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <limits>
#include <memory>
#include <span>
#include <sstream>

#include "infogain/error.hpp"
#include "infogain/random.hpp"

namespace infogain {

namespace fs = std::filesystem;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::uint64_t mix(std::uint64_t key, std::string_view text) { return fnv1a64(text, splitmix64(key)); }

std::string fmt(const char* spec, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, x);
  return buf;
}

template <typename T>
void put(std::string& out, T value) {
  const auto* p = reinterpret_cast<const char*>(&value);
  out.append(p, sizeof value);
}

template <typename T>
T take(std::istream& in, const std::string& path) {
  T value{};
  if (!in.read(reinterpret_cast<char*>(&value), sizeof value))
    fail(ErrorCode::kParse, "truncated cache file " + path);
  return value;
}

std::string serialize_cooc(const CoocMatrix& cooc) {
  std::string out = "IGCO";
  put<std::int32_t>(out, cooc.window());
  put<std::uint64_t>(out, cooc.size());
  for (std::size_t w = 0; w < cooc.size(); ++w) {
    const auto row = cooc.row(static_cast<WordId>(w));
    put<std::uint64_t>(out, row.size());
    for (const auto& e : row) {
      put<std::int32_t>(out, e.context);
      put<std::int64_t>(out, e.count);
    }
  }
  return out;
}

std::string serialize_embeddings(const EmbeddingSet& emb) {
  std::string out = "IGEM";
  put<std::uint64_t>(out, emb.rows());
  put<std::int32_t>(out, emb.dim());
  out.append(reinterpret_cast<const char*>(emb.u_data().data()), emb.u_data().size() * sizeof(float));
  out.append(reinterpret_cast<const char*>(emb.v_data().data()), emb.v_data().size() * sizeof(float));
  return out;
}

void write_bytes(const std::string& path, const std::string& bytes) {
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  // Write then rename, so an interrupted run never leaves a partial entry.
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) fail(ErrorCode::kIo, "cannot write " + tmp);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) fail(ErrorCode::kIo, "error writing " + tmp);
  }
  fs::rename(tmp, path);
}

std::string stats_text(const Vocabulary& vocab, std::span<const WordStats> stats) {
  std::ostringstream out;
  write_word_stats(out, vocab, stats);
  return out.str();
}

std::string vocab_text(const Vocabulary& vocab) {
  std::ostringstream out;
  vocab.write(out);
  return out.str();
}

void write_scatter(const std::string& path, const Vocabulary& vocab, std::span<const double> kl,
                   std::span<const double> norm2, std::span<const double> whitened) {
  std::ostringstream out;
  out << "word,n_w,kl,norm2,whitened_norm2\n";
  for (std::size_t w = 0; w < vocab.size(); ++w) {
    out << vocab.word(static_cast<WordId>(w)) << ',' << vocab.count(static_cast<WordId>(w)) << ','
        << fmt("%.17g", kl[w]) << ',' << fmt("%.17g", norm2[w]) << ',' << fmt("%.17g", whitened[w])
        << '\n';
  }
  write_bytes(path, out.str());
}

std::string mask_spec(std::int64_t min_count) { return "n_w>" + std::to_string(min_count); }

// Too few eligible words gives a NaN fit rather than aborting the report.
RegressionFit fit_masked(const Vocabulary& vocab, std::span<const double> x, std::span<const double> y,
                         std::int64_t min_count) {
  const auto keep = [&](std::size_t i) {
    return vocab.count(static_cast<WordId>(i)) > min_count && std::isfinite(x[i]) && std::isfinite(y[i]);
  };
  try {
    return fit_linear(x, y, keep);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kInvalidArgument) throw;
    RegressionFit none;
    none.slope = none.intercept = none.r_squared = std::numeric_limits<double>::quiet_NaN();
    for (std::size_t i = 0; i < x.size(); ++i) none.n_points += keep(i);
    return none;
  }
}

}  // namespace

std::string hex64(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::uint64_t file_checksum(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::kIo, "cannot open " + path);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  std::vector<char> buf(1 << 20);
  while (in) {
    in.read(buf.data(), static_cast<std::streamsize>(buf.size()));
    h = fnv1a64(std::string_view(buf.data(), static_cast<std::size_t>(in.gcount())), h);
  }
  return h;
}

std::string format_fit(const RegressionFit& fit, const std::string& mask) {
  return fmt("%.6f", fit.slope) + ' ' + fmt("%.6f", fit.intercept) + ' ' + fmt("%.6f", fit.r_squared) +
         ' ' + std::to_string(fit.n_points) + ' ' + mask;
}

// ---------------------------------------------------------------------------

Pipeline::Pipeline(std::string corpus_path, PipelineConfig config)
    : corpus_path_(std::move(corpus_path)), config_(std::move(config)) {
  config_.train.validate();
  require(config_.u0_top_k >= 1, "u0_top_k must be >= 1");
  require(config_.n_shuffles >= 1, "n_shuffles must be >= 1");
}

std::string Pipeline::cache_path(const std::string& stage, std::uint64_t key,
                                 const std::string& ext) const {
  if (config_.cache_dir.empty()) return {};
  return (fs::path(config_.cache_dir) / (stage + "-" + hex64(key) + ext)).string();
}

std::uint64_t Pipeline::corpus_key() {
  if (!corpus_checksum_) corpus_checksum_ = file_checksum(corpus_path_);
  std::uint64_t key = *corpus_checksum_;
  key = mix(key, config_.lowercase ? "lower" : "cased");
  key = mix(key, "min_count=" + std::to_string(config_.train.min_count));
  return key;
}

std::uint64_t Pipeline::train_key() {
  const auto& t = config_.train;
  std::ostringstream desc;
  desc << "dim=" << t.dim << " epochs=" << t.epochs << " window=" << t.window
       << " negatives=" << t.negatives << " lr=" << fmt("%.17g", t.lr_initial)
       << " lr_min=" << fmt("%.17g", t.lr_min) << " seed=" << t.seed
       << " deterministic=" << t.deterministic << " threads=" << (t.deterministic ? 1 : t.threads)
       << " guard=" << fmt("%.17g", t.norm_guard);
  return mix(corpus_key(), desc.str());
}

const Corpus& Pipeline::corpus() {
  if (corpus_) return *corpus_;
  const auto start = Clock::now();
  const std::uint64_t key = corpus_key();
  try {
    corpus_ = load_corpus(corpus_path_, config_.lowercase, config_.train.min_count);
  } catch (const Error& e) {
    fail(e.code(), "stage corpus: " + std::string(e.what()));
  }
  record({"corpus", hex64(key), hex64(fnv1a64(vocab_text(corpus_->vocab))), false, seconds_since(start)});
  return *corpus_;
}

const CoocMatrix& Pipeline::cooc() {
  if (cooc_) return *cooc_;
  const Corpus& c = corpus();
  const auto start = Clock::now();
  const std::uint64_t key = mix(corpus_key(), "cooc window=" + std::to_string(config_.train.window));
  const std::string path = cache_path("cooc", key, ".bin");
  bool cached = false;
  if (!path.empty() && fs::exists(path)) {
    cooc_ = read_cooc_binary(path);
    cached = cooc_->size() == c.vocab.size();
    if (!cached) cooc_.reset();
  }
  if (!cooc_) {
    try {
      cooc_ = count_cooccurrences(c.stream, c.vocab, config_.train.window, config_.train.threads);
    } catch (const Error& e) {
      fail(e.code(), "stage cooc: " + std::string(e.what()));
    }
  }
  const std::string bytes = serialize_cooc(*cooc_);
  if (!path.empty() && !cached) write_bytes(path, bytes);
  record({"cooc", hex64(key), hex64(fnv1a64(bytes)), cached, seconds_since(start)});
  return *cooc_;
}

const std::vector<WordStats>& Pipeline::stats() {
  if (stats_) return *stats_;
  const CoocMatrix& m = cooc();
  const auto start = Clock::now();
  try {
    stats_ = compute_word_stats(m, vocab(), config_.train.threads);
  } catch (const Error& e) {
    fail(e.code(), "stage stats: " + std::string(e.what()));
  }
  record({"stats", hex64(mix(corpus_key(), "stats window=" + std::to_string(config_.train.window))),
          hex64(fnv1a64(stats_text(vocab(), *stats_))), false, seconds_since(start)});
  return *stats_;
}

const EmbeddingSet& Pipeline::embeddings() {
  if (embeddings_) return *embeddings_;
  const Corpus& c = corpus();
  const auto start = Clock::now();
  const std::uint64_t key = train_key();
  const std::string path = cache_path("train", key, ".bin");
  bool cached = false;
  if (!path.empty() && fs::exists(path)) {
    embeddings_ = read_embeddings_binary(path);
    cached = embeddings_->rows() == c.vocab.size() && embeddings_->dim() == config_.train.dim;
    if (!cached) embeddings_.reset();
  }
  if (!embeddings_) {
    try {
      embeddings_ = train(c.stream, c.vocab, config_.train);
    } catch (const Error& e) {
      fail(e.code(), "stage train: " + std::string(e.what()));
    }
  }
  const std::string bytes = serialize_embeddings(*embeddings_);
  if (!path.empty() && !cached) write_bytes(path, bytes);
  record({"train", hex64(key), hex64(fnv1a64(bytes)), cached, seconds_since(start)});
  return *embeddings_;
}

const Moments& Pipeline::moments() {
  if (moments_) return *moments_;
  const EmbeddingSet& emb = embeddings();
  const auto start = Clock::now();
  moments_ = compute_moments(emb, vocab());
  std::string bytes;
  for (double x : std::span(moments_->g.data(), static_cast<std::size_t>(moments_->g.size()))) put(bytes, x);
  record({"moments", hex64(mix(train_key(), "moments")), hex64(fnv1a64(bytes)), false, seconds_since(start)});
  return *moments_;
}

std::vector<double> Pipeline::kl() {
  const auto& s = stats();
  std::vector<double> out(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) out[i] = s[i].valid ? s[i].kl : kNaN;
  return out;
}

std::vector<double> Pipeline::entropy() {
  const auto& s = stats();
  std::vector<double> out(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) out[i] = s[i].valid ? s[i].entropy : kNaN;
  return out;
}

std::vector<double> Pipeline::norm2() { return squared_norms(embeddings()); }

std::vector<double> Pipeline::whitened_norm2(U0Mode mode) {
  const Moments& m = moments();
  const Eigen::MatrixXd u = word_matrix(embeddings());
  if (mode == U0Mode::kTopKWords)
    return quadratic_norms(u, estimate_u0(embeddings(), vocab(), config_.u0_top_k), m.g);
  return whitened_norms(u, make_whitening(m));
}

void Pipeline::compute_shuffle_baselines() {
  const Corpus& c = corpus();
  const auto start = Clock::now();
  const std::size_t n = c.vocab.size();
  const std::uint64_t seed = derive_seed(config_.train.seed, "bias-shuffle");
  std::ostringstream desc;
  desc << "shuffle window=" << config_.train.window << " n=" << config_.n_shuffles << " seed=" << seed;
  const std::uint64_t key = mix(corpus_key(), desc.str());
  const std::string path = cache_path("shuffle", key, ".tsv");

  std::vector<double> kl_base, h_base;
  bool cached = false;
  if (!path.empty() && fs::exists(path)) {
    std::ifstream in(path);
    double a = 0.0, b = 0.0;
    std::string sa, sb;
    while (in >> sa >> sb) {
      a = std::strtod(sa.c_str(), nullptr);
      b = std::strtod(sb.c_str(), nullptr);
      kl_base.push_back(a);
      h_base.push_back(b);
    }
    cached = kl_base.size() == n;
  }
  if (!cached) {
    const CorpusStatistic stat = [&](const CoocMatrix& m, const Vocabulary& v) {
      auto values = kl_values(m, v);
      const auto h = entropy_values(m);
      values.insert(values.end(), h.begin(), h.end());
      return values;
    };
    const BiasTable joint =
        shuffle_baseline(c.stream, c.vocab, config_.train.window, stat, config_.n_shuffles, seed,
                         config_.train.threads);
    kl_base.assign(joint.baseline.begin(), joint.baseline.begin() + static_cast<std::ptrdiff_t>(n));
    h_base.assign(joint.baseline.begin() + static_cast<std::ptrdiff_t>(n), joint.baseline.end());
  }
  std::string text;
  for (std::size_t i = 0; i < n; ++i) text += fmt("%.17g", kl_base[i]) + '\t' + fmt("%.17g", h_base[i]) + '\n';
  if (!path.empty() && !cached) write_bytes(path, text);

  BiasTable kt;
  kt.method = BiasMethod::kShuffle;
  kt.n_shuffles = config_.n_shuffles;
  kt.baseline = std::move(kl_base);
  BiasTable ht = kt;
  ht.baseline = std::move(h_base);
  kl_baseline_ = std::move(kt);
  entropy_baseline_ = std::move(ht);
  record({"bias-shuffle", hex64(key), hex64(fnv1a64(text)), cached, seconds_since(start)});
}

const BiasTable& Pipeline::kl_baseline() {
  if (!kl_baseline_) compute_shuffle_baselines();
  return *kl_baseline_;
}

const BiasTable& Pipeline::entropy_baseline() {
  if (!entropy_baseline_) compute_shuffle_baselines();
  return *entropy_baseline_;
}

const BiasTable& Pipeline::norm2_baseline() {
  if (norm2_baseline_) return *norm2_baseline_;
  const auto values = norm2();
  const auto start = Clock::now();
  norm2_baseline_ = percentile_baseline(values, vocab().counts(), config_.n_bins, config_.min_bin,
                                        config_.percentile);
  std::string bytes;
  for (double x : norm2_baseline_->baseline) put(bytes, x);
  record({"bias-percentile", hex64(mix(train_key(), "percentile")), hex64(fnv1a64(bytes)), false,
          seconds_since(start)});
  return *norm2_baseline_;
}

// ---------------------------------------------------------------------------

FitRecord run_fig1(Pipeline& pipeline, const std::string& scatter_csv) {
  const auto kl = pipeline.kl();
  const auto norm2 = pipeline.norm2();
  const auto whitened = pipeline.whitened_norm2(U0Mode::kWeightedMean);
  if (!scatter_csv.empty()) write_scatter(scatter_csv, pipeline.vocab(), kl, norm2, whitened);
  const std::int64_t min_count = pipeline.config().fit_min_count;
  FitRecord rec{"fig1:norm2~kl", fit_masked(pipeline.vocab(), kl, norm2, min_count), mask_spec(min_count)};
  pipeline.report().fits.push_back(rec);
  return rec;
}

FitRecord run_fig23(Pipeline& pipeline, U0Mode mode, const std::string& scatter_csv) {
  const auto kl = pipeline.kl();
  const auto whitened = pipeline.whitened_norm2(mode);
  if (!scatter_csv.empty())
    write_scatter(scatter_csv, pipeline.vocab(), kl, pipeline.norm2(), whitened);
  std::vector<double> two_kl(kl.size());
  for (std::size_t i = 0; i < kl.size(); ++i) two_kl[i] = 2.0 * kl[i];
  const std::int64_t min_count = pipeline.config().fit_min_count;
  FitRecord rec{mode == U0Mode::kTopKWords ? "fig2:u0_topk~2kl" : "fig3:ubar~2kl",
                fit_masked(pipeline.vocab(), two_kl, whitened, min_count), mask_spec(min_count)};
  pipeline.report().fits.push_back(rec);
  return rec;
}

FitRecord run_fig23(Pipeline& pipeline, U0Mode mode) { return run_fig23(pipeline, mode, ""); }

std::pair<std::vector<std::pair<std::string, double>>, std::vector<std::pair<std::string, double>>>
run_table1(const Vocabulary& vocab, std::span<const WordStats> stats, int k, std::int64_t min_count) {
  require(stats.size() == vocab.size(), "run_table1: stats and vocabulary differ in size");
  require(k >= 0, "k must be >= 0");
  std::vector<std::pair<std::string, double>> rows;
  for (std::size_t w = 0; w < vocab.size(); ++w)
    if (stats[w].valid && vocab.count(static_cast<WordId>(w)) >= min_count)
      rows.emplace_back(vocab.word(static_cast<WordId>(w)), stats[w].kl);
  std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second > b.second : a.first < b.first;
  });
  const std::size_t take_n = std::min(rows.size(), static_cast<std::size_t>(k));
  std::vector<std::pair<std::string, double>> top(rows.begin(), rows.begin() + static_cast<std::ptrdiff_t>(take_n));
  std::vector<std::pair<std::string, double>> bottom(rows.rbegin(),
                                                     rows.rbegin() + static_cast<std::ptrdiff_t>(take_n));
  return {top, bottom};
}

void write_measures(Pipeline& pipeline, const std::string& path) {
  const Vocabulary& vocab = pipeline.vocab();
  const auto kl = pipeline.kl();
  const auto h = pipeline.entropy();
  const auto norm2 = pipeline.norm2();
  const auto dkl = bias_correct(kl, pipeline.kl_baseline());
  const auto dh = bias_correct(h, pipeline.entropy_baseline());
  const auto dnorm2 = bias_correct(norm2, pipeline.norm2_baseline());
  std::ostringstream out;
  out << "word\tn_w\tentropy\tkl\tnorm2\td_entropy\td_kl\td_norm2\n";
  for (std::size_t w = 0; w < vocab.size(); ++w) {
    out << vocab.word(static_cast<WordId>(w)) << '\t' << vocab.count(static_cast<WordId>(w));
    for (double x : {h[w], kl[w], norm2[w], dh[w], dkl[w], dnorm2[w]}) out << '\t' << fmt("%.9g", x);
    out << '\n';
  }
  write_bytes(path, out.str());
}

void write_moments(const Moments& moments, const std::string& path) {
  std::ostringstream out;
  const auto d = moments.u_bar.size();
  out << "#d=" << d << '\n';
  const auto vec = [&](const char* name, const Eigen::VectorXd& v) {
    out << name;
    for (Eigen::Index k = 0; k < v.size(); ++k) out << '\t' << fmt("%.17g", v(k));
    out << '\n';
  };
  vec("u_bar", moments.u_bar);
  vec("v_bar", moments.v_bar);
  for (Eigen::Index r = 0; r < moments.g.rows(); ++r) {
    out << "G[" << r << ']';
    for (Eigen::Index c = 0; c < moments.g.cols(); ++c) out << '\t' << fmt("%.17g", moments.g(r, c));
    out << '\n';
  }
  write_bytes(path, out.str());
}

void write_report(const PipelineReport& report, const std::string& path) {
  std::ostringstream out;
  for (const auto& s : report.stages)
    out << "stage\t" << s.name << "\tinput=" << s.input_checksum << "\toutput=" << s.output_checksum << '\n';
  for (const auto& f : report.fits) out << "fit\t" << f.name << '\t' << format_fit(f.fit, f.mask) << '\n';
  for (const auto& [w, v] : report.top_kl) out << "top_kl\t" << w << '\t' << fmt("%.6f", v) << '\n';
  for (const auto& [w, v] : report.bottom_kl) out << "bottom_kl\t" << w << '\t' << fmt("%.6f", v) << '\n';
  write_bytes(path, out.str());
}

void write_timings(const PipelineReport& report, const std::string& path) {
  std::ostringstream out;
  out << "stage\tcached\tseconds\n";
  for (const auto& s : report.stages) out << s.name << '\t' << (s.cached ? 1 : 0) << '\t' << fmt("%.3f", s.seconds) << '\n';
  write_bytes(path, out.str());
}

void run_report(Pipeline& pipeline, const std::string& out_dir) {
  fs::create_directories(out_dir);
  const fs::path dir(out_dir);
  run_fig1(pipeline, (dir / "scatter.csv").string());
  run_fig23(pipeline, U0Mode::kTopKWords, (dir / "scatter_u0.csv").string());
  run_fig23(pipeline, U0Mode::kWeightedMean);

  const auto& cfg = pipeline.config();
  auto [top, bottom] = run_table1(pipeline.vocab(), pipeline.stats(), cfg.table_k, cfg.table_min_count);
  pipeline.report().top_kl = top;
  pipeline.report().bottom_kl = bottom;
  {
    std::ostringstream out;
    out << "rank\ttop_word\ttop_kl\tbottom_word\tbottom_kl\n";
    for (std::size_t i = 0; i < top.size(); ++i)
      out << i + 1 << '\t' << top[i].first << '\t' << fmt("%.6f", top[i].second) << '\t' << bottom[i].first
          << '\t' << fmt("%.6f", bottom[i].second) << '\n';
    write_bytes((dir / "table1.tsv").string(), out.str());
  }
  {
    std::ostringstream out;
    write_word_stats(out, pipeline.vocab(), pipeline.stats());
    write_bytes((dir / "stats.tsv").string(), out.str());
  }
  write_measures(pipeline, (dir / "measures.tsv").string());
  write_moments(pipeline.moments(), (dir / "moments.tsv").string());
  write_report(pipeline.report(), (dir / "report.txt").string());
  write_timings(pipeline.report(), (dir / "timings.tsv").string());
}

// ---------------------------------------------------------------------------

void write_cooc_binary(const CoocMatrix& cooc, const std::string& path) {
  write_bytes(path, serialize_cooc(cooc));
}

CoocMatrix read_cooc_binary(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::kIo, "cannot open " + path);
  char magic[4];
  if (!in.read(magic, 4) || std::memcmp(magic, "IGCO", 4) != 0)
    fail(ErrorCode::kParse, path + " is not a co-occurrence cache file");
  const auto window = take<std::int32_t>(in, path);
  const auto n = take<std::uint64_t>(in, path);
  std::vector<std::vector<CoocEntry>> rows(n);
  for (auto& row : rows) {
    const auto nnz = take<std::uint64_t>(in, path);
    row.resize(nnz);
    for (auto& e : row) {
      e.context = take<std::int32_t>(in, path);
      e.count = take<std::int64_t>(in, path);
    }
  }
  return CoocMatrix(window, std::move(rows));
}

void write_embeddings_binary(const EmbeddingSet& emb, const std::string& path) {
  write_bytes(path, serialize_embeddings(emb));
}

EmbeddingSet read_embeddings_binary(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::kIo, "cannot open " + path);
  char magic[4];
  if (!in.read(magic, 4) || std::memcmp(magic, "IGEM", 4) != 0)
    fail(ErrorCode::kParse, path + " is not an embedding cache file");
  const auto rows = take<std::uint64_t>(in, path);
  const auto dim = take<std::int32_t>(in, path);
  EmbeddingSet emb(rows, dim);
  const auto bytes = static_cast<std::streamsize>(emb.u_data().size() * sizeof(float));
  if (!in.read(reinterpret_cast<char*>(emb.u_data().data()), bytes) ||
      !in.read(reinterpret_cast<char*>(emb.v_data().data()), bytes))
    fail(ErrorCode::kParse, "truncated cache file " + path);
  return emb;
}

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    out.push_back(line.substr(start, pos == std::string::npos ? std::string::npos : pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return out;
}

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::size_t column(const std::string& name, const std::string& path) const {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) fail(ErrorCode::kParse, path + " has no column '" + name + "'");
    return static_cast<std::size_t>(it - header.begin());
  }
};

Table read_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::kIo, "cannot open " + path);
  Table t;
  std::string line;
  char sep = ',';
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (t.header.empty()) {
      sep = line.find('\t') != std::string::npos ? '\t' : ',';
      t.header = split(line, sep);
      continue;
    }
    t.rows.push_back(split(line, sep));
  }
  if (t.header.empty()) fail(ErrorCode::kParse, path + " has no header row");
  return t;
}

double parse_cell(const std::string& cell) {
  if (cell.empty()) return kNaN;
  char* end = nullptr;
  const double x = std::strtod(cell.c_str(), &end);
  return end == cell.c_str() ? kNaN : x;
}

}  // namespace

std::vector<double> read_column(const std::string& path, const std::string& column,
                                const Vocabulary& vocab) {
  const Table t = read_table(path);
  const std::size_t wc = t.column("word", path);
  const std::size_t vc = t.column(column, path);
  std::vector<double> out(vocab.size(), kNaN);
  for (const auto& row : t.rows) {
    if (row.size() <= std::max(wc, vc)) continue;
    const WordId w = vocab.find(row[wc]);
    if (w >= 0) out[static_cast<std::size_t>(w)] = parse_cell(row[vc]);
  }
  return out;
}

CsvFit fit_csv(const std::string& path, const std::string& x_column, const std::string& y_column,
               double x_scale, std::int64_t min_count) {
  const Table t = read_table(path);
  const std::size_t nc = t.column("n_w", path);
  const std::size_t xc = t.column(x_column, path);
  const std::size_t yc = t.column(y_column, path);
  std::vector<double> x, y;
  for (const auto& row : t.rows) {
    if (row.size() <= std::max({nc, xc, yc})) fail(ErrorCode::kParse, path + ": short row");
    if (parse_cell(row[nc]) <= static_cast<double>(min_count)) continue;
    x.push_back(x_scale * parse_cell(row[xc]));
    y.push_back(parse_cell(row[yc]));
  }
  return {fit_linear(x, y), mask_spec(min_count)};
}

void write_keyword_results(const std::string& dataset_path, int window, std::uint64_t seed,
                           int threads, const std::string& out_path) {
  const auto docs = read_keyword_dataset(dataset_path);
  std::ostringstream out;
  out << "measure\tmrr\tp_at_5\tdocuments\texcluded\n";
  for (const auto m : all_keyword_measures()) {
    const auto s = evaluate_keywords(docs, m, window, seed, threads);
    out << measure_name(m) << '\t' << fmt("%.2f", s.mrr) << '\t' << fmt("%.2f", s.p_at_5) << '\t'
        << s.documents << '\t' << s.excluded << '\n';
  }
  write_bytes(out_path, out.str());
}

void write_pos_results(Pipeline& pipeline, const std::string& positive_path,
                       const std::vector<std::string>& negative_paths, std::int64_t min_count,
                       const std::string& out_path) {
  require(!negative_paths.empty(), "eval-pos needs at least one negative word list");
  const Vocabulary& vocab = pipeline.vocab();
  std::vector<double> n_w(vocab.size());
  for (std::size_t w = 0; w < vocab.size(); ++w) n_w[w] = static_cast<double>(vocab.count(static_cast<WordId>(w)));
  const auto kl = pipeline.kl();
  const auto h = pipeline.entropy();
  const auto norm2 = pipeline.norm2();
  const auto dh = bias_correct(h, pipeline.entropy_baseline());
  const auto dkl = bias_correct(kl, pipeline.kl_baseline());
  const auto dnorm2 = bias_correct(norm2, pipeline.norm2_baseline());
  struct Column {
    std::string name;
    const std::vector<double>* values;
    bool higher;
  };
  const std::vector<Column> columns = {{"n_w", &n_w, true},     {"H", &h, false},
                                       {"KL", &kl, true},       {"norm2", &norm2, true},
                                       {"dH", &dh, false},      {"dKL", &dkl, true},
                                       {"dnorm2", &dnorm2, true}};
  const auto positive = read_word_list(positive_path);
  std::vector<std::string> row_labels, col_labels;
  for (const auto& c : columns) col_labels.push_back(c.name);
  std::vector<std::vector<double>> values;
  const auto stem = [](const std::string& p) { return fs::path(p).stem().string(); };
  for (const auto& neg_path : negative_paths) {
    const auto negative = read_word_list(neg_path);
    row_labels.push_back(stem(positive_path) + " vs " + stem(neg_path));
    std::vector<double> row;
    for (const auto& c : columns)
      row.push_back(100.0 * evaluate_pos(vocab, *c.values, c.higher, positive, negative, min_count).auc);
    values.push_back(std::move(row));
  }
  write_results_table(out_path, row_labels, col_labels, values);
}

void write_hypernym_results(Pipeline& pipeline, const std::vector<std::string>& dataset_paths,
                            const std::string& out_path) {
  require(!dataset_paths.empty(), "eval-hypernym needs at least one dataset");
  const auto& cfg = pipeline.config();
  std::vector<std::vector<HypernymPair>> datasets;
  std::vector<HypernymPair> all_pairs;
  for (const auto& p : dataset_paths) {
    datasets.push_back(read_hypernym_pairs(p));
    all_pairs.insert(all_pairs.end(), datasets.back().begin(), datasets.back().end());
  }

  HypernymInputs in;
  in.vocab = &pipeline.vocab();
  in.cooc = &pipeline.cooc();
  in.context_marginal = context_marginal(pipeline.cooc());
  in.kl = pipeline.kl();
  in.entropy = pipeline.entropy();
  in.norm2 = pipeline.norm2();
  in.delta_kl = bias_correct(in.kl, pipeline.kl_baseline());
  in.delta_entropy = bias_correct(in.entropy, pipeline.entropy_baseline());
  in.delta_norm2 = bias_correct(in.norm2, pipeline.norm2_baseline());
  in.seed = cfg.train.seed;
  const auto baseline = std::make_shared<PairBaseline>(
      pipeline.corpus().stream, pipeline.vocab(), cfg.train.window, all_pairs, cfg.n_shuffles,
      derive_seed(cfg.train.seed, "weeds-baseline"), cfg.train.threads);
  in.weeds_baseline = [baseline](WordId a, WordId b) { return (*baseline)(a, b); };

  const auto methods = all_hypernym_methods();
  std::vector<std::string> col_labels;
  for (const auto m : methods) col_labels.emplace_back(method_name(m));
  std::vector<std::string> row_labels;
  std::vector<std::vector<double>> values;
  std::vector<std::vector<HypernymAccuracy>> per_method(methods.size());
  std::ostringstream counts;
  counts << "dataset\tmethod\tn_more\tn_less\tskipped_oov\tskipped_equal\tskipped_missing\n";
  for (std::size_t d = 0; d < datasets.size(); ++d) {
    const std::string name = fs::path(dataset_paths[d]).stem().string();
    std::vector<double> more, less;
    for (std::size_t m = 0; m < methods.size(); ++m) {
      const auto acc = evaluate_hypernyms(in, datasets[d], methods[m]);
      per_method[m].push_back(acc);
      more.push_back(acc.hyper_more);
      less.push_back(acc.hyper_less);
      counts << name << '\t' << method_name(methods[m]) << '\t' << acc.n_more << '\t' << acc.n_less << '\t'
             << acc.skipped_oov << '\t' << acc.skipped_equal << '\t' << acc.skipped_missing << '\n';
    }
    row_labels.push_back(name + " hyper>hypo");
    values.push_back(std::move(more));
    row_labels.push_back(name + " hyper<hypo");
    values.push_back(std::move(less));
  }
  std::vector<double> avg_more, avg_less, avg_both;
  for (const auto& accs : per_method) {
    const auto avg = average_accuracy(accs);
    avg_more.push_back(avg.hyper_more);
    avg_less.push_back(avg.hyper_less);
    avg_both.push_back(avg.both);
  }
  row_labels.insert(row_labels.end(), {"average hyper>hypo", "average hyper<hypo", "average both"});
  values.push_back(std::move(avg_more));
  values.push_back(std::move(avg_less));
  values.push_back(std::move(avg_both));
  write_results_table(out_path, row_labels, col_labels, values);
  write_bytes(out_path + ".counts.tsv", counts.str());
}

}  // namespace infogain
