#include "infogain/sgns.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <thread>
#include <unordered_map>

#include "infogain/error.hpp"
#include "infogain/parallel.hpp"

namespace infogain {

void TrainConfig::validate() const {
  require(dim >= 1, "dim must be >= 1");
  require(epochs >= 1, "epochs must be >= 1");
  require(window >= 1, "window must be >= 1");
  require(negatives >= 1, "negatives must be >= 1");
  require(lr_min > 0.0, "lr_min must be > 0");
  require(lr_min <= lr_initial, "lr_min must not exceed lr_initial");
  require(min_count >= 1, "min_count must be >= 1");
  require(threads >= 1, "threads must be >= 1");
  require(norm_guard > 0.0, "norm_guard must be > 0");
}

EmbeddingSet::EmbeddingSet(std::size_t rows, int dim)
    : rows_(rows),
      dim_(dim),
      u_(rows * static_cast<std::size_t>(dim), 0.0f),
      v_(rows * static_cast<std::size_t>(dim), 0.0f) {
  require(dim >= 1, "embedding dimension must be >= 1");
}

bool EmbeddingSet::all_finite() const {
  auto finite = [](float x) { return std::isfinite(x); };
  return std::all_of(u_.begin(), u_.end(), finite) && std::all_of(v_.begin(), v_.end(), finite);
}

NoiseDistribution::NoiseDistribution(const Vocabulary& vocab)
    : NoiseDistribution(vocab.counts()) {}

NoiseDistribution::NoiseDistribution(std::span<const std::int64_t> counts) {
  require(!counts.empty(), "noise distribution needs a nonempty vocabulary");
  q_.resize(counts.size());
  double total = 0.0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    q_[i] = std::pow(static_cast<double>(counts[i]), 0.75);
    total += q_[i];
  }
  require(total > 0.0, "noise distribution needs a positive count");
  for (double& x : q_) x /= total;
  alias_ = AliasTable(q_);
}

double positive_probability(double dot) {
  const double x = std::clamp(dot, -30.0, 30.0);
  return 1.0 / (1.0 + std::exp(-x));
}

double positive_probability(std::span<const float> u, std::span<const float> v) {
  require(u.size() == v.size(), "vector sizes differ");
  double dot = 0.0;
  for (std::size_t k = 0; k < u.size(); ++k) dot += static_cast<double>(u[k]) * v[k];
  return positive_probability(dot);
}

double nce_ratio(double p, int negatives, double q) { return p / (p + negatives * q); }

double learning_rate(const TrainConfig& config, std::uint64_t pair, std::uint64_t total_pairs) {
  if (total_pairs == 0) return config.lr_initial;
  const double frac = static_cast<double>(pair) / static_cast<double>(total_pairs);
  const double lr = config.lr_initial + (config.lr_min - config.lr_initial) * frac;
  return std::max(lr, config.lr_min);
}

std::uint64_t pairs_per_epoch(std::size_t tokens, int window) {
  const auto n = static_cast<std::uint64_t>(tokens);
  const auto h = static_cast<std::uint64_t>(window);
  if (n == 0) return 0;
  // Both sides contribute sum_i min(i, h).
  const std::uint64_t one_side = n <= h + 1 ? n * (n - 1) / 2 : h * (h + 1) / 2 + (n - h - 1) * h;
  return 2 * one_side;
}

EmbeddingSet initialize_embeddings(std::size_t rows, int dim, std::uint64_t seed) {
  EmbeddingSet emb(rows, dim);
  Rng rng(seed);
  const double scale = 1.0 / dim;
  for (float& x : emb.u_data()) x = static_cast<float>((rng.uniform() - 0.5) * scale);
  return emb;
}

namespace {

inline float dot(const float* a, const float* b, int d) {
  float s = 0.0f;
  for (int k = 0; k < d; ++k) s += a[k] * b[k];
  return s;
}

inline float sigmoid_clamped(float x) {
  x = std::clamp(x, -30.0f, 30.0f);
  return 1.0f / (1.0f + std::exp(-x));
}

struct Segment {
  std::size_t begin;
  std::size_t end;
};

class Trainer {
 public:
  Trainer(const TokenStream& stream, const Vocabulary& vocab, const TrainConfig& config,
          const TrainHooks& hooks, EmbeddingSet& emb)
      : ids_(stream.ids),
        config_(config),
        hooks_(hooks),
        emb_(emb),
        noise_(vocab),
        total_pairs_(pairs_per_epoch(stream.size(), config.window) *
                     static_cast<std::uint64_t>(config.epochs)) {}

  void run() {
    const int workers = config_.deterministic ? 1 : config_.threads;
    for (int epoch = 0; epoch < config_.epochs; ++epoch) {
      if (workers == 1) {
        Rng rng(derive_seed(derive_seed(config_.seed, "sgns-epoch"), static_cast<std::uint64_t>(epoch)));
        std::uint64_t t = processed_.load(std::memory_order_relaxed);
        run_segment({0, ids_.size()}, rng, epoch, t, /*shared_progress=*/false);
        processed_.store(t, std::memory_order_relaxed);
      } else {
        // Updates race on the shared matrices without synchronization.
        const std::size_t n = ids_.size();
        const auto w = static_cast<std::size_t>(workers);
        parallel_for(w, workers, [&](std::size_t k) {
          Rng rng(derive_seed(derive_seed(config_.seed, "sgns-epoch"),
                              static_cast<std::uint64_t>(epoch) * w + k));
          std::uint64_t t = 0;
          run_segment({n * k / w, n * (k + 1) / w}, rng, epoch, t, /*shared_progress=*/true);
        });
      }
      check_norms(epoch);
      if (hooks_.on_epoch_end) hooks_.on_epoch_end(epoch, emb_);
    }
  }

 private:
  // In shared-progress mode `t` counts local pairs not yet published to
  // processed_; otherwise it is the global pair index.
  void run_segment(Segment seg, Rng& rng, int epoch, std::uint64_t& t, bool shared_progress) {
    const int d = emb_.dim();
    const std::size_t n = ids_.size();
    const auto h = static_cast<std::size_t>(config_.window);
    std::vector<float> grad(static_cast<std::size_t>(d));
    float* const U = emb_.u_data().data();
    float* const V = emb_.v_data().data();
    constexpr std::uint64_t kPublishEvery = 4096;

    for (std::size_t i = seg.begin; i < seg.end; ++i) {
      const WordId center = ids_[i];
      float* const u = U + static_cast<std::size_t>(center) * static_cast<std::size_t>(d);
      const std::size_t lo = i >= h ? i - h : 0;
      const std::size_t hi = std::min(n - 1, i + h);
      for (std::size_t j = lo; j <= hi; ++j) {
        if (j == i) continue;
        std::uint64_t global = t;
        if (shared_progress) {
          if (t == kPublishEvery) {
            processed_.fetch_add(t, std::memory_order_relaxed);
            t = 0;
          }
          global = processed_.load(std::memory_order_relaxed) + t;
        }
        const double lr_d = learning_rate(config_, global, total_pairs_);
        if (!shared_progress && hooks_.on_pair) hooks_.on_pair(global, lr_d);
        const auto lr = static_cast<float>(lr_d);

        std::fill(grad.begin(), grad.end(), 0.0f);
        for (int k = 0; k <= config_.negatives; ++k) {
          const WordId target = k == 0 ? ids_[j] : noise_.sample(rng);
          const float label = k == 0 ? 1.0f : 0.0f;
          float* const v = V + static_cast<std::size_t>(target) * static_cast<std::size_t>(d);
          const float f = dot(u, v, d);
          if (!std::isfinite(f)) diverged(epoch, i, center, target, f);
          const float g = (label - sigmoid_clamped(f)) * lr;
          for (int c = 0; c < d; ++c) grad[static_cast<std::size_t>(c)] += g * v[c];
          for (int c = 0; c < d; ++c) v[c] += g * u[c];
        }
        for (int c = 0; c < d; ++c) u[c] += grad[static_cast<std::size_t>(c)];
        ++t;
      }
    }
    if (shared_progress) processed_.fetch_add(t, std::memory_order_relaxed);
  }

  [[noreturn]] void diverged(int epoch, std::size_t position, WordId center, WordId target,
                             float activation) const {
    std::ostringstream msg;
    msg << "SGNS diverged: non-finite activation " << activation << " at epoch " << epoch
        << ", token position " << position << ", center id " << center << ", target id "
        << target;
    fail(ErrorCode::kDiverged, msg.str());
  }

  void check_norms(int epoch) const {
    const double guard2 = config_.norm_guard * config_.norm_guard;
    for (std::size_t w = 0; w < emb_.rows(); ++w) {
      for (bool context : {false, true}) {
        const auto row = context ? emb_.v(w) : emb_.u(w);
        double n2 = 0.0;
        for (float x : row) n2 += static_cast<double>(x) * x;
        if (!(n2 <= guard2)) {
          std::ostringstream msg;
          msg << "SGNS diverged: " << (context ? "context" : "word") << " embedding of id " << w
              << " has norm " << std::sqrt(n2) << " > guard " << config_.norm_guard
              << " after epoch " << epoch;
          fail(ErrorCode::kDiverged, msg.str());
        }
      }
    }
  }

  const std::vector<WordId>& ids_;
  const TrainConfig& config_;
  const TrainHooks& hooks_;
  EmbeddingSet& emb_;
  NoiseDistribution noise_;
  std::uint64_t total_pairs_;
  std::atomic<std::uint64_t> processed_{0};
};

}  // namespace

EmbeddingSet train(const TokenStream& stream, const Vocabulary& vocab, const TrainConfig& config,
                   const TrainHooks& hooks) {
  config.validate();
  if (stream.empty()) fail(ErrorCode::kEmptyVocabulary, "cannot train on an empty stream");
  require(!vocab.empty(), "cannot train with an empty vocabulary");
  for (WordId w : stream.ids)
    require(w >= 0 && static_cast<std::size_t>(w) < vocab.size(),
            "token stream inconsistent with vocabulary");

  EmbeddingSet emb =
      initialize_embeddings(vocab.size(), config.dim, derive_seed(config.seed, "sgns-init"));
  if (hooks.on_init) hooks.on_init(emb);
  Trainer(stream, vocab, config, hooks, emb).run();
  if (!emb.all_finite()) fail(ErrorCode::kDiverged, "SGNS produced non-finite embeddings");
  return emb;
}

std::vector<WordPair> sample_pairs(const TokenStream& stream, int window, std::size_t count,
                                   std::uint64_t seed) {
  require(window >= 1, "window must be >= 1");
  require(stream.size() >= 2, "need at least two tokens to sample pairs");
  Rng rng(seed);
  const auto n = static_cast<std::int64_t>(stream.size());
  std::vector<WordPair> pairs;
  pairs.reserve(count);
  while (pairs.size() < count) {
    const auto i = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(n)));
    auto offset = static_cast<std::int64_t>(rng.below(2 * static_cast<std::uint64_t>(window))) - window;
    if (offset >= 0) ++offset;
    const std::int64_t j = i + offset;
    if (j < 0 || j >= n) continue;
    pairs.push_back({stream.ids[static_cast<std::size_t>(i)], stream.ids[static_cast<std::size_t>(j)]});
  }
  return pairs;
}

namespace {

double log_sigmoid(double x) {
  return x >= 0.0 ? -std::log1p(std::exp(-x)) : x - std::log1p(std::exp(x));
}

double dot_d(std::span<const float> a, std::span<const float> b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += static_cast<double>(a[k]) * b[k];
  return s;
}

}  // namespace

double sgns_objective(const EmbeddingSet& emb, std::span<const WordPair> pairs,
                      const NoiseDistribution& noise, int negatives, std::uint64_t seed) {
  require(!pairs.empty(), "objective needs at least one pair");
  Rng rng(seed);
  double total = 0.0;
  for (const auto& p : pairs) {
    const auto u = emb.u(static_cast<std::size_t>(p.center));
    total += log_sigmoid(dot_d(u, emb.v(static_cast<std::size_t>(p.context))));
    for (int k = 0; k < negatives; ++k) {
      const WordId neg = noise.sample(rng);
      total += log_sigmoid(-dot_d(u, emb.v(static_cast<std::size_t>(neg))));
    }
  }
  return total / static_cast<double>(pairs.size());
}

void write_word2vec(const std::string& path, const Vocabulary& vocab, const EmbeddingSet& emb,
                    bool context) {
  require(emb.rows() == vocab.size(), "embedding rows differ from vocabulary size");
  std::ofstream out(path);
  if (!out) fail(ErrorCode::kIo, "cannot write embedding file " + path);
  out << emb.rows() << ' ' << emb.dim() << '\n';
  char buf[32];
  for (std::size_t w = 0; w < emb.rows(); ++w) {
    out << vocab.word(static_cast<WordId>(w));
    for (float x : context ? emb.v(w) : emb.u(w)) {
      std::snprintf(buf, sizeof buf, " %.9g", static_cast<double>(x));
      out << buf;
    }
    out << '\n';
  }
  if (!out) fail(ErrorCode::kIo, "error writing embedding file " + path);
}

namespace {

void read_matrix(const std::string& path, const Vocabulary& vocab, int& dim,
                 std::vector<float>& data) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::kIo, "cannot open embedding file " + path);
  std::size_t rows = 0;
  int d = 0;
  if (!(in >> rows >> d) || d < 1) fail(ErrorCode::kParse, "bad word2vec header in " + path);
  if (dim != 0 && d != dim) fail(ErrorCode::kParse, "embedding files disagree on dimension");
  dim = d;
  if (rows != vocab.size())
    fail(ErrorCode::kParse, path + " has " + std::to_string(rows) + " rows, vocabulary has " +
                                std::to_string(vocab.size()));
  data.assign(rows * static_cast<std::size_t>(d), 0.0f);
  std::vector<bool> seen(rows, false);
  std::string word;
  for (std::size_t r = 0; r < rows; ++r) {
    if (!(in >> word)) fail(ErrorCode::kParse, "truncated embedding file " + path);
    const WordId id = vocab.find(word);
    if (id < 0) fail(ErrorCode::kUnknownWord, "embedding word '" + word + "' not in vocabulary");
    if (seen[static_cast<std::size_t>(id)]) fail(ErrorCode::kParse, "duplicate embedding row " + word);
    seen[static_cast<std::size_t>(id)] = true;
    float* row = data.data() + static_cast<std::size_t>(id) * static_cast<std::size_t>(d);
    for (int k = 0; k < d; ++k)
      if (!(in >> row[k])) fail(ErrorCode::kParse, "bad embedding value for '" + word + "'");
  }
}

}  // namespace

EmbeddingSet read_word2vec(const std::string& u_path, const std::string& v_path,
                           const Vocabulary& vocab) {
  int dim = 0;
  std::vector<float> u, v;
  read_matrix(u_path, vocab, dim, u);
  read_matrix(v_path, vocab, dim, v);
  EmbeddingSet emb(vocab.size(), dim);
  emb.u_data() = std::move(u);
  emb.v_data() = std::move(v);
  return emb;
}

}  // namespace infogain
