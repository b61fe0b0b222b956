#include "infogain/tasks.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include "json.hpp"
#include <numeric>
#include <unordered_map>
#include <unordered_set>

#include "infogain/bias.hpp"
#include "infogain/error.hpp"
#include "infogain/infostats.hpp"
#include "infogain/parallel.hpp"
#include "infogain/random.hpp"

namespace infogain {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string trim(std::string s) {
  const auto is_space = [](unsigned char c) { return std::isspace(c) != 0; };
  while (!s.empty() && is_space(static_cast<unsigned char>(s.back()))) s.pop_back();
  std::size_t start = 0;
  while (start < s.size() && is_space(static_cast<unsigned char>(s[start]))) ++start;
  return s.substr(start);
}

std::string lower_ascii(std::string s) {
  for (char& c : s)
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  return s;
}
}  // namespace

// ---------------------------------------------------------------------------
// Keyword extraction

std::vector<KeywordDocument> read_keyword_dataset(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::kIo, "cannot open keyword dataset " + path);
  std::vector<KeywordDocument> docs;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    nlohmann::json record;
    try {
      record = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      fail(ErrorCode::kParse, path + ":" + std::to_string(line_no) + ": " + e.what());
    }
    if (!record.is_object() || !record.contains("text") || !record["text"].is_string())
      fail(ErrorCode::kParse, path + ":" + std::to_string(line_no) + ": record needs a \"text\" string");
    KeywordDocument doc;
    if (record.contains("id")) {
      const auto& id = record["id"];
      doc.id = id.is_string() ? id.get<std::string>() : id.dump();
    } else {
      doc.id = std::to_string(docs.size());
    }
    doc.text = record["text"].get<std::string>();
    if (record.contains("keywords")) {
      const auto& kws = record["keywords"];
      if (!kws.is_array())
        fail(ErrorCode::kParse, path + ":" + std::to_string(line_no) + ": \"keywords\" must be an array");
      for (const auto& kw : kws) {
        if (!kw.is_string())
          fail(ErrorCode::kParse, path + ":" + std::to_string(line_no) + ": keyword is not a string");
        doc.gold_keywords.push_back(kw.get<std::string>());
      }
    }
    docs.push_back(std::move(doc));
  }
  return docs;
}

std::vector<std::string> preprocess_keyword_text(std::string_view text) {
  // Bytes >= 0x80 count as word characters so UTF-8 words stay whole.
  const auto is_word = [](unsigned char c) { return c >= 0x80 || std::isalnum(c) != 0; };
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && !is_word(static_cast<unsigned char>(text[i]))) ++i;
    const std::size_t start = i;
    while (i < text.size() && is_word(static_cast<unsigned char>(text[i]))) ++i;
    if (i > start) out.push_back(porter_stem(lower_ascii(std::string(text.substr(start, i - start)))));
  }
  return out;
}

std::vector<WordId> restrict_vocabulary(const Vocabulary& vocab) {
  require(!vocab.empty(), "restrict_vocabulary needs a nonempty vocabulary");
  // c_i >= N/3  <=>  3 c_i >= N, kept in integers.
  std::vector<WordId> prefix;
  std::int64_t cumulative = 0;
  for (std::size_t w = 0; w < vocab.size(); ++w) {
    cumulative += vocab.count(static_cast<WordId>(w));
    prefix.push_back(static_cast<WordId>(w));
    if (3 * cumulative >= vocab.total()) break;
  }
  return prefix;
}

std::string_view measure_name(KeywordMeasure m) {
  switch (m) {
    case KeywordMeasure::kRandom: return "random";
    case KeywordMeasure::kCount: return "n_w";
    case KeywordMeasure::kCountEntropy: return "n_w*H";
    case KeywordMeasure::kChiSquare: return "chi2";
    case KeywordMeasure::kCountKl: return "n_w*KL";
  }
  return "?";
}

std::vector<KeywordMeasure> all_keyword_measures() {
  return {KeywordMeasure::kRandom, KeywordMeasure::kCount, KeywordMeasure::kCountEntropy,
          KeywordMeasure::kChiSquare, KeywordMeasure::kCountKl};
}

std::size_t RankedList::rank_of(std::string_view word) const {
  for (std::size_t i = 0; i < words.size(); ++i)
    if (words[i] == word) return i + 1;
  return 0;
}

RankedList rank_keywords(std::span<const std::string> tokens, KeywordMeasure measure, int window,
                         std::uint64_t seed) {
  if (tokens.empty()) fail(ErrorCode::kEmptyVocabulary, "document is empty after preprocessing");
  require(window >= 1, "window must be >= 1");
  const Corpus corpus = build_vocab(tokens, 1);
  const Vocabulary& vocab = corpus.vocab;
  const std::size_t n_words = vocab.size();

  RankedList out;
  out.measure = std::string(measure_name(measure));
  out.words.reserve(n_words);

  if (measure == KeywordMeasure::kRandom) {
    TokenStream order;
    order.ids.resize(n_words);
    std::iota(order.ids.begin(), order.ids.end(), 0);
    for (WordId w : shuffle_corpus(order, derive_seed(seed, "keyword-random")).ids)
      out.words.push_back(vocab.word(w));
    return out;
  }

  // Contexts and the unigram are restricted to V' and renormalized there.
  const auto prime = restrict_vocabulary(vocab);
  const auto k = static_cast<WordId>(prime.size());
  std::int64_t prime_total = 0;
  for (WordId c = 0; c < k; ++c) prime_total += vocab.count(c);
  std::vector<double> unigram(n_words, 0.0);
  for (WordId c = 0; c < k; ++c)
    unigram[static_cast<std::size_t>(c)] =
        static_cast<double>(vocab.count(c)) / static_cast<double>(prime_total);

  const CoocMatrix cooc = count_cooccurrences(corpus.stream, vocab, window);

  struct Scored {
    WordId id;
    double score;
    bool valid;
  };
  std::vector<Scored> scored(n_words);
  for (std::size_t i = 0; i < n_words; ++i) {
    const auto w = static_cast<WordId>(i);
    const auto n_w = static_cast<double>(vocab.count(w));
    Scored& s = scored[i];
    s.id = w;
    s.valid = true;
    if (measure == KeywordMeasure::kCount) {
      s.score = n_w;
      continue;
    }
    std::vector<CoocEntry> row;
    std::int64_t row_sum = 0;
    for (const auto& e : cooc.row(w))
      if (e.context < k) {
        row.push_back(e);
        row_sum += e.count;
      }
    if (row.empty()) {
      s.valid = false;
      s.score = 0.0;
      continue;
    }
    std::vector<SparseProb> cond;
    cond.reserve(row.size());
    for (const auto& e : row)
      cond.push_back({e.context, static_cast<double>(e.count) / static_cast<double>(row_sum)});
    switch (measure) {
      case KeywordMeasure::kCountEntropy: s.score = n_w * shannon_entropy(cond); break;
      case KeywordMeasure::kChiSquare: s.score = chi_square(row, unigram); break;
      case KeywordMeasure::kCountKl: s.score = n_w * kl_divergence(cond, unigram); break;
      default: break;
    }
  }

  const bool ascending = measure == KeywordMeasure::kCountEntropy;
  std::sort(scored.begin(), scored.end(), [&](const Scored& a, const Scored& b) {
    if (a.valid != b.valid) return a.valid;
    if (a.valid && a.score != b.score) return ascending ? a.score < b.score : a.score > b.score;
    const auto na = vocab.count(a.id);
    const auto nb = vocab.count(b.id);
    if (na != nb) return na > nb;
    return vocab.word(a.id) < vocab.word(b.id);
  });
  for (const auto& s : scored) out.words.push_back(vocab.word(s.id));
  return out;
}

RankedList rank_keywords(const KeywordDocument& doc, KeywordMeasure measure, int window,
                         std::uint64_t seed) {
  const auto tokens = preprocess_keyword_text(doc.text);
  return rank_keywords(tokens, measure, window, seed);
}

std::vector<std::vector<std::string>> preprocess_gold(std::span<const std::string> gold) {
  std::vector<std::vector<std::string>> out;
  out.reserve(gold.size());
  for (const auto& kw : gold) out.push_back(preprocess_keyword_text(kw));
  return out;
}

namespace {

std::unordered_map<std::string_view, std::size_t> rank_index(const RankedList& ranking) {
  std::unordered_map<std::string_view, std::size_t> ranks;
  ranks.reserve(ranking.words.size());
  for (std::size_t i = 0; i < ranking.words.size(); ++i) ranks.emplace(ranking.words[i], i + 1);
  return ranks;
}

// Worst rank over the keyword's words; 0 when some word is unranked.
std::size_t phrase_rank(const std::unordered_map<std::string_view, std::size_t>& ranks,
                        const std::vector<std::string>& keyword) {
  if (keyword.empty()) return 0;
  std::size_t worst = 0;
  for (const auto& word : keyword) {
    const auto it = ranks.find(word);
    if (it == ranks.end()) return 0;
    worst = std::max(worst, it->second);
  }
  return worst;
}

}  // namespace

std::optional<double> reciprocal_rank(const RankedList& ranking,
                                      std::span<const std::vector<std::string>> gold) {
  if (gold.empty()) return std::nullopt;
  const auto ranks = rank_index(ranking);
  std::size_t best = 0;
  for (const auto& kw : gold) {
    const std::size_t r = phrase_rank(ranks, kw);
    if (r > 0 && (best == 0 || r < best)) best = r;
  }
  return best == 0 ? 0.0 : 1.0 / static_cast<double>(best);
}

std::optional<double> precision_at_5(const RankedList& ranking,
                                     std::span<const std::vector<std::string>> gold) {
  if (gold.empty()) return std::nullopt;
  const auto ranks = rank_index(ranking);
  int hits = 0;
  for (const auto& kw : gold) {
    const std::size_t r = phrase_rank(ranks, kw);
    if (r > 0 && r <= 5) ++hits;
  }
  return 100.0 * hits / 5.0;
}

KeywordScores evaluate_keywords(std::span<const KeywordDocument> docs, KeywordMeasure measure,
                                int window, std::uint64_t seed, int threads) {
  struct DocResult {
    bool used = false;
    double rr = 0.0;
    double p5 = 0.0;
  };
  std::vector<DocResult> results(docs.size());
  const std::uint64_t base = derive_seed(seed, "keyword-documents");
  parallel_for(docs.size(), threads, [&](std::size_t i) {
    const auto& doc = docs[i];
    const auto gold = preprocess_gold(doc.gold_keywords);
    const auto tokens = preprocess_keyword_text(doc.text);
    if (gold.empty() || tokens.empty()) return;
    const auto ranking = rank_keywords(tokens, measure, window, derive_seed(base, i));
    results[i].used = true;
    results[i].rr = *reciprocal_rank(ranking, gold);
    results[i].p5 = *precision_at_5(ranking, gold);
  });

  KeywordScores scores;
  double rr_sum = 0.0;
  double p5_sum = 0.0;
  for (const auto& r : results) {
    if (!r.used) {
      ++scores.excluded;
      continue;
    }
    ++scores.documents;
    rr_sum += r.rr;
    p5_sum += r.p5;
  }
  if (scores.documents > 0) {
    scores.mrr = 100.0 * rr_sum / static_cast<double>(scores.documents);
    scores.p_at_5 = p5_sum / static_cast<double>(scores.documents);
  }
  return scores;
}

// ---------------------------------------------------------------------------
// Binary classification

double roc_auc(std::span<const double> positive, std::span<const double> negative,
               bool higher_is_positive) {
  require(!positive.empty() && !negative.empty(), "roc_auc needs both classes nonempty");
  struct Item {
    double score;
    bool positive;
  };
  std::vector<Item> items;
  items.reserve(positive.size() + negative.size());
  const double sign = higher_is_positive ? 1.0 : -1.0;
  for (double x : positive) {
    require(!std::isnan(x), "roc_auc: NaN score");
    items.push_back({sign * x, true});
  }
  for (double x : negative) {
    require(!std::isnan(x), "roc_auc: NaN score");
    items.push_back({sign * x, false});
  }
  std::sort(items.begin(), items.end(), [](const Item& a, const Item& b) { return a.score < b.score; });

  // Twice the positive rank sum, with midranks for ties, stays integral.
  std::uint64_t twice_rank_sum = 0;
  for (std::size_t i = 0; i < items.size();) {
    std::size_t j = i + 1;
    while (j < items.size() && items[j].score == items[i].score) ++j;
    const std::uint64_t twice_mid = i + j + 1;  // 2 * ((i+1 + j) / 2)
    for (std::size_t t = i; t < j; ++t)
      if (items[t].positive) twice_rank_sum += twice_mid;
    i = j;
  }
  const auto n_pos = static_cast<std::uint64_t>(positive.size());
  const auto n_neg = static_cast<std::uint64_t>(negative.size());
  // 2U = 2R - n_pos (n_pos + 1); U counts correct pairs plus half the ties.
  const std::uint64_t twice_u = twice_rank_sum - n_pos * (n_pos + 1);
  return static_cast<double>(twice_u) / 2.0 / (static_cast<double>(n_pos) * static_cast<double>(n_neg));
}

// ---------------------------------------------------------------------------
// Hypernymy

double weeds_prec(const CoocMatrix& cooc, WordId w1, WordId w2) {
  const std::int64_t denom = cooc.row_sum(w1);
  if (denom <= 0)
    fail(ErrorCode::kZeroSupport, "weeds_prec: word id " + std::to_string(w1) + " has an empty row");
  const auto r1 = cooc.row(w1);
  const auto r2 = cooc.row(w2);
  std::int64_t shared = 0;
  std::size_t j = 0;
  for (const auto& e : r1) {
    while (j < r2.size() && r2[j].context < e.context) ++j;
    if (j < r2.size() && r2[j].context == e.context) shared += e.count;
  }
  return static_cast<double>(shared) / static_cast<double>(denom);
}

Prediction slqs_row(double h1, double h2) {
  if (h2 == 0.0) fail(ErrorCode::kInvalidArgument, "slqs_row: H(w2) is zero");
  const double stat = 1.0 - h1 / h2;
  if (stat < 0.0) return Prediction::kFirst;
  if (stat > 0.0) return Prediction::kSecond;
  return Prediction::kUnresolved;
}

double local_mutual_information(const CoocMatrix& cooc, std::span<const double> context_marginal,
                                WordId w, WordId c) {
  const std::int64_t n = cooc.get(w, c);
  if (n == 0) return 0.0;
  const auto total = static_cast<double>(cooc.total());
  const double p_wc = static_cast<double>(n) / total;
  const double p_w = static_cast<double>(cooc.row_sum(w)) / total;
  return static_cast<double>(n) * std::log(p_wc / (p_w * context_marginal[static_cast<std::size_t>(c)]));
}

std::vector<WordId> salient_contexts(const CoocMatrix& cooc,
                                     std::span<const double> context_marginal, WordId w,
                                     int size) {
  require(size >= 1, "context set size must be >= 1");
  std::vector<std::pair<double, WordId>> positive;
  for (const auto& e : cooc.row(w)) {
    const double lmi = local_mutual_information(cooc, context_marginal, w, e.context);
    if (lmi > 0.0) positive.emplace_back(lmi, e.context);
  }
  std::sort(positive.begin(), positive.end(), [](const auto& a, const auto& b) {
    return a.first != b.first ? a.first > b.first : a.second < b.second;
  });
  if (positive.size() > static_cast<std::size_t>(size)) positive.resize(static_cast<std::size_t>(size));
  std::vector<WordId> out;
  out.reserve(positive.size());
  for (const auto& [lmi, c] : positive) out.push_back(c);
  return out;
}

std::optional<double> median_over(std::span<const WordId> contexts, std::span<const double> values) {
  std::vector<double> v;
  v.reserve(contexts.size());
  for (WordId c : contexts) {
    const double x = values[static_cast<std::size_t>(c)];
    if (!std::isnan(x)) v.push_back(x);
  }
  if (v.empty()) return std::nullopt;
  const std::size_t mid = (v.size() - 1) / 2;
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
  return v[mid];
}

namespace {

// w1 is the hypernym when its value is larger.
Prediction larger_first(double a, double b) {
  if (a > b) return Prediction::kFirst;
  if (a < b) return Prediction::kSecond;
  return Prediction::kUnresolved;
}

std::optional<double> context_median(const CoocMatrix& cooc, std::span<const double> marginal,
                                     std::span<const double> values, WordId w, int size) {
  const auto contexts = salient_contexts(cooc, marginal, w, size);
  return median_over(contexts, values);
}

}  // namespace

Prediction slqs(const CoocMatrix& cooc, std::span<const double> context_marginal,
                std::span<const double> entropy, WordId w1, WordId w2, int context_size) {
  const auto e1 = context_median(cooc, context_marginal, entropy, w1, context_size);
  const auto e2 = context_median(cooc, context_marginal, entropy, w2, context_size);
  if (!e1 || !e2) return Prediction::kUnresolved;
  return larger_first(*e1, *e2);
}

std::string_view method_name(HypernymMethod m) {
  switch (m) {
    case HypernymMethod::kRandom: return "random";
    case HypernymMethod::kFrequency: return "n_w";
    case HypernymMethod::kWeedsPrec: return "WeedsPrec";
    case HypernymMethod::kSlqsRow: return "SLQS_Row";
    case HypernymMethod::kSlqs: return "SLQS";
    case HypernymMethod::kKl: return "KL";
    case HypernymMethod::kNorm2: return "norm2";
    case HypernymMethod::kDeltaWeedsPrec: return "dWeedsPrec";
    case HypernymMethod::kDeltaSlqsRow: return "dSLQS_Row";
    case HypernymMethod::kDeltaSlqs: return "dSLQS";
    case HypernymMethod::kDeltaKl: return "dKL";
    case HypernymMethod::kDeltaNorm2: return "dnorm2";
  }
  return "?";
}

std::vector<HypernymMethod> all_hypernym_methods() {
  return {HypernymMethod::kRandom,        HypernymMethod::kFrequency,   HypernymMethod::kWeedsPrec,
          HypernymMethod::kSlqsRow,       HypernymMethod::kSlqs,        HypernymMethod::kKl,
          HypernymMethod::kNorm2,         HypernymMethod::kDeltaWeedsPrec, HypernymMethod::kDeltaSlqsRow,
          HypernymMethod::kDeltaSlqs,     HypernymMethod::kDeltaKl,     HypernymMethod::kDeltaNorm2};
}

std::vector<HypernymPair> read_hypernym_pairs(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::kIo, "cannot open hypernym dataset " + path);
  std::vector<HypernymPair> pairs;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto tab = t.find('\t');
    if (tab == std::string::npos)
      fail(ErrorCode::kParse, path + ":" + std::to_string(line_no) + ": expected hypo<TAB>hyper");
    pairs.push_back({lower_ascii(trim(t.substr(0, tab))), lower_ascii(trim(t.substr(tab + 1)))});
  }
  return pairs;
}

std::optional<Prediction> predict_hypernym(const HypernymInputs& in, WordId w1, WordId w2,
                                           HypernymMethod method, std::uint64_t pair_index) {
  require(in.vocab != nullptr, "predict_hypernym needs a vocabulary");
  const auto at = [](const std::vector<double>& v, WordId w) -> std::optional<double> {
    if (v.empty()) return std::nullopt;
    const double x = v.at(static_cast<std::size_t>(w));
    if (std::isnan(x)) return std::nullopt;
    return x;
  };
  // Smaller value => hypernym.
  const auto smaller_first = [&](const std::vector<double>& v) -> std::optional<Prediction> {
    const auto a = at(v, w1);
    const auto b = at(v, w2);
    if (!a || !b) return std::nullopt;
    return larger_first(*b, *a);
  };
  const auto larger = [&](const std::vector<double>& v) -> std::optional<Prediction> {
    const auto a = at(v, w1);
    const auto b = at(v, w2);
    if (!a || !b) return std::nullopt;
    return larger_first(*a, *b);
  };
  const auto weeds = [&](bool corrected) -> std::optional<Prediction> {
    if (in.cooc == nullptr) return std::nullopt;
    if (in.cooc->row_sum(w1) <= 0 || in.cooc->row_sum(w2) <= 0) return std::nullopt;
    double a = weeds_prec(*in.cooc, w1, w2);
    double b = weeds_prec(*in.cooc, w2, w1);
    if (corrected) {
      if (!in.weeds_baseline) return std::nullopt;
      a -= in.weeds_baseline(w1, w2);
      b -= in.weeds_baseline(w2, w1);
      if (std::isnan(a) || std::isnan(b)) return std::nullopt;
    }
    // w1 is the hypernym when WeedsPrec(w1, w2) < WeedsPrec(w2, w1).
    return larger_first(b, a);
  };
  const auto median_entropy = [&](const std::vector<double>& values) -> std::optional<Prediction> {
    if (in.cooc == nullptr || in.context_marginal.empty() || values.empty()) return std::nullopt;
    const auto e1 = context_median(*in.cooc, in.context_marginal, values, w1, in.context_size);
    const auto e2 = context_median(*in.cooc, in.context_marginal, values, w2, in.context_size);
    if (!e1 || !e2) return Prediction::kUnresolved;
    return larger_first(*e1, *e2);
  };

  switch (method) {
    case HypernymMethod::kRandom: {
      Rng rng(derive_seed(derive_seed(in.seed, "hypernym-random"), pair_index));
      return rng.below(2) == 0 ? Prediction::kFirst : Prediction::kSecond;
    }
    case HypernymMethod::kFrequency:
      return larger_first(static_cast<double>(in.vocab->count(w1)),
                          static_cast<double>(in.vocab->count(w2)));
    case HypernymMethod::kWeedsPrec: return weeds(false);
    case HypernymMethod::kDeltaWeedsPrec: return weeds(true);
    case HypernymMethod::kSlqsRow: return larger(in.entropy);
    case HypernymMethod::kDeltaSlqsRow: return larger(in.delta_entropy);
    case HypernymMethod::kSlqs: return median_entropy(in.entropy);
    case HypernymMethod::kDeltaSlqs: return median_entropy(in.delta_entropy);
    case HypernymMethod::kKl: return smaller_first(in.kl);
    case HypernymMethod::kNorm2: return smaller_first(in.norm2);
    case HypernymMethod::kDeltaKl: return smaller_first(in.delta_kl);
    case HypernymMethod::kDeltaNorm2: return smaller_first(in.delta_norm2);
  }
  return std::nullopt;
}

HypernymAccuracy evaluate_hypernyms(const HypernymInputs& in, std::span<const HypernymPair> pairs,
                                    HypernymMethod method) {
  require(in.vocab != nullptr, "evaluate_hypernyms needs a vocabulary");
  HypernymAccuracy acc;
  double score_more = 0.0;
  double score_less = 0.0;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const WordId hypo = in.vocab->find(pairs[i].hypo);
    const WordId hyper = in.vocab->find(pairs[i].hyper);
    if (hypo < 0 || hyper < 0) {
      ++acc.skipped_oov;
      continue;
    }
    const auto n_hypo = in.vocab->count(hypo);
    const auto n_hyper = in.vocab->count(hyper);
    if (n_hypo == n_hyper) {
      ++acc.skipped_equal;
      continue;
    }
    const auto pred = predict_hypernym(in, hypo, hyper, method, i);
    if (!pred) {
      ++acc.skipped_missing;
      continue;
    }
    const double score = *pred == Prediction::kSecond ? 1.0 : *pred == Prediction::kUnresolved ? 0.5 : 0.0;
    if (n_hyper > n_hypo) {
      score_more += score;
      ++acc.n_more;
    } else {
      score_less += score;
      ++acc.n_less;
    }
  }
  acc.hyper_more = acc.n_more > 0 ? 100.0 * score_more / static_cast<double>(acc.n_more) : kNaN;
  acc.hyper_less = acc.n_less > 0 ? 100.0 * score_less / static_cast<double>(acc.n_less) : kNaN;
  return acc;
}

AveragedAccuracy average_accuracy(std::span<const HypernymAccuracy> datasets) {
  require(!datasets.empty(), "average_accuracy needs at least one dataset");
  AveragedAccuracy avg;
  for (const auto& d : datasets) {
    avg.hyper_more += d.hyper_more;
    avg.hyper_less += d.hyper_less;
  }
  const auto n = static_cast<double>(datasets.size());
  avg.hyper_more /= n;
  avg.hyper_less /= n;
  avg.both = 0.5 * (avg.hyper_more + avg.hyper_less);
  return avg;
}

PairBaseline::PairBaseline(const TokenStream& stream, const Vocabulary& vocab, int window,
                           std::span<const HypernymPair> pairs, int n_shuffles, std::uint64_t seed,
                           int threads) {
  std::vector<std::pair<WordId, WordId>> ordered;
  for (const auto& p : pairs) {
    const WordId a = vocab.find(p.hypo);
    const WordId b = vocab.find(p.hyper);
    if (a < 0 || b < 0) continue;
    ordered.emplace_back(a, b);
    ordered.emplace_back(b, a);
  }
  const auto key = [](WordId a, WordId b) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) | static_cast<std::uint32_t>(b);
  };
  std::sort(ordered.begin(), ordered.end(),
            [&](const auto& x, const auto& y) { return key(x.first, x.second) < key(y.first, y.second); });
  ordered.erase(std::unique(ordered.begin(), ordered.end()), ordered.end());
  for (const auto& [a, b] : ordered) keys_.push_back(key(a, b));
  if (ordered.empty()) return;

  const CorpusStatistic stat = [&](const CoocMatrix& cooc, const Vocabulary&) {
    std::vector<double> out(ordered.size(), kNaN);
    for (std::size_t i = 0; i < ordered.size(); ++i)
      if (cooc.row_sum(ordered[i].first) > 0) out[i] = weeds_prec(cooc, ordered[i].first, ordered[i].second);
    return out;
  };
  values_ = shuffle_baseline(stream, vocab, window, stat, n_shuffles, seed, threads).baseline;
}

double PairBaseline::operator()(WordId w1, WordId w2) const {
  const std::uint64_t k =
      (static_cast<std::uint64_t>(static_cast<std::uint32_t>(w1)) << 32) | static_cast<std::uint32_t>(w2);
  const auto it = std::lower_bound(keys_.begin(), keys_.end(), k);
  if (it == keys_.end() || *it != k) return kNaN;
  return values_[static_cast<std::size_t>(it - keys_.begin())];
}

// ---------------------------------------------------------------------------
// Part-of-speech discrimination

std::vector<std::string> read_word_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::kIo, "cannot open word list " + path);
  std::vector<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    words.push_back(lower_ascii(t));
  }
  return words;
}

PosResult evaluate_pos(const Vocabulary& vocab, std::span<const double> measure,
                       bool higher_is_positive, std::span<const std::string> positive,
                       std::span<const std::string> negative, std::int64_t min_count) {
  require(measure.size() == vocab.size(), "evaluate_pos: measure and vocabulary differ in size");
  PosResult result;
  const auto collect = [&](std::span<const std::string> words, std::vector<double>& out) {
    std::unordered_set<std::string_view> seen;
    for (const auto& word : words) {
      if (!seen.insert(word).second) continue;
      const WordId w = vocab.find(word);
      if (w < 0 || vocab.count(w) < min_count || std::isnan(measure[static_cast<std::size_t>(w)])) {
        ++result.skipped;
        continue;
      }
      out.push_back(measure[static_cast<std::size_t>(w)]);
    }
  };
  std::vector<double> pos, neg;
  collect(positive, pos);
  collect(negative, neg);
  result.n_positive = static_cast<std::int64_t>(pos.size());
  result.n_negative = static_cast<std::int64_t>(neg.size());
  if (pos.empty() || neg.empty())
    fail(ErrorCode::kInvalidArgument, "evaluate_pos: a class has no usable words");
  result.auc = roc_auc(pos, neg, higher_is_positive);
  return result;
}

void write_results_table(const std::string& path, std::span<const std::string> row_labels,
                         std::span<const std::string> column_labels,
                         const std::vector<std::vector<double>>& values) {
  require(values.size() == row_labels.size(), "results table: row count mismatch");
  std::ofstream out(path);
  if (!out) fail(ErrorCode::kIo, "cannot write results table " + path);
  out << "dataset";
  for (const auto& c : column_labels) out << '\t' << c;
  out << '\n';
  char buf[64];
  for (std::size_t r = 0; r < values.size(); ++r) {
    require(values[r].size() == column_labels.size(), "results table: column count mismatch");
    out << row_labels[r];
    for (double v : values[r]) {
      std::snprintf(buf, sizeof buf, "%.2f", v);
      out << '\t' << buf;
    }
    out << '\n';
  }
  if (!out) fail(ErrorCode::kIo, "error writing results table " + path);
}

}  // namespace infogain
