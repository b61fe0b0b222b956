#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "infogain/cooc.hpp"
#include "infogain/corpus.hpp"

namespace infogain {

std::string porter_stem(std::string_view word);

// ---------------------------------------------------------------------------
// Keyword extraction

struct KeywordDocument {
  std::string id;
  std::string text;
  std::vector<std::string> gold_keywords;  // possibly multi-word
};

// JSONL records {"id", "text", "keywords": [...]}.
std::vector<KeywordDocument> read_keyword_dataset(const std::string& path);

// Lowercase, split into alphanumeric runs, Porter-stem. Stopwords are kept.
std::vector<std::string> preprocess_keyword_text(std::string_view text);

// Shortest prefix of the (descending-count) vocabulary whose cumulative
// count reaches N/3, as ids 0..k-1.
std::vector<WordId> restrict_vocabulary(const Vocabulary& vocab);

enum class KeywordMeasure { kRandom, kCount, kCountEntropy, kChiSquare, kCountKl };

std::string_view measure_name(KeywordMeasure m);
std::vector<KeywordMeasure> all_keyword_measures();

struct RankedList {
  std::vector<std::string> words;  // rank i + 1 at index i
  std::string measure;

  // 1-based rank, or 0 when absent.
  std::size_t rank_of(std::string_view word) const;
};

// Ranks the document's vocabulary by an informativeness measure computed
// from the document's own co-occurrence counts, with context words
// restricted to restrict_vocabulary(). n_w H(w) ranks ascending, the others
// descending; ties go to larger n_w, then lexicographic order. Words without
// any restricted context rank last. Throws kEmptyVocabulary on an empty
// document.
RankedList rank_keywords(const KeywordDocument& doc, KeywordMeasure measure, int window,
                         std::uint64_t seed);
RankedList rank_keywords(std::span<const std::string> tokens, KeywordMeasure measure, int window,
                         std::uint64_t seed);

// Gold keywords preprocessed like the text: one stem sequence per keyword.
std::vector<std::vector<std::string>> preprocess_gold(std::span<const std::string> gold);

// Reciprocal rank of the best gold keyword; a phrase ranks at its worst
// word; keywords with a word missing from the ranking are unreachable.
// nullopt when there are no gold keywords.
std::optional<double> reciprocal_rank(const RankedList& ranking,
                                      std::span<const std::vector<std::string>> gold);
// Percentage of 5 taken by gold keywords whose words all rank in the top 5;
// may exceed 100.
std::optional<double> precision_at_5(const RankedList& ranking,
                                     std::span<const std::vector<std::string>> gold);

struct KeywordScores {
  double mrr = 0.0;   // x100
  double p_at_5 = 0.0;  // x100
  std::int64_t documents = 0;
  std::int64_t excluded = 0;  // no gold keywords or empty text
};

KeywordScores evaluate_keywords(std::span<const KeywordDocument> docs, KeywordMeasure measure,
                                int window, std::uint64_t seed, int threads = 1);

// ---------------------------------------------------------------------------
// Binary classification

// Mann-Whitney form: fraction of (pos, neg) pairs ordered correctly, ties
// counting one half. higher_is_positive=false flips the score direction.
double roc_auc(std::span<const double> positive, std::span<const double> negative,
               bool higher_is_positive = true);

// ---------------------------------------------------------------------------
// Hypernymy

enum class Prediction { kFirst, kSecond, kUnresolved };

// Mass of w1's row on contexts shared with w2.
double weeds_prec(const CoocMatrix& cooc, WordId w1, WordId w2);

// w1 is the hypernym when H(w1) > H(w2).
Prediction slqs_row(double h1, double h2);

// LMI(w,c) = n_{w,c} log(p(w,c) / (p(w) p_ctx(c))) with p(w,c) = n/total,
// p(w) = row_sum / total and p_ctx the context marginal.
double local_mutual_information(const CoocMatrix& cooc, std::span<const double> context_marginal,
                                WordId w, WordId c);

// Top `size` contexts by LMI among those with LMI > 0 (ties by id).
std::vector<WordId> salient_contexts(const CoocMatrix& cooc,
                                     std::span<const double> context_marginal, WordId w,
                                     int size = 50);

// Lower median of values over contexts; nullopt for an empty set or when
// every value is missing.
std::optional<double> median_over(std::span<const WordId> contexts, std::span<const double> values);

// E(w) comparison: w1 is the hypernym when E(w1) > E(w2).
Prediction slqs(const CoocMatrix& cooc, std::span<const double> context_marginal,
                std::span<const double> entropy, WordId w1, WordId w2, int context_size = 50);

enum class HypernymMethod {
  kRandom,
  kFrequency,
  kWeedsPrec,
  kSlqsRow,
  kSlqs,
  kKl,
  kNorm2,
  kDeltaWeedsPrec,
  kDeltaSlqsRow,
  kDeltaSlqs,
  kDeltaKl,
  kDeltaNorm2,
};

std::string_view method_name(HypernymMethod m);
std::vector<HypernymMethod> all_hypernym_methods();

struct HypernymPair {
  std::string hypo;
  std::string hyper;
};

// TSV "hypo<TAB>hyper".
std::vector<HypernymPair> read_hypernym_pairs(const std::string& path);

// Everything the methods read. Per-word vectors are indexed by vocabulary
// id; any may be empty when the corresponding methods are not evaluated.
// weeds_baseline(w1, w2) returns the shuffled-corpus mean of
// WeedsPrec(w1, w2).
struct HypernymInputs {
  const Vocabulary* vocab = nullptr;
  const CoocMatrix* cooc = nullptr;
  std::vector<double> context_marginal;
  std::vector<double> kl;
  std::vector<double> entropy;
  std::vector<double> norm2;
  std::vector<double> delta_kl;
  std::vector<double> delta_entropy;
  std::vector<double> delta_norm2;
  std::function<double(WordId, WordId)> weeds_baseline;
  int context_size = 50;
  std::uint64_t seed = 1;
};

// Which of (w1, w2) the method picks as hypernym, or nullopt when a required
// statistic is missing. pair_index seeds the random method.
std::optional<Prediction> predict_hypernym(const HypernymInputs& in, WordId w1, WordId w2,
                                           HypernymMethod method, std::uint64_t pair_index);

struct HypernymAccuracy {
  double hyper_more = 0.0;  // accuracy (%) on pairs with n_hyper > n_hypo
  double hyper_less = 0.0;  // accuracy (%) on pairs with n_hyper < n_hypo
  std::int64_t n_more = 0;
  std::int64_t n_less = 0;
  std::int64_t skipped_oov = 0;      // a word absent from the vocabulary
  std::int64_t skipped_equal = 0;    // n_hyper == n_hypo
  std::int64_t skipped_missing = 0;  // a required statistic missing
};

// Correct predictions score 1, unresolved ones 0.5.
HypernymAccuracy evaluate_hypernyms(const HypernymInputs& in, std::span<const HypernymPair> pairs,
                                    HypernymMethod method);

// Unweighted mean over datasets of each part, and of the two part means.
struct AveragedAccuracy {
  double hyper_more = 0.0;
  double hyper_less = 0.0;
  double both = 0.0;
};
AveragedAccuracy average_accuracy(std::span<const HypernymAccuracy> datasets);

// Shuffled-corpus mean of WeedsPrec for every ordered pair (a, b) and
// (b, a) drawn from `pairs`; pairs with an out-of-vocabulary word are
// ignored. Replicate seeds come from shuffle_seeds(seed, n_shuffles).
class PairBaseline {
 public:
  PairBaseline() = default;
  PairBaseline(const TokenStream& stream, const Vocabulary& vocab, int window,
               std::span<const HypernymPair> pairs, int n_shuffles, std::uint64_t seed,
               int threads = 1);

  // NaN when the pair was not requested or every replicate had an empty row.
  double operator()(WordId w1, WordId w2) const;
  std::size_t size() const { return keys_.size(); }

 private:
  std::vector<std::uint64_t> keys_;  // sorted (w1 << 32 | w2)
  std::vector<double> values_;
};

// ---------------------------------------------------------------------------
// Part-of-speech discrimination

// One word per line; blank lines and '#' comments skipped.
std::vector<std::string> read_word_list(const std::string& path);

struct PosResult {
  double auc = 0.0;
  std::int64_t n_positive = 0;
  std::int64_t n_negative = 0;
  std::int64_t skipped = 0;  // absent, below min_count, or missing measure
};

// ROC-AUC of `measure` separating the positive list (e.g. proper nouns)
// from the negative list, restricted to words with n_w >= min_count.
PosResult evaluate_pos(const Vocabulary& vocab, std::span<const double> measure,
                       bool higher_is_positive, std::span<const std::string> positive,
                       std::span<const std::string> negative, std::int64_t min_count = 10);

// TSV with a header row of column labels; values printed with 2 decimals.
void write_results_table(const std::string& path, std::span<const std::string> row_labels,
                         std::span<const std::string> column_labels,
                         const std::vector<std::vector<double>>& values);

}  // namespace infogain
