#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "infogain/bias.hpp"
#include "infogain/error.hpp"
#include "infogain/fixtures.hpp"
#include "infogain/infostats.hpp"
#include "infogain/tasks.hpp"
#include "oracles.hpp"

using namespace infogain;

namespace {

std::vector<std::string> words(const std::string& s) { return tokenize(s, false); }

RankedList ranked(const std::string& s) {
  RankedList r;
  r.words = words(s);
  r.measure = "fixture";
  return r;
}

std::vector<std::vector<std::string>> gold(std::initializer_list<const char*> phrases) {
  std::vector<std::vector<std::string>> g;
  for (const char* p : phrases) g.push_back(words(p));
  return g;
}

// Scan the ranking for every word of every phrase.
std::size_t scan_rank(const RankedList& r, const std::vector<std::string>& phrase) {
  std::size_t worst = 0;
  for (const auto& w : phrase) {
    std::size_t found = 0;
    for (std::size_t i = 0; i < r.words.size(); ++i)
      if (r.words[i] == w) {
        found = i + 1;
        break;
      }
    if (found == 0) return 0;
    worst = std::max(worst, found);
  }
  return worst;
}

void write_file(const std::string& path, const std::string& text) { std::ofstream(path) << text; }

}  // namespace

TEST_CASE("porter stemmer: spot checks") {
  CHECK(porter_stem("caresses") == "caress");
  CHECK(porter_stem("the") == "the");
  CHECK(porter_stem("ponies") == "poni");
  CHECK(porter_stem("relational") == "relat");
  CHECK(porter_stem("generalization") == "gener");
  CHECK(porter_stem("a") == "a");
  CHECK(porter_stem("") == "");
}

TEST_CASE("porter stemmer: reference vocabulary") {
  std::ifstream in(INFOGAIN_TEST_DATA "/porter_vocabulary.tsv");
  REQUIRE(in);
  std::string line;
  std::size_t n = 0, bad = 0;
  while (std::getline(in, line)) {
    const auto tab = line.find('\t');
    REQUIRE(tab != std::string::npos);
    const std::string word = line.substr(0, tab), stem = line.substr(tab + 1);
    if (porter_stem(word) != stem) {
      if (bad < 10) MESSAGE(word << " -> " << porter_stem(word) << ", expected " << stem);
      ++bad;
    }
    ++n;
  }
  CHECK(n > 23000);
  CHECK(bad == 0);
}

TEST_CASE("keyword text preprocessing") {
  CHECK(preprocess_keyword_text("The Cats, running!") == std::vector<std::string>{"the", "cat", "run"});
  CHECK(preprocess_keyword_text("").empty());
  CHECK(preprocess_gold(std::vector<std::string>{"New York", "cats"}) ==
        std::vector<std::vector<std::string>>{{"new", "york"}, {"cat"}});
}

TEST_CASE("restrict_vocabulary") {
  CHECK(restrict_vocabulary(Vocabulary({{"a", 5}, {"b", 3}, {"c", 2}, {"d", 1}, {"e", 1}})).size() == 1);
  std::vector<std::pair<std::string, std::int64_t>> nine;
  for (char c = 'a'; c < 'a' + 9; ++c) nine.push_back({std::string(1, c), 4});
  CHECK(restrict_vocabulary(Vocabulary(nine)).size() == 3);
  CHECK(restrict_vocabulary(Vocabulary({{"solo", 7}})).size() == 1);
  // 10 words of count 1: N/3 = 3.33 needs 4 words.
  std::vector<std::pair<std::string, std::int64_t>> ten;
  for (char c = 'a'; c < 'a' + 10; ++c) ten.push_back({std::string(1, c), 1});
  CHECK(restrict_vocabulary(Vocabulary(ten)).size() == 4);
}

TEST_CASE("rank_keywords: fixtures") {
  const auto count = rank_keywords(words("a a b"), KeywordMeasure::kCount, 1, 1);
  CHECK(count.words == std::vector<std::string>{"a", "b"});
  CHECK(count.rank_of("a") == 1);
  CHECK(count.rank_of("zzz") == 0);

  // x's contexts within V' = {a, b} are exactly proportional to the unigram.
  const auto kl = rank_keywords(words("a x b b x a a y a y z b z b"), KeywordMeasure::kCountKl, 1, 1);
  CHECK(kl.rank_of("x") > kl.rank_of("y"));
  CHECK(kl.rank_of("x") > kl.rank_of("z"));
  CHECK(kl.rank_of("y") < kl.rank_of("z"));  // equal score and count: lexicographic

  const auto r1 = rank_keywords(words("p q r s t u v p q"), KeywordMeasure::kRandom, 2, 9);
  const auto r2 = rank_keywords(words("p q r s t u v p q"), KeywordMeasure::kRandom, 2, 9);
  CHECK(r1.words == r2.words);
  CHECK(std::set<std::string>(r1.words.begin(), r1.words.end()).size() == 7);

  CHECK_THROWS_AS(rank_keywords(std::vector<std::string>{}, KeywordMeasure::kCount, 1, 1), Error);
  KeywordDocument empty{"d", "  ,, ", {"x"}};
  CHECK_THROWS_AS(rank_keywords(empty, KeywordMeasure::kCount, 1, 1), Error);
}

TEST_CASE("rank_keywords: scores and directions against a recount") {
  Rng rng(4);
  for (int t = 0; t < 20; ++t) {
    std::vector<std::string> toks;
    for (int i = 0; i < 300; ++i) {
      const auto k = static_cast<int>(std::floor(std::pow(rng.uniform(), 2.0) * 30));
      toks.push_back("t" + std::to_string(k));
    }
    const int h = 1 + static_cast<int>(rng.below(4));
    const auto corpus = build_vocab(toks, 1);
    const auto& v = corpus.vocab;
    const auto k = static_cast<WordId>(restrict_vocabulary(v).size());
    double prime_total = 0;
    for (WordId c = 0; c < k; ++c) prime_total += static_cast<double>(v.count(c));
    std::map<std::string, std::map<WordId, double>> rows;
    const auto& ids = corpus.stream.ids;
    for (std::size_t i = 0; i < ids.size(); ++i)
      for (long d = -h; d <= h; ++d) {
        const long j = static_cast<long>(i) + d;
        if (d == 0 || j < 0 || j >= static_cast<long>(ids.size())) continue;
        if (ids[static_cast<std::size_t>(j)] < k) rows[v.word(ids[i])][ids[static_cast<std::size_t>(j)]] += 1;
      }
    for (auto m : {KeywordMeasure::kCountEntropy, KeywordMeasure::kChiSquare, KeywordMeasure::kCountKl}) {
      const auto r = rank_keywords(toks, m, h, 1);
      REQUIRE(r.words.size() == v.size());
      std::vector<double> scores;
      bool seen_invalid = false;
      for (const auto& w : r.words) {
        const auto& row = rows[w];
        if (row.empty()) {
          seen_invalid = true;
          continue;
        }
        CHECK(!seen_invalid);
        const double n = static_cast<double>(v.count(v.id(w)));
        double s = 0, total = 0;
        for (const auto& [c, x] : row) total += x;
        if (m == KeywordMeasure::kChiSquare) {
          for (WordId c = 0; c < k; ++c) {
            const double e = total * static_cast<double>(v.count(c)) / prime_total;
            const double o = row.count(c) ? row.at(c) : 0.0;
            s += (o - e) * (o - e) / e;
          }
        } else {
          for (const auto& [c, x] : row) {
            const double p = x / total;
            s += m == KeywordMeasure::kCountEntropy ? -p * std::log(p)
                                                    : p * std::log(p / (static_cast<double>(v.count(c)) / prime_total));
          }
          s *= n;
        }
        scores.push_back(s);
      }
      const bool ascending = m == KeywordMeasure::kCountEntropy;
      for (std::size_t i = 1; i < scores.size(); ++i) {
        const double a = scores[i - 1], b = scores[i];
        if (std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(a))) continue;
        CHECK((ascending ? a < b : a > b));
      }
    }
  }
}

TEST_CASE("reciprocal rank and P@5: hand fixtures") {
  auto r = ranked("w1 w2 new w4 w5 w6 w7 w8 w9 york w11");
  CHECK(*reciprocal_rank(r, gold({"new york"})) == doctest::Approx(0.1).epsilon(1e-15));
  CHECK(*reciprocal_rank(ranked("k a b"), gold({"k"})) == 1.0);
  CHECK(*reciprocal_rank(ranked("a k2 c k1"), gold({"k1", "k2"})) == 0.5);
  CHECK(*reciprocal_rank(ranked("a b"), gold({"zzz"})) == 0.0);
  CHECK(!reciprocal_rank(ranked("a b"), gold({})).has_value());

  CHECK(*precision_at_5(ranked("a k1 b k2 c d"), gold({"k1", "k2"})) == 40.0);
  CHECK(*precision_at_5(ranked("x y z u v w"), gold({"x", "y", "x y", "y z", "z u", "u v"})) == 120.0);
  CHECK(*precision_at_5(ranked("a b c d e f"), gold({"a f"})) == 0.0);
}

TEST_CASE("reciprocal rank and P@5 match a rank scan") {
  Rng rng(10);
  for (int t = 0; t < 300; ++t) {
    RankedList r;
    const int n = 1 + static_cast<int>(rng.below(15));
    for (int i = 0; i < n; ++i) r.words.push_back("w" + std::to_string(i));
    for (std::size_t i = r.words.size() - 1; i > 0; --i) std::swap(r.words[i], r.words[rng.below(i + 1)]);
    std::vector<std::vector<std::string>> g;
    const int kws = 1 + static_cast<int>(rng.below(6));
    for (int i = 0; i < kws; ++i) {
      std::vector<std::string> phrase;
      const int len = 1 + static_cast<int>(rng.below(3));
      for (int j = 0; j < len; ++j) phrase.push_back("w" + std::to_string(rng.below(20)));
      g.push_back(phrase);
    }
    double best = 0;
    int top5 = 0;
    for (const auto& p : g) {
      const auto rank = scan_rank(r, p);
      if (rank > 0) best = std::max(best, 1.0 / static_cast<double>(rank));
      if (rank > 0 && rank <= 5) ++top5;
    }
    CHECK(*reciprocal_rank(r, g) == best);
    CHECK(*precision_at_5(r, g) == top5 * 20.0);
  }
}

TEST_CASE("evaluate_keywords over a JSONL dataset") {
  write_file("kw_test.jsonl",
             "{\"id\": \"1\", \"text\": \"apple banana apple cherry apple banana\", \"keywords\": [\"apple\"]}\n"
             "{\"id\": \"2\", \"text\": \"dog cat dog\", \"keywords\": []}\n"
             "\n"
             "{\"id\": \"3\", \"text\": \"red car blue car red car\", \"keywords\": [\"blue\", \"red car\"]}\n");
  const auto docs = read_keyword_dataset("kw_test.jsonl");
  REQUIRE(docs.size() == 3);
  CHECK(docs[2].gold_keywords.size() == 2);
  const auto s = evaluate_keywords(docs, KeywordMeasure::kCount, 1, 1);
  CHECK(s.documents == 2);
  CHECK(s.excluded == 1);
  // doc 1: apple rank 1; doc 3: car(1) red(2) blue(3) -> best 1/2 (red car)
  CHECK(s.mrr == doctest::Approx(100.0 * (1.0 + 0.5) / 2).epsilon(1e-12));
  CHECK(s.p_at_5 == doctest::Approx((20.0 + 40.0) / 2).epsilon(1e-12));
  const auto threaded = evaluate_keywords(docs, KeywordMeasure::kRandom, 1, 3, 2);
  const auto serial = evaluate_keywords(docs, KeywordMeasure::kRandom, 1, 3, 1);
  CHECK(threaded.mrr == serial.mrr);
  std::remove("kw_test.jsonl");
  CHECK_THROWS_AS(read_keyword_dataset("missing.jsonl"), Error);
  write_file("kw_bad.jsonl", "{not json\n");
  CHECK_THROWS_AS(read_keyword_dataset("kw_bad.jsonl"), Error);
  std::remove("kw_bad.jsonl");
}

TEST_CASE("roc_auc") {
  CHECK(roc_auc(std::vector<double>{0.9, 0.8}, std::vector<double>{0.7, 0.1}) == 1.0);
  CHECK(roc_auc(std::vector<double>{0.9, 0.3}, std::vector<double>{0.5, 0.1}) == 0.75);
  CHECK(roc_auc(std::vector<double>{1, 2, 2}, std::vector<double>{2, 1, 2}) == 0.5);
  CHECK(roc_auc(std::vector<double>{0.9, 0.3}, std::vector<double>{0.5, 0.1}, false) == 0.25);
  CHECK_THROWS_AS(roc_auc(std::vector<double>{}, std::vector<double>{1.0}), Error);
  Rng rng(8);
  for (int t = 0; t < 100; ++t) {
    std::vector<double> pos(1 + rng.below(300)), neg(1 + rng.below(300));
    for (auto& x : pos) x = static_cast<double>(rng.below(20));
    for (auto& x : neg) x = static_cast<double>(rng.below(25));
    CHECK(roc_auc(pos, neg) == oracle::pair_auc(pos, neg));
  }
}

TEST_CASE("weeds_prec") {
  // ids: 0 w1, 1 w2, 2 c1, 3 c2, 4 c3
  CoocMatrix m(1, {{{2, 2}, {3, 3}}, {{2, 1}, {4, 4}}, {}, {{0, 1}}, {}});
  CHECK(weeds_prec(m, 0, 1) == doctest::Approx(0.4).epsilon(1e-15));
  CHECK(weeds_prec(m, 0, 0) == 1.0);
  CHECK(weeds_prec(m, 3, 1) == 0.0);
  CHECK_THROWS_AS(weeds_prec(m, 2, 0), Error);

  const auto corpus = gen_zipf_corpus(50, 3000, 1.0, 2);
  const auto c = count_cooccurrences(corpus.stream, corpus.vocab, 2);
  for (WordId a = 0; a < 10; ++a)
    for (WordId b = 0; b < 10; ++b) {
      if (c.row_sum(a) == 0) continue;
      double shared = 0;
      for (WordId x = 0; x < static_cast<WordId>(c.size()); ++x)
        if (c.get(a, x) > 0 && c.get(b, x) > 0) shared += static_cast<double>(c.get(a, x));
      CHECK(weeds_prec(c, a, b) == doctest::Approx(shared / static_cast<double>(c.row_sum(a))).epsilon(1e-15));
    }
}

TEST_CASE("slqs_row") {
  const double h1 = shannon_entropy(std::vector<double>{0.5, 0.5});
  const double h2 = shannon_entropy(std::vector<double>{0.2, 0.8});
  CHECK(1.0 - h1 / h2 == doctest::Approx(-0.3852).epsilon(1e-3));
  CHECK(slqs_row(h1, h2) == Prediction::kFirst);
  CHECK(slqs_row(0.5, 0.5) == Prediction::kUnresolved);
  CHECK(slqs_row(0.2, 0.5) == Prediction::kSecond);
  CHECK_THROWS_AS(slqs_row(0.3, 0.0), Error);
}

TEST_CASE("LMI, salient contexts and SLQS against enumeration") {
  Rng rng(15);
  for (int t = 0; t < 30; ++t) {
    const int V = 3 + static_cast<int>(rng.below(6));
    std::vector<std::vector<CoocEntry>> rows(static_cast<std::size_t>(V));
    for (int i = 0; i < V; ++i)
      for (int j = 0; j < V; ++j)
        if (rng.uniform() < 0.6) rows[static_cast<std::size_t>(i)].push_back({j, 1 + static_cast<std::int64_t>(rng.below(9))});
    const CoocMatrix m(1, rows);
    if (m.total() == 0) continue;
    const auto marg = context_marginal(m);
    const double total = static_cast<double>(m.total());
    std::vector<double> entropy(static_cast<std::size_t>(V));
    for (int c = 0; c < V; ++c) entropy[static_cast<std::size_t>(c)] = rng.uniform();
    const int size = 1 + static_cast<int>(rng.below(4));

    auto expected_E = [&](WordId w) -> std::optional<double> {
      std::vector<std::pair<double, WordId>> lmi;
      for (WordId c = 0; c < V; ++c) {
        const double n = static_cast<double>(m.get(w, c));
        if (n == 0) continue;
        const double pw = static_cast<double>(m.row_sum(w)) / total;
        const double v = n * std::log((n / total) / (pw * marg[static_cast<std::size_t>(c)]));
        CHECK(local_mutual_information(m, marg, w, c) == doctest::Approx(v).epsilon(1e-12));
        if (v > 0) lmi.push_back({-v, c});
      }
      std::sort(lmi.begin(), lmi.end());
      if (lmi.size() > static_cast<std::size_t>(size)) lmi.resize(static_cast<std::size_t>(size));
      std::vector<WordId> chosen;
      for (const auto& [neg, c] : lmi) chosen.push_back(c);
      auto got = salient_contexts(m, marg, w, size);
      auto want = chosen;
      std::sort(got.begin(), got.end());
      std::sort(want.begin(), want.end());
      CHECK(got == want);
      if (chosen.empty()) return std::nullopt;
      std::vector<double> hs;
      for (auto c : chosen) hs.push_back(entropy[static_cast<std::size_t>(c)]);
      std::sort(hs.begin(), hs.end());
      return hs[(hs.size() - 1) / 2];
    };
    const auto e1 = expected_E(0), e2 = expected_E(1);
    const auto p = slqs(m, marg, entropy, 0, 1, size);
    if (!e1 || !e2)
      CHECK(p == Prediction::kUnresolved);
    else
      CHECK(p == (*e1 > *e2 ? Prediction::kFirst : *e1 < *e2 ? Prediction::kSecond : Prediction::kUnresolved));
  }
}

TEST_CASE("SLQS fixtures") {
  // Two words with the same single context: equal E, unresolved.
  CoocMatrix same(1, {{{2, 3}}, {{2, 3}}, {{0, 3}, {1, 3}}});
  const auto marg = context_marginal(same);
  const std::vector<double> h{0.1, 0.2, 0.7};
  CHECK(slqs(same, marg, h, 0, 1) == Prediction::kUnresolved);
  const std::vector<WordId> ctx{0, 1, 2, 0};
  CHECK(*median_over(ctx, h) == 0.1);
  const std::vector<WordId> none;
  CHECK(!median_over(none, h).has_value());
  const std::vector<WordId> odd{2, 1, 0};
  CHECK(*median_over(odd, h) == 0.2);
}

TEST_CASE("predict_hypernym rules") {
  Vocabulary vocab({{"animal", 50}, {"dog", 20}, {"cat", 20}, {"x", 5}});
  const WordId animal = vocab.id("animal"), dog = vocab.id("dog");
  HypernymInputs in;
  in.vocab = &vocab;
  in.kl = {0.1, 0.5, 0.4, 0.9};
  in.norm2 = {1.0, 2.0, 2.0, 3.0};
  in.delta_kl = std::vector<double>(4, 0.0);
  for (int i = 0; i < 4; ++i) in.delta_kl[static_cast<std::size_t>(i)] = in.kl[static_cast<std::size_t>(i)];
  in.delta_norm2 = in.norm2;
  CHECK(*predict_hypernym(in, animal, dog, HypernymMethod::kFrequency, 0) == Prediction::kFirst);
  CHECK(*predict_hypernym(in, dog, animal, HypernymMethod::kFrequency, 0) == Prediction::kSecond);
  CHECK(*predict_hypernym(in, dog, animal, HypernymMethod::kKl, 0) == Prediction::kSecond);
  CHECK(*predict_hypernym(in, animal, dog, HypernymMethod::kNorm2, 0) == Prediction::kFirst);
  CHECK(*predict_hypernym(in, dog, vocab.id("cat"), HypernymMethod::kNorm2, 0) == Prediction::kUnresolved);
  for (auto m : {HypernymMethod::kKl, HypernymMethod::kNorm2})
    CHECK(predict_hypernym(in, dog, animal, m, 0) ==
          predict_hypernym(in, dog, animal, m == HypernymMethod::kKl ? HypernymMethod::kDeltaKl : HypernymMethod::kDeltaNorm2, 0));
  in.kl[static_cast<std::size_t>(dog)] = NAN;
  CHECK(!predict_hypernym(in, dog, animal, HypernymMethod::kKl, 0).has_value());
  CHECK(!predict_hypernym(in, dog, animal, HypernymMethod::kSlqsRow, 0).has_value());
}

TEST_CASE("delta methods reduce to base methods under a zero baseline") {
  const auto corpus = gen_zipf_corpus(120, 20000, 1.0, 31);
  const auto m = count_cooccurrences(corpus.stream, corpus.vocab, 2);
  HypernymInputs in;
  in.vocab = &corpus.vocab;
  in.cooc = &m;
  in.context_marginal = context_marginal(m);
  in.kl = kl_values(m, corpus.vocab);
  in.entropy = entropy_values(m);
  in.norm2 = in.kl;
  in.delta_kl = in.kl;
  in.delta_entropy = in.entropy;
  in.delta_norm2 = in.norm2;
  in.weeds_baseline = [](WordId, WordId) { return 0.0; };
  const std::pair<HypernymMethod, HypernymMethod> pairs[] = {
      {HypernymMethod::kWeedsPrec, HypernymMethod::kDeltaWeedsPrec},
      {HypernymMethod::kSlqsRow, HypernymMethod::kDeltaSlqsRow},
      {HypernymMethod::kSlqs, HypernymMethod::kDeltaSlqs},
      {HypernymMethod::kKl, HypernymMethod::kDeltaKl},
      {HypernymMethod::kNorm2, HypernymMethod::kDeltaNorm2}};
  for (WordId a = 0; a < 30; ++a)
    for (WordId b = 30; b < 60; ++b)
      for (const auto& [base, delta] : pairs)
        CHECK(predict_hypernym(in, a, b, base, 0) == predict_hypernym(in, a, b, delta, 0));
}

TEST_CASE("evaluate_hypernyms: frequency split is exact") {
  const auto corpus = gen_zipf_corpus(300, 30000, 1.0, 41);
  HypernymInputs in;
  in.vocab = &corpus.vocab;
  std::vector<HypernymPair> pairs;
  Rng rng(2);
  for (int i = 0; i < 400; ++i)
    pairs.push_back({corpus.vocab.word(static_cast<WordId>(rng.below(300))),
                     corpus.vocab.word(static_cast<WordId>(rng.below(300)))});
  pairs.push_back({"unknown", "w1"});
  const auto acc = evaluate_hypernyms(in, pairs, HypernymMethod::kFrequency);
  CHECK(acc.hyper_more == 100.0);
  CHECK(acc.hyper_less == 0.0);
  CHECK(acc.skipped_oov == 1);
  CHECK(acc.n_more + acc.n_less + acc.skipped_equal + acc.skipped_oov == static_cast<std::int64_t>(pairs.size()));

  const auto random = evaluate_hypernyms(in, pairs, HypernymMethod::kRandom);
  const double n = static_cast<double>(random.n_more + random.n_less);
  const double mean = (random.hyper_more * random.n_more + random.hyper_less * random.n_less) / n;
  CHECK(std::abs(mean - 50.0) <= 3 * 50.0 / std::sqrt(n));

  const HypernymAccuracy a{100, 0, 1, 1, 0, 0, 0}, b{80, 20, 1, 1, 0, 0, 0};
  const std::vector<HypernymAccuracy> both{a, b};
  const auto avg = average_accuracy(both);
  CHECK(avg.hyper_more == 90.0);
  CHECK(avg.hyper_less == 10.0);
  CHECK(avg.both == 50.0);
}

TEST_CASE("evaluate_hypernyms: KL rule on a constructed pair") {
  Vocabulary vocab({{"animal", 10}, {"dog", 30}});
  HypernymInputs in;
  in.vocab = &vocab;
  in.kl = std::vector<double>(2);
  in.kl[static_cast<std::size_t>(vocab.id("dog"))] = 0.8;
  in.kl[static_cast<std::size_t>(vocab.id("animal"))] = 0.3;
  const std::vector<HypernymPair> pairs{{"dog", "animal"}};
  const auto acc = evaluate_hypernyms(in, pairs, HypernymMethod::kKl);
  CHECK(acc.n_less == 1);
  CHECK(acc.hyper_less == 100.0);
  CHECK(std::isnan(acc.hyper_more));
}

TEST_CASE("pair baseline averages WeedsPrec over shuffles") {
  const auto corpus = gen_zipf_corpus(40, 3000, 1.0, 3);
  const std::vector<HypernymPair> pairs{{"w0", "w1"}, {"w2", "w5"}, {"w3", "nope"}};
  const PairBaseline base(corpus.stream, corpus.vocab, 2, pairs, 3, 7);
  CHECK(base.size() == 4);
  const auto seeds = shuffle_seeds(7, 3);
  const WordId a = corpus.vocab.id("w2"), b = corpus.vocab.id("w5");
  double sum = 0;
  for (auto s : seeds) {
    const auto shuffled = shuffle_corpus(corpus.stream, s);
    sum += weeds_prec(count_cooccurrences(shuffled, corpus.vocab, 2), b, a);
  }
  CHECK(base(b, a) == doctest::Approx(sum / 3).epsilon(1e-14));
  CHECK(std::isnan(base(a, a)));
}

TEST_CASE("POS evaluation and word lists") {
  write_file("pos_list.txt", "# comment\nalpha\n\nbeta\nbeta\n");
  CHECK(read_word_list("pos_list.txt") == std::vector<std::string>{"alpha", "beta", "beta"});
  std::remove("pos_list.txt");

  Vocabulary vocab({{"alpha", 100}, {"beta", 50}, {"gamma", 40}, {"delta", 30}, {"rare", 2}});
  std::vector<double> measure(vocab.size());
  measure[static_cast<std::size_t>(vocab.id("alpha"))] = 0.9;
  measure[static_cast<std::size_t>(vocab.id("beta"))] = 0.3;
  measure[static_cast<std::size_t>(vocab.id("gamma"))] = 0.5;
  measure[static_cast<std::size_t>(vocab.id("delta"))] = 0.1;
  measure[static_cast<std::size_t>(vocab.id("rare"))] = 100;
  const std::vector<std::string> pos{"alpha", "beta", "rare", "missing"}, neg{"gamma", "delta"};
  const auto r = evaluate_pos(vocab, measure, true, pos, neg, 10);
  CHECK(r.auc == 0.75);
  CHECK(r.n_positive == 2);
  CHECK(r.n_negative == 2);
  CHECK(r.skipped == 2);
  CHECK(evaluate_pos(vocab, measure, false, pos, neg, 10).auc == 0.25);
  const std::vector<std::string> none{"missing"};
  CHECK_THROWS_AS(evaluate_pos(vocab, measure, true, pos, none, 10), Error);
}

TEST_CASE("results table layout") {
  const std::vector<std::string> rows{"d1", "d2"}, cols{"m1", "m2"};
  write_results_table("table_test.tsv", rows, cols, {{100.0, 12.345}, {0.0, NAN}});
  std::ifstream in("table_test.tsv");
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str().rfind("dataset\tm1\tm2\nd1\t100.00\t12.35\nd2\t0.00\t", 0) == 0);
  std::remove("table_test.tsv");
}
