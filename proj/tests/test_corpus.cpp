#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <array>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "infogain/corpus.hpp"
#include "infogain/error.hpp"
#include "infogain/fixtures.hpp"

using namespace infogain;

namespace {
std::vector<std::string> S(std::initializer_list<const char*> xs) { return {xs.begin(), xs.end()}; }
}

TEST_CASE("tokenize splits on whitespace runs") {
  CHECK(tokenize("a b  a") == S({"a", "b", "a"}));
  CHECK(tokenize("").empty());
  CHECK(tokenize(" \t\n ").empty());
  CHECK(tokenize("The the", true) == S({"the", "the"}));
  CHECK(tokenize("The the", false) == S({"The", "the"}));
  CHECK(tokenize("don't stop.", true) == S({"don't", "stop."}));
}

TEST_CASE("build_vocab counts and orders") {
  const auto toks = S({"a", "b", "a"});
  auto c = build_vocab(toks, 1);
  REQUIRE(c.vocab.size() == 2);
  CHECK(c.vocab.word(0) == "a");
  CHECK(c.vocab.count(0) == 2);
  CHECK(c.vocab.count(1) == 1);
  CHECK(c.vocab.total() == 3);
  CHECK(c.stream.ids == std::vector<WordId>{0, 1, 0});

  auto f = build_vocab(toks, 2);
  REQUIRE(f.vocab.size() == 1);
  CHECK(f.vocab.total() == 2);
  CHECK(f.stream.ids == std::vector<WordId>{0, 0});

  std::vector<std::string> none;
  CHECK_THROWS_AS(build_vocab(none, 1), Error);
  try {
    build_vocab(toks, 5);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kEmptyVocabulary);
  }
}

TEST_CASE("ties break lexicographically") {
  auto c = build_vocab(S({"zeta", "beta", "alpha", "beta", "zeta", "alpha"}), 1);
  CHECK(c.vocab.words() == S({"alpha", "beta", "zeta"}));
}

TEST_CASE("vocabulary invariants") {
  const auto corpus = gen_zipf_corpus(300, 20000, 1.1, 7);
  const auto& v = corpus.vocab;
  std::int64_t sum = 0;
  double psum = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    sum += v.count(static_cast<WordId>(i));
    psum += v.probability(static_cast<WordId>(i));
    if (i > 0) CHECK(v.count(static_cast<WordId>(i)) <= v.count(static_cast<WordId>(i - 1)));
  }
  CHECK(sum == v.total());
  CHECK(psum == doctest::Approx(1.0).epsilon(1e-12));
  const auto recount = count_ids(corpus.stream, v.size());
  CHECK(std::equal(recount.begin(), recount.end(), v.counts().begin()));
  CHECK(v.find("nope") == -1);
  CHECK_THROWS_AS(v.id("nope"), Error);
}

TEST_CASE("vocabulary file round-trips") {
  auto c = build_vocab(S({"x", "y", "x", "z", "x", "y"}), 1);
  std::stringstream ss;
  c.vocab.write(ss);
  CHECK(ss.str() == "#N=6\nx\t3\ny\t2\nz\t1\n");
  const auto back = Vocabulary::read(ss);
  CHECK(back.words() == c.vocab.words());
  CHECK(back.total() == 6);
}

TEST_CASE("shuffle is a seeded permutation") {
  const auto corpus = gen_zipf_corpus(50, 5000, 1.0, 3);
  const auto a = shuffle_corpus(corpus.stream, 42);
  const auto b = shuffle_corpus(corpus.stream, 42);
  const auto c = shuffle_corpus(corpus.stream, 43);
  CHECK(a.ids == b.ids);
  CHECK(a.ids != c.ids);
  CHECK(a.ids != corpus.stream.ids);
  const auto ca = count_ids(a, corpus.vocab.size());
  CHECK(std::equal(ca.begin(), ca.end(), corpus.vocab.counts().begin()));
}

TEST_CASE("shuffle of three tokens is uniform over orderings") {
  TokenStream s{{0, 1, 2}};
  std::map<std::vector<WordId>, int> freq;
  const int trials = 1000;
  for (int i = 0; i < trials; ++i) freq[shuffle_corpus(s, static_cast<std::uint64_t>(i)).ids]++;
  CHECK(freq.size() == 6);
  double chi2 = 0;
  for (const auto& [order, n] : freq) {
    CHECK(std::abs(static_cast<double>(n) / trials - 1.0 / 6) <= 0.05);
    chi2 += (n - trials / 6.0) * (n - trials / 6.0) / (trials / 6.0);
  }
  // 5 degrees of freedom, 0.999 quantile
  CHECK(chi2 < 20.5);
}

TEST_CASE("load_corpus matches in-memory build") {
  const std::string path = "corpus_test_tmp.txt";
  {
    std::ofstream out(path);
    out << "The cat\nsat on the  mat\n\tthe END";
  }
  const auto file = load_corpus(path, true, 1);
  const auto mem = build_vocab(tokenize("The cat\nsat on the  mat\n\tthe END", true), 1);
  CHECK(file.vocab.words() == mem.vocab.words());
  CHECK(file.stream.ids == mem.stream.ids);
  CHECK(file.vocab.count(0) == 3);
  CHECK_THROWS_AS(load_corpus("does/not/exist.txt"), Error);
  std::remove(path.c_str());
}
