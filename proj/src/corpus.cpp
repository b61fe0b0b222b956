#include "infogain/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "infogain/error.hpp"
#include "infogain/random.hpp"

namespace infogain {

namespace {

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f';
}

char ascii_lower(char c) {
  return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

template <typename Fn>
void for_each_token(std::string_view text, bool lowercase, Fn&& fn) {
  std::size_t i = 0;
  std::string token;
  while (i < text.size()) {
    while (i < text.size() && is_space(text[i])) ++i;
    const std::size_t start = i;
    while (i < text.size() && !is_space(text[i])) ++i;
    if (i > start) {
      token.assign(text.substr(start, i - start));
      if (lowercase)
        std::transform(token.begin(), token.end(), token.begin(), ascii_lower);
      fn(token);
    }
  }
}

}  // namespace

Vocabulary::Vocabulary(std::vector<std::pair<std::string, std::int64_t>> counts) {
  std::sort(counts.begin(), counts.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  words_.reserve(counts.size());
  counts_.reserve(counts.size());
  for (auto& [word, n] : counts) {
    require(n >= 0, "negative count for word '" + word + "'");
    const auto id = static_cast<WordId>(words_.size());
    if (!index_.emplace(word, id).second)
      fail(ErrorCode::kInvalidArgument, "duplicate vocabulary word '" + word + "'");
    total_ += n;
    words_.push_back(std::move(word));
    counts_.push_back(n);
  }
}

std::vector<double> Vocabulary::unigram() const {
  std::vector<double> p(size());
  for (std::size_t i = 0; i < size(); ++i)
    p[i] = static_cast<double>(counts_[i]) / static_cast<double>(total_);
  return p;
}

WordId Vocabulary::find(std::string_view word) const {
  auto it = index_.find(std::string(word));
  return it == index_.end() ? -1 : it->second;
}

WordId Vocabulary::id(std::string_view word) const {
  const WordId w = find(word);
  if (w < 0) fail(ErrorCode::kUnknownWord, "unknown word '" + std::string(word) + "'");
  return w;
}

void Vocabulary::write(std::ostream& out) const {
  out << "#N=" << total_ << '\n';
  for (std::size_t i = 0; i < size(); ++i) out << words_[i] << '\t' << counts_[i] << '\n';
}

void Vocabulary::write(const std::string& path) const {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::kIo, "cannot write vocabulary file " + path);
  write(out);
  if (!out) fail(ErrorCode::kIo, "error writing vocabulary file " + path);
}

Vocabulary Vocabulary::read(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("#N=", 0) != 0)
    fail(ErrorCode::kParse, "vocabulary file must start with '#N=<total>'");
  std::int64_t declared = 0;
  try {
    declared = std::stoll(line.substr(3));
  } catch (const std::exception&) {
    fail(ErrorCode::kParse, "bad vocabulary header: " + line);
  }
  std::vector<std::pair<std::string, std::int64_t>> counts;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) fail(ErrorCode::kParse, "bad vocabulary line: " + line);
    try {
      counts.emplace_back(line.substr(0, tab), std::stoll(line.substr(tab + 1)));
    } catch (const std::exception&) {
      fail(ErrorCode::kParse, "bad vocabulary count: " + line);
    }
  }
  Vocabulary vocab(std::move(counts));
  if (vocab.total() != declared)
    fail(ErrorCode::kParse, "vocabulary counts sum to " + std::to_string(vocab.total()) +
                                " but header declares " + std::to_string(declared));
  return vocab;
}

Vocabulary Vocabulary::read(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::kIo, "cannot open vocabulary file " + path);
  return read(in);
}

std::vector<std::string> tokenize(std::string_view text, bool lowercase) {
  std::vector<std::string> tokens;
  for_each_token(text, lowercase, [&](const std::string& t) { tokens.push_back(t); });
  return tokens;
}

namespace {

// Maps provisional first-seen ids onto the final sorted vocabulary.
Corpus finalize(const std::vector<std::string>& seen_words,
                const std::vector<std::int64_t>& raw_counts,
                std::vector<WordId>&& provisional, std::int64_t min_count) {
  require(min_count >= 1, "min_count must be >= 1");
  std::vector<std::pair<std::string, std::int64_t>> kept;
  for (std::size_t i = 0; i < seen_words.size(); ++i)
    if (raw_counts[i] >= min_count) kept.emplace_back(seen_words[i], raw_counts[i]);
  if (kept.empty())
    fail(ErrorCode::kEmptyVocabulary,
         "no tokens survive min_count=" + std::to_string(min_count));

  Corpus corpus;
  corpus.vocab = Vocabulary(std::move(kept));
  std::vector<WordId> remap(seen_words.size(), -1);
  for (std::size_t i = 0; i < seen_words.size(); ++i)
    if (raw_counts[i] >= min_count) remap[i] = corpus.vocab.find(seen_words[i]);

  auto& ids = corpus.stream.ids;
  ids.reserve(provisional.size());
  for (WordId p : provisional)
    if (remap[static_cast<std::size_t>(p)] >= 0) ids.push_back(remap[static_cast<std::size_t>(p)]);
  provisional.clear();
  provisional.shrink_to_fit();
  return corpus;
}

class StreamBuilder {
 public:
  void add(const std::string& token) {
    auto [it, inserted] = index_.try_emplace(token, static_cast<WordId>(words_.size()));
    if (inserted) {
      words_.push_back(token);
      counts_.push_back(0);
    }
    ++counts_[static_cast<std::size_t>(it->second)];
    ids_.push_back(it->second);
  }

  Corpus finish(std::int64_t min_count) && {
    index_.clear();
    return finalize(words_, counts_, std::move(ids_), min_count);
  }

 private:
  std::unordered_map<std::string, WordId> index_;
  std::vector<std::string> words_;
  std::vector<std::int64_t> counts_;
  std::vector<WordId> ids_;
};

}  // namespace

Corpus build_vocab(std::span<const std::string> tokens, std::int64_t min_count) {
  require(min_count >= 1, "min_count must be >= 1");
  StreamBuilder builder;
  for (const auto& t : tokens) builder.add(t);
  return std::move(builder).finish(min_count);
}

Corpus load_corpus(const std::string& path, bool lowercase, std::int64_t min_count) {
  require(min_count >= 1, "min_count must be >= 1");
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::kIo, "cannot open corpus file " + path);

  StreamBuilder builder;
  std::string carry;
  std::vector<char> buffer(1 << 20);
  while (in) {
    in.read(buffer.data(), static_cast<std::streamsize>(buffer.size()));
    const auto got = static_cast<std::size_t>(in.gcount());
    if (got == 0) break;
    std::string_view chunk(buffer.data(), got);
    // Hold back a trailing partial token for the next chunk.
    std::size_t cut = chunk.size();
    while (cut > 0 && !is_space(chunk[cut - 1])) --cut;
    carry.append(chunk.substr(0, cut));
    for_each_token(carry, lowercase, [&](const std::string& t) { builder.add(t); });
    carry.assign(chunk.substr(cut));
  }
  for_each_token(carry, lowercase, [&](const std::string& t) { builder.add(t); });
  return std::move(builder).finish(min_count);
}

TokenStream encode(std::span<const std::string> tokens, const Vocabulary& vocab) {
  TokenStream out;
  out.ids.reserve(tokens.size());
  for (const auto& t : tokens) {
    const WordId w = vocab.find(t);
    if (w >= 0) out.ids.push_back(w);
  }
  return out;
}

TokenStream shuffle_corpus(const TokenStream& stream, std::uint64_t seed) {
  TokenStream out = stream;
  Rng rng(seed);
  auto& ids = out.ids;
  for (std::size_t i = ids.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(rng.below(i));
    std::swap(ids[i - 1], ids[j]);
  }
  return out;
}

std::vector<std::int64_t> count_ids(const TokenStream& stream, std::size_t vocab_size) {
  std::vector<std::int64_t> counts(vocab_size, 0);
  for (WordId w : stream.ids) {
    require(w >= 0 && static_cast<std::size_t>(w) < vocab_size,
            "token id " + std::to_string(w) + " outside vocabulary");
    ++counts[static_cast<std::size_t>(w)];
  }
  return counts;
}

}  // namespace infogain
