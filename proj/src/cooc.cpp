#include "infogain/cooc.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <thread>

#include "infogain/error.hpp"

namespace infogain {

CoocMatrix::CoocMatrix(int window, std::vector<std::vector<CoocEntry>> rows)
    : window_(window), rows_(std::move(rows)), row_sums_(rows_.size(), 0) {
  for (std::size_t w = 0; w < rows_.size(); ++w) {
    auto& row = rows_[w];
    for (std::size_t k = 0; k < row.size(); ++k) {
      require(row[k].count > 0, "co-occurrence counts must be positive");
      require(row[k].context >= 0 && static_cast<std::size_t>(row[k].context) < rows_.size(),
              "co-occurrence context id out of range");
      require(k == 0 || row[k - 1].context < row[k].context,
              "co-occurrence rows must be sorted by context id");
      row_sums_[w] += row[k].count;
    }
    total_ += row_sums_[w];
  }
}

std::int64_t CoocMatrix::get(WordId w, WordId context) const {
  const auto r = row(w);
  auto it = std::lower_bound(r.begin(), r.end(), context,
                             [](const CoocEntry& e, WordId c) { return e.context < c; });
  return (it != r.end() && it->context == context) ? it->count : 0;
}

void CoocMatrix::write(std::ostream& out) const {
  out << "#h=" << window_ << " #V=" << rows_.size() << " #total=" << total_ << '\n';
  for (std::size_t w = 0; w < rows_.size(); ++w)
    for (const auto& e : rows_[w]) out << w << '\t' << e.context << '\t' << e.count << '\n';
}

void CoocMatrix::write(const std::string& path) const {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::kIo, "cannot write co-occurrence file " + path);
  write(out);
  if (!out) fail(ErrorCode::kIo, "error writing co-occurrence file " + path);
}

CoocMatrix CoocMatrix::read(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) fail(ErrorCode::kParse, "empty co-occurrence file");
  long long h = 0, v = 0, total = 0;
  if (std::sscanf(line.c_str(), "#h=%lld #V=%lld #total=%lld", &h, &v, &total) != 3 || v < 0)
    fail(ErrorCode::kParse, "bad co-occurrence header: " + line);
  std::vector<std::vector<CoocEntry>> rows(static_cast<std::size_t>(v));
  long long r = 0, c = 0, n = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (std::sscanf(line.c_str(), "%lld\t%lld\t%lld", &r, &c, &n) != 3 || r < 0 || r >= v)
      fail(ErrorCode::kParse, "bad co-occurrence line: " + line);
    rows[static_cast<std::size_t>(r)].push_back({static_cast<WordId>(c), n});
  }
  CoocMatrix m(static_cast<int>(h), std::move(rows));
  if (m.total() != total)
    fail(ErrorCode::kParse, "co-occurrence counts do not match header total");
  return m;
}

CoocMatrix CoocMatrix::read(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::kIo, "cannot open co-occurrence file " + path);
  return read(in);
}

CoocMatrix count_cooccurrences(const TokenStream& stream, std::size_t vocab_size, int window,
                               int threads) {
  require(window >= 1, "window must be >= 1");
  require(threads >= 1, "threads must be >= 1");
  const auto& ids = stream.ids;
  const std::size_t n = ids.size();

  // Occurrence positions of each word (CSR layout).
  std::vector<std::size_t> offsets(vocab_size + 1, 0);
  for (WordId w : ids) {
    require(w >= 0 && static_cast<std::size_t>(w) < vocab_size, "token id outside vocabulary");
    ++offsets[static_cast<std::size_t>(w) + 1];
  }
  for (std::size_t w = 0; w < vocab_size; ++w) offsets[w + 1] += offsets[w];
  std::vector<std::size_t> positions(n);
  {
    std::vector<std::size_t> cursor(offsets.begin(), offsets.end() - 1);
    for (std::size_t i = 0; i < n; ++i) positions[cursor[static_cast<std::size_t>(ids[i])]++] = i;
  }

  std::vector<std::vector<CoocEntry>> rows(vocab_size);
  const auto h = static_cast<std::size_t>(window);
  auto work = [&](std::size_t first, std::size_t stride) {
    std::vector<std::int64_t> scratch(vocab_size, 0);
    std::vector<WordId> touched;
    for (std::size_t w = first; w < vocab_size; w += stride) {
      touched.clear();
      for (std::size_t k = offsets[w]; k < offsets[w + 1]; ++k) {
        const std::size_t i = positions[k];
        const std::size_t lo = i >= h ? i - h : 0;
        const std::size_t hi = std::min(n - 1, i + h);
        for (std::size_t j = lo; j <= hi; ++j) {
          if (j == i) continue;
          const WordId c = ids[j];
          if (scratch[static_cast<std::size_t>(c)]++ == 0) touched.push_back(c);
        }
      }
      std::sort(touched.begin(), touched.end());
      auto& row = rows[w];
      row.reserve(touched.size());
      for (WordId c : touched) {
        row.push_back({c, scratch[static_cast<std::size_t>(c)]});
        scratch[static_cast<std::size_t>(c)] = 0;
      }
    }
  };

  const auto workers = static_cast<std::size_t>(threads);
  if (workers == 1) {
    work(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < workers; ++t) pool.emplace_back(work, t, workers);
    for (auto& th : pool) th.join();
  }
  return CoocMatrix(window, std::move(rows));
}

CoocMatrix count_cooccurrences_chunked(const TokenStream& stream, std::size_t vocab_size,
                                       int window, std::size_t chunks) {
  require(window >= 1, "window must be >= 1");
  require(chunks >= 1, "chunks must be >= 1");
  const auto& ids = stream.ids;
  const std::size_t n = ids.size();
  const auto h = static_cast<std::size_t>(window);
  const std::size_t chunk_len = (n + chunks - 1) / std::max<std::size_t>(chunks, 1);

  std::vector<std::map<std::pair<WordId, WordId>, std::int64_t>> partial(chunks);
  for (std::size_t c = 0; c < chunks; ++c) {
    const std::size_t begin = std::min(n, c * chunk_len);
    const std::size_t end = std::min(n, begin + chunk_len);
    for (std::size_t i = begin; i < end; ++i) {
      const std::size_t lo = i >= h ? i - h : 0;
      const std::size_t hi = std::min(n - 1, i + h);
      for (std::size_t j = lo; j <= hi; ++j)
        if (j != i) ++partial[c][{ids[i], ids[j]}];
    }
  }

  std::map<std::pair<WordId, WordId>, std::int64_t> merged;
  for (const auto& part : partial)
    for (const auto& [key, count] : part) merged[key] += count;

  std::vector<std::vector<CoocEntry>> rows(vocab_size);
  for (const auto& [key, count] : merged) {
    require(key.first >= 0 && static_cast<std::size_t>(key.first) < vocab_size,
            "token id outside vocabulary");
    rows[static_cast<std::size_t>(key.first)].push_back({key.second, count});
  }
  return CoocMatrix(window, std::move(rows));
}

std::vector<SparseProb> conditional_distribution(const CoocMatrix& cooc, WordId w) {
  const std::int64_t sum = cooc.row_sum(w);
  if (sum <= 0)
    fail(ErrorCode::kZeroSupport, "word id " + std::to_string(w) + " has no co-occurrences");
  const auto row = cooc.row(w);
  std::vector<SparseProb> out;
  out.reserve(row.size());
  const auto denom = static_cast<double>(sum);
  for (const auto& e : row) out.push_back({e.context, static_cast<double>(e.count) / denom});
  return out;
}

std::vector<double> context_marginal(const CoocMatrix& cooc) {
  if (cooc.total() <= 0) fail(ErrorCode::kZeroSupport, "co-occurrence matrix is all zero");
  std::vector<std::int64_t> columns(cooc.size(), 0);
  for (std::size_t w = 0; w < cooc.size(); ++w)
    for (const auto& e : cooc.row(static_cast<WordId>(w)))
      columns[static_cast<std::size_t>(e.context)] += e.count;
  std::vector<double> q(cooc.size());
  const auto total = static_cast<double>(cooc.total());
  for (std::size_t i = 0; i < q.size(); ++i) q[i] = static_cast<double>(columns[i]) / total;
  return q;
}

}  // namespace infogain
