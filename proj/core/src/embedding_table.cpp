//
// Project c3net - Copyright 2026 c3net developers.
// SPDX-License-Identifier: Apache-2.0
//
#include "c3net/embedding_table.hpp"

#include <algorithm>
#include <cmath>

#include "c3net/checksum.hpp"
#include "c3net/errors.hpp"
#include "c3net/strings.hpp"

namespace c3net {

std::vector<std::string> EmbeddingTable::nearest(const std::string &code,
                                                 int k) const {
  const int query = vocabulary.id(code);
  const int n = vocabulary.size();
  if (k < 1)
    throw UsageError("nearest: k must be at least 1");

  auto row_norm = [&](int id) {
    double acc = 0;
    for (int f = 0; f < dim; ++f) {
      double v = center.at(id, f);
      acc += v * v;
    }
    return std::sqrt(acc);
  };

  const double qnorm = row_norm(query);
  std::vector<std::pair<double, int>> scored;
  for (int id = 0; id < n; ++id) {
    if (id == query)
      continue;
    double dot = 0;
    for (int f = 0; f < dim; ++f)
      dot += center.at(query, f) * center.at(id, f);
    double denom = qnorm * row_norm(id);
    scored.push_back({ denom > 0 ? dot / denom : -2.0, id });
  }
  std::sort(scored.begin(), scored.end(), [](const auto &a, const auto &b) {
    if (a.first != b.first)
      return a.first > b.first;
    return a.second < b.second;
  });

  std::vector<std::string> out;
  for (int i = 0; i < std::min<int>(k, static_cast<int>(scored.size())); ++i)
    out.push_back(vocabulary.code(scored[static_cast<size_t>(i)].second));
  return out;
}

std::string EmbeddingTable::serialize() const {
  std::string out = "c3net-type2vec 1\n";
  out += "dim " + std::to_string(dim) + "\n";
  out += "seed " + std::to_string(seed) + "\n";
  out += "corpus_checksum " + checksum_hex(corpus_checksum) + "\n";
  out += "vocab " + std::to_string(vocabulary.size()) + "\n";
  for (int i = 0; i < vocabulary.size(); ++i)
    out += vocabulary.code(i) + "\t" + std::to_string(i) + "\n";

  std::string blob;
  blob.reserve(static_cast<size_t>(2 * vocabulary.size() * dim * 4));
  for (double v : center.data)
    append_f32_le(blob, static_cast<float>(v));
  for (double v : context.data)
    append_f32_le(blob, static_cast<float>(v));
  out += "blob " + std::to_string(blob.size()) + "\n";
  out += blob;
  return out;
}

EmbeddingTable EmbeddingTable::deserialize(std::string_view bytes) {
  EmbeddingTable table;
  size_t pos = 0;
  auto next_line = [&]() -> std::string_view {
    size_t end = bytes.find('\n', pos);
    if (end == std::string_view::npos)
      throw DataError("type2vec table: truncated header");
    std::string_view line = bytes.substr(pos, end - pos);
    pos = end + 1;
    return line;
  };

  if (strip(next_line()) != "c3net-type2vec 1")
    throw DataError("type2vec table: unrecognized magic/version line");

  int vocab_count = -1;
  std::string vocab_tsv;
  size_t blob_size = 0;
  while (true) {
    std::string_view line = next_line();
    auto fields = split(line, ' ');
    if (fields.empty())
      throw DataError("type2vec table: malformed header line");
    const std::string &key = fields[0];
    if (key == "dim")
      table.dim = static_cast<int>(parse_int(fields.at(1), "dim"));
    else if (key == "seed")
      table.seed = static_cast<uint64_t>(parse_int(fields.at(1), "seed"));
    else if (key == "corpus_checksum")
      table.corpus_checksum = parse_checksum_hex(fields.at(1));
    else if (key == "vocab") {
      vocab_count = static_cast<int>(parse_int(fields.at(1), "vocab size"));
      for (int i = 0; i < vocab_count; ++i) {
        vocab_tsv += next_line();
        vocab_tsv += '\n';
      }
    } else if (key == "blob") {
      blob_size = static_cast<size_t>(parse_int(fields.at(1), "blob size"));
      break;
    } else {
      throw DataError("type2vec table: unknown header key '" + key + "'");
    }
  }

  if (table.dim < 1 || vocab_count < 1)
    throw DataError("type2vec table: missing dim or vocab header");
  table.vocabulary = Vocabulary::from_tsv(vocab_tsv);
  if (table.vocabulary.size() != vocab_count)
    throw DataError("type2vec table: vocabulary entry count mismatch");

  const size_t expected =
      static_cast<size_t>(2 * vocab_count * table.dim) * 4;
  if (blob_size != expected || bytes.size() - pos < blob_size)
    throw DataError("type2vec table: blob size mismatch (expected "
                    + std::to_string(expected) + " bytes, header says "
                    + std::to_string(blob_size) + ", "
                    + std::to_string(bytes.size() - pos) + " available)");

  const int64_t rows = vocab_count, cols = table.dim;
  table.center = Tensor64::zeros({ rows, cols });
  table.context = Tensor64::zeros({ rows, cols });
  const char *p = bytes.data() + pos;
  for (auto &v : table.center.data) {
    v = read_f32_le(p);
    p += 4;
  }
  for (auto &v : table.context.data) {
    v = read_f32_le(p);
    p += 4;
  }
  return table;
}

void EmbeddingTable::save(const std::string &path) const {
  write_file(path, serialize());
}

EmbeddingTable EmbeddingTable::load(const std::string &path) {
  return deserialize(read_file(path));
}

}  // namespace c3net
