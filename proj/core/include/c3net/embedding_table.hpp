//
// Project c3net - Copyright 2026 c3net developers.
// SPDX-License-Identifier: Apache-2.0
//
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "c3net/tensor.hpp"
#include "c3net/typing.hpp"

namespace c3net {

/// Pretrained atom-type embeddings: one center and one context vector per
/// vocabulary code. Training runs in double; the file stores 32-bit floats
/// (text header with the vocabulary, then a little-endian row-major blob of
/// center rows followed by context rows).
struct EmbeddingTable {
  Vocabulary vocabulary;
  int dim = 0;
  uint64_t seed = 0;
  uint64_t corpus_checksum = 0;
  Tensor64 center;   // |V| x dim
  Tensor64 context;  // |V| x dim

  /// Codes ranked by descending cosine similarity of center vectors,
  /// excluding the query; ties broken by vocabulary id; k clamped to
  /// vocabulary size - 1. Throws DataError for unknown codes.
  std::vector<std::string> nearest(const std::string &code, int k) const;

  std::string serialize() const;
  static EmbeddingTable deserialize(std::string_view bytes);

  void save(const std::string &path) const;
  static EmbeddingTable load(const std::string &path);
};

}  // namespace c3net
