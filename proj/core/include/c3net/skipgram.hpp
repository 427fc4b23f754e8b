//
// Project c3net - Copyright 2026 c3net developers.
// SPDX-License-Identifier: Apache-2.0
//
#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "c3net/embedding_table.hpp"
#include "c3net/typing.hpp"

namespace c3net {

struct SkipgramOptions {
  int dim = 64;
  int negatives = 5;
  int epochs = 50;
  double lr = 0.025;
  double min_lr_fraction = 1e-4;   // linear decay floor as a fraction of lr
  double subsample_threshold = 0;  // 0 disables frequent-type subsampling
  uint64_t seed = 0;
  uint64_t corpus_checksum = 0;
};

struct SkipgramResult {
  EmbeddingTable table;
  std::vector<double> epoch_mean_loss;
};

/// Skip-gram with negative sampling over (center, context) atom-type id
/// pairs. Negatives are drawn from the unigram^0.75 distribution of context
/// occurrences. Center vectors start uniform in [-0.5/dim, 0.5/dim], context
/// vectors at zero. Fully deterministic given the seed.
///
/// Throws UsageError/DataError for an empty pair list, invalid ids, or a
/// vocabulary smaller than negatives + 1.
SkipgramResult train_skipgram(const Vocabulary &vocab,
                              const std::vector<std::pair<int, int>> &pairs,
                              const SkipgramOptions &options);

}  // namespace c3net
