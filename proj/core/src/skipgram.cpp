//
// Project c3net - Copyright 2026 c3net developers.
// SPDX-License-Identifier: Apache-2.0
//
#include "c3net/skipgram.hpp"

#include <algorithm>
#include <cmath>

#include "c3net/errors.hpp"
#include "c3net/rng.hpp"

namespace c3net {
namespace {

double sigmoid(double x) {
  if (x >= 0)
    return 1.0 / (1.0 + std::exp(-x));
  double e = std::exp(x);
  return e / (1.0 + e);
}

}  // namespace

SkipgramResult train_skipgram(const Vocabulary &vocab,
                              const std::vector<std::pair<int, int>> &pairs,
                              const SkipgramOptions &options) {
  if (pairs.empty())
    throw DataError("type2vec: no (center, context) pairs to train on");
  if (options.dim < 2)
    throw UsageError("type2vec: embedding dimension must be at least 2");
  if (options.negatives < 1)
    throw UsageError("type2vec: need at least one negative sample");
  if (vocab.size() < options.negatives + 1)
    throw DataError("type2vec: vocabulary of " + std::to_string(vocab.size())
                    + " is too small for " + std::to_string(options.negatives)
                    + " negatives");
  for (const auto &[c, o] : pairs)
    if (c < 0 || c >= vocab.size() || o < 0 || o >= vocab.size())
      throw DataError("type2vec: pair id out of vocabulary range");

  const int n = vocab.size();
  const int dim = options.dim;

  SkipgramResult result;
  EmbeddingTable &table = result.table;
  table.vocabulary = vocab;
  table.dim = dim;
  table.seed = options.seed;
  table.corpus_checksum = options.corpus_checksum;
  table.center = Tensor64::zeros({ n, dim });
  table.context = Tensor64::zeros({ n, dim });

  Rng init_rng(derive_seed(options.seed, "type2vec.init"));
  const double half = 0.5 / dim;
  for (auto &v : table.center.data)
    v = init_rng.uniform(-half, half);

  // Unigram^0.75 noise distribution over context occurrences.
  std::vector<double> counts(static_cast<size_t>(n), 0.0);
  for (const auto &p : pairs)
    counts[static_cast<size_t>(p.second)] += 1.0;
  std::vector<double> cumulative(static_cast<size_t>(n), 0.0);
  double total = 0;
  for (int i = 0; i < n; ++i) {
    total += std::pow(counts[static_cast<size_t>(i)], 0.75);
    cumulative[static_cast<size_t>(i)] = total;
  }

  // Center-frequency fractions for optional subsampling.
  std::vector<double> center_freq(static_cast<size_t>(n), 0.0);
  for (const auto &p : pairs)
    center_freq[static_cast<size_t>(p.first)] += 1.0 / pairs.size();

  Rng rng(derive_seed(options.seed, "type2vec.sgd"));
  auto draw_negative = [&](int positive) {
    for (int attempt = 0; attempt < 16; ++attempt) {
      double r = rng.next_double() * total;
      int id = static_cast<int>(
          std::lower_bound(cumulative.begin(), cumulative.end(), r)
          - cumulative.begin());
      id = std::min(id, n - 1);
      if (id != positive)
        return id;
    }
    return positive == 0 ? 1 : 0;  // degenerate distribution fallback
  };

  std::vector<size_t> order(pairs.size());
  std::vector<double> dv(static_cast<size_t>(dim));
  const double total_visits =
      static_cast<double>(options.epochs) * static_cast<double>(pairs.size());
  double visit = 0;

  for (int epoch = 0; epoch < options.epochs; ++epoch) {
    for (size_t i = 0; i < order.size(); ++i)
      order[i] = i;
    Rng shuffle_rng(
        derive_seed(options.seed, "type2vec.epoch." + std::to_string(epoch)));
    shuffle_rng.shuffle(order);

    double loss_sum = 0;
    size_t processed = 0;
    for (size_t idx : order) {
      const double progress = visit / total_visits;
      visit += 1;
      const double lr = options.lr
                        * std::max(options.min_lr_fraction, 1.0 - progress);

      const auto &[c, o] = pairs[idx];
      if (options.subsample_threshold > 0) {
        double f = center_freq[static_cast<size_t>(c)];
        double keep = f > 0 ? std::sqrt(options.subsample_threshold / f) : 1.0;
        if (rng.next_double() >= keep)
          continue;
      }

      double *v = &table.center.data[static_cast<size_t>(c) * dim];
      std::fill(dv.begin(), dv.end(), 0.0);
      double pair_loss = 0;

      for (int k = 0; k <= options.negatives; ++k) {
        const int target = k == 0 ? o : draw_negative(o);
        const double label = k == 0 ? 1.0 : 0.0;
        double *u = &table.context.data[static_cast<size_t>(target) * dim];
        double dot = 0;
        for (int f = 0; f < dim; ++f)
          dot += u[f] * v[f];
        const double score = sigmoid(dot);
        pair_loss -= std::log(std::max(label == 1.0 ? score : 1.0 - score, 1e-12));
        const double g = score - label;
        for (int f = 0; f < dim; ++f) {
          dv[static_cast<size_t>(f)] += g * u[f];
          u[f] -= lr * g * v[f];
        }
      }
      for (int f = 0; f < dim; ++f)
        v[f] -= lr * dv[static_cast<size_t>(f)];
      loss_sum += pair_loss;
      ++processed;
    }
    result.epoch_mean_loss.push_back(processed ? loss_sum / processed : 0.0);
  }
  return result;
}

}  // namespace c3net
