//
// Project c3net - Copyright 2026 c3net developers.
// SPDX-License-Identifier: Apache-2.0
//
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "c3net/dataset.hpp"
#include "c3net/element_table.hpp"
#include "c3net/net.hpp"

namespace c3net {

struct TrainOptions {
  int epochs = 100;
  int batch_size = 2;
  double lr = 1e-4;
  uint64_t seed = 0;
  /// Uniform shuffle over the combined pool by default; balanced sampling
  /// interleaves tasks instead.
  bool balanced_sampling = false;
  /// Adaptation mode: freeze the network and optimize only trainable Q.
  bool q_only = false;

  void validate() const;
};

struct TrainResult {
  /// Mean squared error per epoch, averaged over training points.
  std::vector<double> epoch_mean_mse;
};

/// Multitask mini-batch training: every conformer is an individual training
/// point; each epoch seeded-shuffles the combined pool across tasks, runs
/// batches through one shared tape, and takes one Adam step on the network
/// weights and all trainable Q vectors jointly. Surfaces and distance
/// matrices are precomputed per conformer (geometry does not change).
///
/// Fully deterministic given (seed, data, options): reruns produce
/// bit-identical loss traces. Throws NumericError naming the records in the
/// offending batch if the loss goes non-finite.
TrainResult train_loop(NetParams<float> &params, const ElementTable &elements,
                       const std::vector<Record> &records,
                       const TrainOptions &options);

}  // namespace c3net
