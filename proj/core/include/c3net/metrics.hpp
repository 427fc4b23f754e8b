//
// Project c3net - Copyright 2026 c3net developers.
// SPDX-License-Identifier: Apache-2.0
//
#pragma once

#include <string>
#include <vector>

#include "c3net/dataset.hpp"
#include "c3net/element_table.hpp"
#include "c3net/net.hpp"

namespace c3net {

struct MetricsGroup {
  std::string system_id;
  std::string task;
  int n = 0;        // evaluated records
  double mae = 0;
  double r2 = 0;    // 1 - SS_res/SS_tot about the group's target mean
};

struct Metrics {
  std::vector<MetricsGroup> per_system;  // first-appearance order
  MetricsGroup overall;
};

/// MAE and R^2 over (prediction, target) pairs. R^2 of a zero-variance
/// group is 1 when residuals vanish too, -inf otherwise.
MetricsGroup compute_group(const std::string &system_id, const std::string &task,
                           const std::vector<std::pair<double, double>> &pairs);

/// Per-record predictions are the arithmetic mean of the conformers'
/// predicted P. Fills per_record_predictions (dataset order) when given.
Metrics evaluate(NetParams<float> &params, const ElementTable &elements,
                 const std::vector<Record> &records,
                 std::vector<double> *per_record_predictions = nullptr);

/// CSV with columns system_id, task, n, mae, r2; one row per system plus a
/// final "overall" row.
std::string metrics_csv(const Metrics &metrics);

}  // namespace c3net
