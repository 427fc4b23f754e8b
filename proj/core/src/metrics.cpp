//
// Project c3net - Copyright 2026 c3net developers.
// SPDX-License-Identifier: Apache-2.0
//
#include "c3net/metrics.hpp"

#include <cmath>
#include <limits>
#include <map>

#include "c3net/errors.hpp"
#include "c3net/strings.hpp"

namespace c3net {

MetricsGroup compute_group(const std::string &system_id, const std::string &task,
                           const std::vector<std::pair<double, double>> &pairs) {
  if (pairs.empty())
    throw DataError("metrics: empty record set for '" + system_id + "'");

  MetricsGroup group;
  group.system_id = system_id;
  group.task = task;
  group.n = static_cast<int>(pairs.size());

  double abs_sum = 0, target_sum = 0;
  for (const auto &[pred, target] : pairs) {
    abs_sum += std::abs(pred - target);
    target_sum += target;
  }
  group.mae = abs_sum / pairs.size();

  const double target_mean = target_sum / pairs.size();
  double ss_res = 0, ss_tot = 0;
  for (const auto &[pred, target] : pairs) {
    ss_res += (pred - target) * (pred - target);
    ss_tot += (target - target_mean) * (target - target_mean);
  }
  if (ss_tot > 0)
    group.r2 = 1.0 - ss_res / ss_tot;
  else
    group.r2 = ss_res <= 1e-24 ? 1.0 : -std::numeric_limits<double>::infinity();
  return group;
}

Metrics evaluate(NetParams<float> &params, const ElementTable &elements,
                 const std::vector<Record> &records,
                 std::vector<double> *per_record_predictions) {
  if (records.empty())
    throw DataError("evaluate: no records");

  std::vector<std::pair<double, double>> all_pairs;
  std::map<std::string, std::vector<std::pair<double, double>>> by_system;
  std::map<std::string, std::string> system_task;
  std::vector<std::string> system_order;
  if (per_record_predictions)
    per_record_predictions->clear();

  for (const auto &record : records) {
    double sum = 0;
    for (const auto &conformer : record.conformers) {
      ForwardResult<float> r =
          predict_property(params, conformer, elements, record.system_id);
      sum += static_cast<double>(r.property);
    }
    const double prediction = sum / static_cast<double>(record.conformers.size());
    if (per_record_predictions)
      per_record_predictions->push_back(prediction);

    all_pairs.push_back({ prediction, record.target });
    if (!by_system.count(record.system_id)) {
      system_order.push_back(record.system_id);
      system_task[record.system_id] = std::string(task_name(record.task));
    }
    by_system[record.system_id].push_back({ prediction, record.target });
  }

  Metrics metrics;
  for (const auto &system_id : system_order)
    metrics.per_system.push_back(compute_group(system_id, system_task[system_id],
                                               by_system[system_id]));
  metrics.overall = compute_group("overall", "all", all_pairs);
  return metrics;
}

std::string metrics_csv(const Metrics &metrics) {
  std::string out = "system_id,task,n,mae,r2\n";
  auto row = [&out](const MetricsGroup &g) {
    out += g.system_id + "," + g.task + "," + std::to_string(g.n) + ","
           + format_double(g.mae) + "," + format_double(g.r2) + "\n";
  };
  for (const auto &group : metrics.per_system)
    row(group);
  row(metrics.overall);
  return out;
}

}  // namespace c3net
