//
// Project c3net - Copyright 2026 c3net developers.
// SPDX-License-Identifier: Apache-2.0
//
#include "c3net/train_loop.hpp"

#include <cmath>

#include "c3net/errors.hpp"
#include "c3net/rng.hpp"
#include "c3net/sas.hpp"

namespace c3net {

void TrainOptions::validate() const {
  if (epochs < 0)
    throw UsageError("epochs must be non-negative");
  if (batch_size < 1)
    throw UsageError("batch size must be at least 1");
  if (lr < 0)
    throw UsageError("learning rate must be non-negative");
}

namespace {

struct TrainPoint {
  const Record *record = nullptr;
  TypedGraph graph;
  SurfacePoints surface;
  std::shared_ptr<const Tensor32> distances;
};

std::vector<size_t> epoch_order(const std::vector<TrainPoint> &points,
                                const TrainOptions &options, int epoch) {
  Rng rng(derive_seed(options.seed, "train.epoch." + std::to_string(epoch)));
  if (!options.balanced_sampling) {
    std::vector<size_t> order(points.size());
    for (size_t i = 0; i < order.size(); ++i)
      order[i] = i;
    rng.shuffle(order);
    return order;
  }

  // Balanced sampling: shuffle within per-task pools, then draw the next
  // point from a uniformly chosen non-empty task.
  std::vector<std::vector<size_t>> pools(3);
  for (size_t i = 0; i < points.size(); ++i)
    pools[static_cast<size_t>(points[i].record->task)].push_back(i);
  for (auto &pool : pools)
    rng.shuffle(pool);
  std::vector<size_t> cursor(3, 0);
  std::vector<size_t> order;
  order.reserve(points.size());
  while (order.size() < points.size()) {
    std::vector<int> open;
    for (int t = 0; t < 3; ++t)
      if (cursor[static_cast<size_t>(t)] < pools[static_cast<size_t>(t)].size())
        open.push_back(t);
    int t = open[static_cast<size_t>(rng.next_below(open.size()))];
    order.push_back(pools[static_cast<size_t>(t)][cursor[static_cast<size_t>(t)]++]);
  }
  return order;
}

}  // namespace

TrainResult train_loop(NetParams<float> &params, const ElementTable &elements,
                       const std::vector<Record> &records,
                       const TrainOptions &options) {
  options.validate();
  if (records.empty())
    throw DataError("train_loop: no records");

  // Every conformer is an individual training point; geometry-derived
  // inputs are computed once up front.
  std::vector<TrainPoint> points;
  for (const auto &record : records)
    for (const auto &conformer : record.conformers) {
      TrainPoint point;
      point.record = &record;
      point.graph = perceive(conformer);
      point.surface = sas_points(conformer, elements, params.hyper.probe_radius,
                                 params.hyper.points_per_atom);
      point.distances = distance_matrix<float>(conformer, point.surface);
      points.push_back(std::move(point));
    }

  Adam<float> optimizer(options.lr);
  TrainResult result;

  // Per-point squared errors land in index-order slots so the reported
  // epoch mean does not depend on how the shuffle grouped the batches.
  std::vector<double> point_sq(points.size(), 0.0);

  for (int epoch = 0; epoch < options.epochs; ++epoch) {
    const std::vector<size_t> order = epoch_order(points, options, epoch);

    for (size_t begin = 0; begin < order.size();
         begin += static_cast<size_t>(options.batch_size)) {
      const size_t end = std::min(order.size(),
                                  begin + static_cast<size_t>(options.batch_size));
      const int batch_n = static_cast<int>(end - begin);

      ModelRun<float> run(params, true);
      Tape32 &tape = run.tape();
      Tape32::Id loss = -1;
      for (size_t k = begin; k < end; ++k) {
        const TrainPoint &point = points[order[k]];
        auto pred = run.forward(point.graph, point.surface,
                                point.record->system_id, point.distances);
        Tape32::Id target = tape.constant(
            Tensor32::scalar(static_cast<float>(point.record->target)));
        Tape32::Id sq = tape.square(tape.sub(pred.property, target));
        point_sq[order[k]] = static_cast<double>(tape.value(sq).data[0]);
        loss = k == begin ? sq : tape.add(loss, sq);
      }
      loss = tape.scalar_mul(loss, 1.0f / static_cast<float>(batch_n));

      if (!std::isfinite(tape.value(loss).data[0])) {
        std::string batch_ids;
        for (size_t k = begin; k < end; ++k)
          batch_ids += (k == begin ? "" : ", ")
                       + points[order[k]].record->record_id;
        throw NumericError("non-finite loss in batch [" + batch_ids + "] at epoch "
                           + std::to_string(epoch));
      }

      if (options.lr > 0) {
        tape.backward(loss);
        auto bindings = run.gradient_bindings();
        if (options.q_only) {
          std::erase_if(bindings, [](const ParamUpdate<float> &p) {
            return p.name.rfind("env_q.", 0) != 0;
          });
        }
        optimizer.step(bindings);
        params.clamp_sigmas();
      }
    }
    double epoch_loss = 0;
    for (double sq : point_sq)
      epoch_loss += sq;
    result.epoch_mean_mse.push_back(epoch_loss
                                    / static_cast<double>(points.size()));
  }
  return result;
}

}  // namespace c3net
