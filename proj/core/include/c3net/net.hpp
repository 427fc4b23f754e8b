//
// Project c3net - Copyright 2026 c3net developers.
// SPDX-License-Identifier: Apache-2.0
//
#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "c3net/adam.hpp"
#include "c3net/embedding_table.hpp"
#include "c3net/environment.hpp"
#include "c3net/errors.hpp"
#include "c3net/rng.hpp"
#include "c3net/sas.hpp"
#include "c3net/tape.hpp"
#include "c3net/typing.hpp"

namespace c3net {

/// Everything that changes what a trained model computes, recorded in the
/// checkpoint and validated on load. points_per_atom and probe_radius are
/// here because the interaction sum is unweighted: point density is
/// effectively a model hyperparameter and changing it invalidates weights.
struct Hyperparams {
  int feature_dim = 64;    // F, must match the Type2Vec table
  int n_interactions = 5;  // K parallel interaction networks
  int bond_iterations = 3; // L
  int hidden_dim = 32;     // H of the F -> H -> 1 predictor
  double probe_radius = 1.4;      // angstrom
  int points_per_atom = 64;
  double temperature = kDefaultTemperature;
  double rbf_mu_max = 8.0;        // mu evenly spaced on [0, rbf_mu_max]
  double sigma_init = 0.1;        // angstrom
  double cutoff = 0.0;            // 0 = no distance cutoff
  bool finetune_embeddings = false;

  static int default_hidden(int feature_dim) {
    return feature_dim / 2 > 0 ? feature_dim / 2 : 1;
  }

  void validate() const {
    if (feature_dim < 2)
      throw UsageError("feature_dim must be at least 2");
    if (n_interactions < 1)
      throw UsageError("n_interactions must be at least 1");
    if (bond_iterations < 0)
      throw UsageError("bond_iterations must be non-negative");
    if (hidden_dim < 1)
      throw UsageError("hidden_dim must be at least 1");
    if (probe_radius <= 0)
      throw UsageError("probe_radius must be positive");
    if (points_per_atom < 4)
      throw UsageError("points_per_atom must be at least 4");
    if (temperature <= 0)
      throw UsageError("temperature must be positive");
    if (rbf_mu_max <= 0 || sigma_init <= 0)
      throw UsageError("rbf_mu_max and sigma_init must be positive");
    if (cutoff < 0)
      throw UsageError("cutoff must be non-negative");
  }
};

inline constexpr double kSigmaFloor = 1e-4;  // angstrom

/// One environment the model knows about; trainable entries' Q vectors are
/// optimized jointly with the network weights.
template <class S>
struct EnvEntry {
  std::string system_id;
  Task task = Task::kSolvation;
  bool trainable = false;
  Tensor<S> q;  // shape {5}
};

/// All learnable state plus the vocabularies needed to interpret it.
template <class S>
struct NetParams {
  Hyperparams hyper;
  Vocabulary atom_vocab;
  Vocabulary bond_vocab;
  uint64_t radii_checksum = 0;
  uint64_t type2vec_checksum = 0;

  Tensor<S> type_embedding;          // |atom vocab| x F, frozen by default
  Tensor<S> bond_embedding;          // |bond vocab| x F
  Tensor<S> env_weight;              // F x 5
  Tensor<S> env_bias;                // F
  std::vector<Tensor<S>> rbf_mu;     // K tensors, each F
  std::vector<Tensor<S>> rbf_sigma;  // K tensors, each F
  Tensor<S> pred_w1;                 // F x H
  Tensor<S> pred_b1;                 // H
  Tensor<S> pred_w2;                 // H x 1
  Tensor<S> pred_b2;                 // 1

  std::vector<EnvEntry<S>> environments;

  const EnvEntry<S> &environment(std::string_view system_id) const {
    for (const auto &e : environments)
      if (e.system_id == system_id)
        return e;
    throw DataError("unknown system_id '" + std::string(system_id)
                    + "' (not registered in the model)");
  }
  EnvEntry<S> &environment(std::string_view system_id) {
    return const_cast<EnvEntry<S> &>(
        static_cast<const NetParams *>(this)->environment(system_id));
  }

  /// sigma entries are kept strictly positive after every optimizer step.
  void clamp_sigmas() {
    for (auto &sigma : rbf_sigma)
      for (S &v : sigma.data)
        if (v < static_cast<S>(kSigmaFloor))
          v = static_cast<S>(kSigmaFloor);
  }

  bool all_finite() const {
    bool ok = type_embedding.all_finite() && bond_embedding.all_finite()
              && env_weight.all_finite() && env_bias.all_finite()
              && pred_w1.all_finite() && pred_b1.all_finite()
              && pred_w2.all_finite() && pred_b2.all_finite();
    for (const auto &t : rbf_mu)
      ok = ok && t.all_finite();
    for (const auto &t : rbf_sigma)
      ok = ok && t.all_finite();
    for (const auto &e : environments)
      ok = ok && e.q.all_finite();
    return ok;
  }

  template <class T>
  NetParams<T> cast() const {
    NetParams<T> out;
    out.hyper = hyper;
    out.atom_vocab = atom_vocab;
    out.bond_vocab = bond_vocab;
    out.radii_checksum = radii_checksum;
    out.type2vec_checksum = type2vec_checksum;
    out.type_embedding = type_embedding.template cast<T>();
    out.bond_embedding = bond_embedding.template cast<T>();
    out.env_weight = env_weight.template cast<T>();
    out.env_bias = env_bias.template cast<T>();
    for (const auto &t : rbf_mu)
      out.rbf_mu.push_back(t.template cast<T>());
    for (const auto &t : rbf_sigma)
      out.rbf_sigma.push_back(t.template cast<T>());
    out.pred_w1 = pred_w1.template cast<T>();
    out.pred_b1 = pred_b1.template cast<T>();
    out.pred_w2 = pred_w2.template cast<T>();
    out.pred_b2 = pred_b2.template cast<T>();
    for (const auto &e : environments)
      out.environments.push_back(
          { e.system_id, e.task, e.trainable, e.q.template cast<T>() });
    return out;
  }
};

/// Fresh parameters: type embeddings copied from the Type2Vec table, bond
/// embeddings and linear maps seeded random, mu evenly spaced on
/// [0, rbf_mu_max] with sigma at sigma_init for every interaction network.
template <class S>
NetParams<S> init_params(const Hyperparams &hyper, const EmbeddingTable &table,
                         const Vocabulary &bond_vocab,
                         const std::vector<EnvironmentSpec> &environments,
                         uint64_t radii_checksum, uint64_t seed) {
  hyper.validate();
  if (table.dim != hyper.feature_dim)
    throw UsageError("feature_dim " + std::to_string(hyper.feature_dim)
                     + " does not match Type2Vec dimension "
                     + std::to_string(table.dim));

  NetParams<S> params;
  params.hyper = hyper;
  params.atom_vocab = table.vocabulary;
  params.bond_vocab = bond_vocab;
  params.radii_checksum = radii_checksum;
  params.type2vec_checksum = table.corpus_checksum;

  const int f_dim = hyper.feature_dim;
  const int h_dim = hyper.hidden_dim;
  params.type_embedding = table.center.template cast<S>();

  Rng bond_rng(derive_seed(seed, "init.bond_embedding"));
  params.bond_embedding =
      Tensor<S>::zeros({ bond_vocab.size(), f_dim });
  for (S &v : params.bond_embedding.data)
    v = static_cast<S>(bond_rng.uniform(-0.1, 0.1));

  // Q components arrive on raw physical scales (dielectric constants run
  // to ~80), so the environment map starts small.
  Rng env_rng(derive_seed(seed, "init.env_linear"));
  params.env_weight = Tensor<S>::zeros({ f_dim, 5 });
  for (S &v : params.env_weight.data)
    v = static_cast<S>(env_rng.uniform(-0.01, 0.01));
  params.env_bias = Tensor<S>::zeros({ f_dim });

  for (int k = 0; k < hyper.n_interactions; ++k) {
    Tensor<S> mu = Tensor<S>::zeros({ f_dim });
    for (int f = 0; f < f_dim; ++f)
      mu.data[static_cast<size_t>(f)] = static_cast<S>(
          f_dim == 1 ? 0.0 : hyper.rbf_mu_max * f / (f_dim - 1));
    params.rbf_mu.push_back(std::move(mu));
    params.rbf_sigma.push_back(
        Tensor<S>::full({ f_dim }, static_cast<S>(hyper.sigma_init)));
  }

  Rng pred_rng(derive_seed(seed, "init.predictor"));
  const double w1_bound = std::sqrt(6.0 / (f_dim + h_dim));
  params.pred_w1 = Tensor<S>::zeros({ f_dim, h_dim });
  for (S &v : params.pred_w1.data)
    v = static_cast<S>(pred_rng.uniform(-w1_bound, w1_bound));
  params.pred_b1 = Tensor<S>::zeros({ h_dim });
  // Damped output layer: predictions start near zero instead of at the
  // scale the random interaction fields would otherwise impose.
  const double w2_bound = 0.05 * std::sqrt(6.0 / (h_dim + 1));
  params.pred_w2 = Tensor<S>::zeros({ h_dim, 1 });
  for (S &v : params.pred_w2.data)
    v = static_cast<S>(pred_rng.uniform(-w2_bound, w2_bound));
  params.pred_b2 = Tensor<S>::zeros({ 1 });

  for (const auto &spec : environments) {
    EnvEntry<S> entry;
    entry.system_id = spec.system_id;
    entry.task = spec.task;
    entry.trainable = spec.trainable;
    entry.q = Tensor<S>::zeros({ 5 });
    for (size_t k = 0; k < 5; ++k)
      entry.q.data[k] = static_cast<S>(spec.q[k]);
    params.environments.push_back(std::move(entry));
  }
  return params;
}

/// Plain (non-tape) Gaussian radial filter, one value per feature.
template <class S>
std::vector<S> rbf_filter(S d, const Tensor<S> &mu, const Tensor<S> &sigma) {
  if (mu.shape != sigma.shape || mu.shape.size() != 1)
    throw DataError("rbf_filter: mu and sigma must be rank-1 of equal length");
  std::vector<S> out(mu.data.size());
  for (size_t f = 0; f < out.size(); ++f)
    out[f] = Tape<S>::filter_value(d, mu.data[f], sigma.data[f]);
  return out;
}

/// Atom-to-surface-point distances in double geometry, cast to S at the
/// network boundary.
template <class S>
std::shared_ptr<const Tensor<S>> distance_matrix(const Molecule &mol,
                                                 const SurfacePoints &surface) {
  auto dist = std::make_shared<Tensor<S>>(
      Tensor<S>::zeros({ mol.atom_count(), surface.count() }));
  for (int i = 0; i < mol.atom_count(); ++i)
    for (int j = 0; j < surface.count(); ++j)
      dist->at(i, j) = static_cast<S>(
          distance(mol.atoms[static_cast<size_t>(i)].position,
                   surface.positions[static_cast<size_t>(j)]));
  return dist;
}

template <class S>
struct ForwardResult {
  S property = S(0);                  // P in task units
  std::vector<S> contributions;       // p_i, kcal/mol
  Tensor<S> potentials;               // V_i rows, n x F
  std::vector<Tensor<S>> fields;      // f_i^k, K tensors of n x F
};

/// One tape wired with the parameter leaves. Several samples may run
/// forward on the same tape (a mini-batch); after backward() the gradient
/// bindings pair parameter storage with accumulated gradients for Adam.
template <class S>
class ModelRun {
public:
  using Id = typename Tape<S>::Id;

  ModelRun(NetParams<S> &params, bool with_grad): params_(&params) {
    const bool finetune = params.hyper.finetune_embeddings;
    type_embedding_ = tape_.leaf(params.type_embedding, with_grad && finetune,
                                 "type_embedding");
    bond_embedding_ = tape_.leaf(params.bond_embedding, with_grad,
                                 "bond_embedding");
    env_weight_ = tape_.leaf(params.env_weight, with_grad, "env_weight");
    env_bias_ = tape_.leaf(params.env_bias, with_grad, "env_bias");
    for (int k = 0; k < params.hyper.n_interactions; ++k) {
      rbf_mu_.push_back(tape_.leaf(params.rbf_mu[static_cast<size_t>(k)],
                                   with_grad, "rbf_mu." + std::to_string(k)));
      rbf_sigma_.push_back(tape_.leaf(params.rbf_sigma[static_cast<size_t>(k)],
                                      with_grad,
                                      "rbf_sigma." + std::to_string(k)));
    }
    pred_w1_ = tape_.leaf(params.pred_w1, with_grad, "pred_w1");
    pred_b1_ = tape_.leaf(params.pred_b1, with_grad, "pred_b1");
    pred_w2_ = tape_.leaf(params.pred_w2, with_grad, "pred_w2");
    pred_b2_ = tape_.leaf(params.pred_b2, with_grad, "pred_b2");
    for (auto &entry : params.environments)
      env_q_[entry.system_id] =
          tape_.leaf(entry.q, with_grad && entry.trainable,
                     "env_q." + entry.system_id);
  }

  Tape<S> &tape() { return tape_; }

  /// X0: per-atom rows of the (Type2Vec) embedding table.
  Id embed_block(const TypedGraph &graph) {
    std::vector<int32_t> ids;
    ids.reserve(graph.atom_types.size());
    for (const auto &code : graph.atom_types)
      ids.push_back(params_->atom_vocab.id(code));  // throws naming the type
    return tape_.gather_rows(type_embedding_, std::move(ids));
  }

  /// L iterations of x_i <- x_i + sum_j x_j o y_ij over covalent neighbors.
  /// Bondless atoms pass through unchanged.
  Id bond_update(Id x, const TypedGraph &graph, int iterations) {
    const Molecule &mol = *graph.molecule;
    std::vector<int32_t> src, dst, bond_ids;
    for (size_t b = 0; b < mol.bonds.size(); ++b) {
      const int32_t type_id =
          static_cast<int32_t>(params_->bond_vocab.id(graph.bond_types[b]));
      src.push_back(mol.bonds[b].i);
      dst.push_back(mol.bonds[b].j);
      bond_ids.push_back(type_id);
      src.push_back(mol.bonds[b].j);
      dst.push_back(mol.bonds[b].i);
      bond_ids.push_back(type_id);
    }
    if (src.empty())
      return x;
    Id y_rows = tape_.gather_rows(bond_embedding_, bond_ids);
    const int64_t n = tape_.value(x).shape[0];
    for (int l = 0; l < iterations; ++l) {
      Id neighbor = tape_.gather_rows(x, dst);
      Id messages = tape_.mul(neighbor, y_rows);
      Id residual = tape_.scatter_add_rows(messages, src, n);
      x = tape_.add(x, residual);
    }
    return x;
  }

  /// S = env_linear(Q) broadcast to every surface point.
  Id environment_rows(std::string_view system_id, int64_t n_points) {
    auto it = env_q_.find(std::string(system_id));
    if (it == env_q_.end())
      throw DataError("unknown system_id '" + std::string(system_id)
                      + "' (not registered in the model)");
    Id q_col = tape_.reshape(it->second, { 5, 1 });
    Id s_col = tape_.matmul(env_weight_, q_col);
    Id s_vec = tape_.add(tape_.reshape(s_col, { params_->hyper.feature_dim }),
                         env_bias_);
    return tape_.broadcast_rows(s_vec, n_points);
  }

  struct Interaction {
    Id potentials;           // V, n x F
    std::vector<Id> fields;  // f^k, n x F each
  };

  /// f_i^k = sum_j S_j o W^k(d_ij);  V_i = x_i o sum_k f_i^k.
  Interaction interaction(Id x, Id s_rows,
                          std::shared_ptr<const Tensor<S>> distances) {
    if (distances->shape[1] == 0)
      throw DataError("interaction: empty surface");
    Interaction out;
    Id field_sum = -1;
    for (size_t k = 0; k < rbf_mu_.size(); ++k) {
      Id field = tape_.rbf_conv(s_rows, distances, rbf_mu_[k], rbf_sigma_[k],
                                static_cast<S>(params_->hyper.cutoff));
      out.fields.push_back(field);
      field_sum = k == 0 ? field : tape_.add(field_sum, field);
    }
    out.potentials = tape_.mul(x, field_sum);
    return out;
  }

  /// p_i rows (kcal/mol) from the two-layer predictor.
  Id predictor(Id potentials) {
    Id hidden = tape_.add(tape_.matmul(potentials, pred_w1_), pred_b1_);
    Id activated = tape_.shifted_softplus(hidden);
    Id out = tape_.add(tape_.matmul(activated, pred_w2_), pred_b2_);
    const int64_t n = tape_.value(potentials).shape[0];
    return tape_.reshape(out, { n });
  }

  struct Prediction {
    Id property;        // scalar, task units
    Id contributions;   // {n}, kcal/mol
    Interaction interaction;
  };

  /// Full forward for one sample: P = omega * sum_i p_i. Callers running
  /// the same geometry repeatedly may pass a precomputed distance matrix.
  Prediction forward(const TypedGraph &graph, const SurfacePoints &surface,
                     std::string_view system_id,
                     std::shared_ptr<const Tensor<S>> distances = nullptr) {
    const EnvEntry<S> &env = params_->environment(system_id);
    Id x = embed_block(graph);
    x = bond_update(x, graph, params_->hyper.bond_iterations);
    if (!distances)
      distances = distance_matrix<S>(*graph.molecule, surface);
    Id s_rows = environment_rows(system_id, surface.count());
    Interaction inter = interaction(x, s_rows, distances);
    Id p = predictor(inter.potentials);
    Id total = tape_.sum_axis(p, 0);
    const S omega =
        static_cast<S>(task_omega(env.task, params_->hyper.temperature));
    Id property = tape_.scalar_mul(total, omega);
    return Prediction{ property, p, std::move(inter) };
  }

  ForwardResult<S> result_of(const Prediction &pred) {
    ForwardResult<S> out;
    out.property = tape_.value(pred.property).data[0];
    out.contributions = tape_.value(pred.contributions).data;
    out.potentials = tape_.value(pred.interaction.potentials);
    for (Id field : pred.interaction.fields)
      out.fields.push_back(tape_.value(field));
    return out;
  }

  /// Pairs every trainable leaf's gradient with its parameter storage.
  /// Valid after tape().backward().
  std::vector<ParamUpdate<S>> gradient_bindings() {
    std::vector<ParamUpdate<S>> out;
    auto bind = [&](std::string name, Id id, Tensor<S> *storage) {
      if (tape_.requires_grad(id))
        out.push_back({ std::move(name), storage, &tape_.grad(id) });
    };
    bind("type_embedding", type_embedding_, &params_->type_embedding);
    bind("bond_embedding", bond_embedding_, &params_->bond_embedding);
    bind("env_weight", env_weight_, &params_->env_weight);
    bind("env_bias", env_bias_, &params_->env_bias);
    for (size_t k = 0; k < rbf_mu_.size(); ++k) {
      bind("rbf_mu." + std::to_string(k), rbf_mu_[k], &params_->rbf_mu[k]);
      bind("rbf_sigma." + std::to_string(k), rbf_sigma_[k],
           &params_->rbf_sigma[k]);
    }
    bind("pred_w1", pred_w1_, &params_->pred_w1);
    bind("pred_b1", pred_b1_, &params_->pred_b1);
    bind("pred_w2", pred_w2_, &params_->pred_w2);
    bind("pred_b2", pred_b2_, &params_->pred_b2);
    for (auto &entry : params_->environments) {
      auto it = env_q_.find(entry.system_id);
      if (it != env_q_.end() && tape_.requires_grad(it->second))
        out.push_back({ "env_q." + entry.system_id, &entry.q,
                        &tape_.grad(it->second) });
    }
    return out;
  }

private:
  NetParams<S> *params_;
  Tape<S> tape_;
  Id type_embedding_ = -1, bond_embedding_ = -1;
  Id env_weight_ = -1, env_bias_ = -1;
  std::vector<Id> rbf_mu_, rbf_sigma_;
  Id pred_w1_ = -1, pred_b1_ = -1, pred_w2_ = -1, pred_b2_ = -1;
  std::map<std::string, Id> env_q_;
};

/// Convenience inference: perceive, sample the surface, run the network.
template <class S>
ForwardResult<S> predict_property(NetParams<S> &params, const Molecule &mol,
                                  const ElementTable &elements,
                                  std::string_view system_id) {
  TypedGraph graph = perceive(mol);
  SurfacePoints surface = sas_points(mol, elements, params.hyper.probe_radius,
                                     params.hyper.points_per_atom);
  ModelRun<S> run(params, false);
  auto pred = run.forward(graph, surface, system_id);
  return run.result_of(pred);
}

}  // namespace c3net
