//
// Project c3net - Copyright 2026 c3net developers.
// SPDX-License-Identifier: Apache-2.0
//
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>

#include "c3net/checkpoint.hpp"
#include "c3net/errors.hpp"
#include "c3net/model_check.hpp"
#include "c3net/net.hpp"
#include "c3net/sdf.hpp"
#include "c3net/strings.hpp"
#include "support/fixtures.hpp"

using namespace c3net;
using namespace c3net::testing;

namespace {

/// Minimal hand-filled parameter set over one C/H style vocabulary pair and
/// a single bond type, for worked-example checks.
template <class S>
NetParams<S> tiny_params(int f_dim, int k_nets, int h_dim) {
  NetParams<S> params;
  params.hyper.feature_dim = f_dim;
  params.hyper.n_interactions = k_nets;
  params.hyper.bond_iterations = 1;
  params.hyper.hidden_dim = h_dim;
  params.atom_vocab.add("A.sp3.0");
  params.atom_vocab.add("B.none.0");
  params.atom_vocab.finalize();
  params.bond_vocab.add("A-B.single");
  params.bond_vocab.finalize();
  params.type_embedding = Tensor<S>::zeros({ 2, f_dim });
  params.bond_embedding = Tensor<S>::zeros({ 1, f_dim });
  params.env_weight = Tensor<S>::zeros({ f_dim, 5 });
  params.env_bias = Tensor<S>::zeros({ f_dim });
  for (int k = 0; k < k_nets; ++k) {
    params.rbf_mu.push_back(Tensor<S>::zeros({ f_dim }));
    params.rbf_sigma.push_back(Tensor<S>::full({ f_dim }, S(0.1)));
  }
  params.pred_w1 = Tensor<S>::zeros({ f_dim, h_dim });
  params.pred_b1 = Tensor<S>::zeros({ h_dim });
  params.pred_w2 = Tensor<S>::zeros({ h_dim, 1 });
  params.pred_b2 = Tensor<S>::zeros({ 1 });
  params.environments.push_back(
      { "env", Task::kSolvation, false, Tensor<S>::zeros({ 5 }) });
  return params;
}

/// Two-atom A-B molecule with a typed graph matching tiny_params.
struct TinySystem {
  Molecule mol;
  TypedGraph graph;
};

TinySystem tiny_system(double separation = 1.5) {
  TinySystem sys;
  sys.mol.id = "tiny";
  sys.mol.atoms = { { "C", { 0, 0, 0 }, 0 }, { "H", { separation, 0, 0 }, 0 } };
  sys.mol.bonds = { { 0, 1, BondOrder::kSingle } };
  sys.graph.molecule = &sys.mol;
  sys.graph.atom_types = { "A.sp3.0", "B.none.0" };
  sys.graph.bond_types = { "A-B.single" };
  sys.graph.adjacency = { { 1 }, { 0 } };
  sys.graph.dist2 = { {}, {} };
  return sys;
}

SurfacePoints points_at(std::vector<Vec3> positions) {
  SurfacePoints pts;
  pts.positions = std::move(positions);
  pts.owner_atom.assign(pts.positions.size(), 0);
  pts.probe_radius = 1.4;
  pts.points_per_atom = static_cast<int>(pts.positions.size());
  return pts;
}

const ElementTable &elements() {
  static ElementTable table = ElementTable::load(data_dir() + "/bondi_radii.tsv");
  return table;
}

EmbeddingTable table_for(const Vocabulary &vocab, int dim, uint64_t seed) {
  EmbeddingTable table;
  table.vocabulary = vocab;
  table.dim = dim;
  table.seed = seed;
  table.center = Tensor64::zeros({ vocab.size(), dim });
  table.context = Tensor64::zeros({ vocab.size(), dim });
  Rng rng(seed);
  for (auto &v : table.center.data)
    v = rng.uniform(-0.03, 0.03);
  return table;
}

/// Fully initialized float params over the curated test corpus.
NetParams<float> corpus_params(uint64_t seed, int f_dim = 16, int k_nets = 2) {
  auto mols = parse_sdf(read_file(data_dir() + "/test_molecules.sdf"));
  Vocabulary atom_vocab, bond_vocab;
  for (const auto &mol : mols) {
    auto g = perceive(mol);
    for (const auto &c : g.atom_types)
      atom_vocab.add(c);
    for (const auto &c : g.bond_types)
      bond_vocab.add(c);
  }
  atom_vocab.finalize();
  bond_vocab.finalize();
  EmbeddingTable table = table_for(atom_vocab, f_dim, seed);
  Hyperparams hyper;
  hyper.feature_dim = f_dim;
  hyper.n_interactions = k_nets;
  hyper.bond_iterations = 2;
  hyper.hidden_dim = f_dim / 2;
  hyper.points_per_atom = 16;
  SolventTable solvents = SolventTable::load(data_dir() + "/solvents.tsv");
  return init_params<float>(hyper, table, bond_vocab, solvents.specs,
                            elements().checksum(), seed);
}

}  // namespace

TEST_CASE("embed_block gathers one row per atom") {
  auto params = tiny_params<double>(3, 1, 2);
  params.type_embedding = Tensor64({ 2, 3 }, { 1, 2, 3, 4, 5, 6 });
  auto sys = tiny_system();
  ModelRun<double> run(params, false);
  auto x = run.embed_block(sys.graph);
  const Tensor64 &v = run.tape().value(x);
  CHECK(v.at(0, 0) == 1);
  CHECK(v.at(0, 2) == 3);
  CHECK(v.at(1, 0) == 4);

  // Same type -> identical rows; two types -> exactly two distinct rows.
  TypedGraph twins = sys.graph;
  twins.atom_types = { "A.sp3.0", "A.sp3.0" };
  ModelRun<double> run2(params, false);
  auto x2 = run2.embed_block(twins);
  CHECK(run2.tape().value(x2).at(0, 1) == run2.tape().value(x2).at(1, 1));
}

TEST_CASE("embed_block rejects out-of-vocabulary types by name") {
  auto params = tiny_params<double>(3, 1, 2);
  auto sys = tiny_system();
  sys.graph.atom_types = { "Z.sp.0", "B.none.0" };
  ModelRun<double> run(params, false);
  try {
    run.embed_block(sys.graph);
    FAIL("expected error");
  } catch (const DataError &e) {
    CHECK(std::string(e.what()).find("Z.sp.0") != std::string::npos);
  }
}

TEST_CASE("bond_update worked example and edge cases") {
  auto params = tiny_params<double>(1, 1, 1);
  params.type_embedding = Tensor64({ 2, 1 }, { 1.0, 2.0 });
  auto sys = tiny_system();

  SUBCASE("hand-evaluated single iteration") {
    params.bond_embedding = Tensor64({ 1, 1 }, { 0.5 });
    ModelRun<double> run(params, false);
    auto x = run.embed_block(sys.graph);
    auto out = run.bond_update(x, sys.graph, 1);
    CHECK(run.tape().value(out).data[0] == doctest::Approx(2.0));  // 1 + 2*0.5
    CHECK(run.tape().value(out).data[1] == doctest::Approx(2.5));  // 2 + 1*0.5
  }
  SUBCASE("zero bond embeddings are the identity for any L") {
    ModelRun<double> run(params, false);
    auto x = run.embed_block(sys.graph);
    auto out = run.bond_update(x, sys.graph, 4);
    CHECK(run.tape().value(out).data[0] == 1.0);
    CHECK(run.tape().value(out).data[1] == 2.0);
  }
  SUBCASE("L = 0 is the identity") {
    params.bond_embedding = Tensor64({ 1, 1 }, { 0.7 });
    ModelRun<double> run(params, false);
    auto x = run.embed_block(sys.graph);
    auto out = run.bond_update(x, sys.graph, 0);
    CHECK(out == x);
  }
  SUBCASE("bondless atoms pass through unchanged") {
    Molecule lone;
    lone.id = "lone";
    lone.atoms = { { "C", { 0, 0, 0 }, 0 } };
    TypedGraph g;
    g.molecule = &lone;
    g.atom_types = { "A.sp3.0" };
    g.adjacency = { {} };
    g.dist2 = { {} };
    ModelRun<double> run(params, false);
    auto x = run.embed_block(g);
    auto out = run.bond_update(x, g, 3);
    CHECK(run.tape().value(out).data[0] == 1.0);
  }
}

TEST_CASE("rbf_filter worked examples") {
  Tensor64 mu({ 2 }, { 2.0, 3.0 });
  Tensor64 sigma({ 2 }, { 0.1, 0.2 });
  SUBCASE("unit response at the center") {
    auto w = rbf_filter(2.0, mu, sigma);
    CHECK(w[0] == doctest::Approx(1.0));
  }
  SUBCASE("exp(-1) one normalized width away") {
    // |d - mu| = 2 sigma -> exp(-1)
    auto w = rbf_filter(2.2, mu, sigma);
    CHECK(w[0] == doctest::Approx(std::exp(-1.0)).epsilon(1e-9));
    auto w2 = rbf_filter(3.4, mu, sigma);
    CHECK(w2[1] == doctest::Approx(std::exp(-1.0)).epsilon(1e-9));
  }
  SUBCASE("symmetric about the center") {
    for (double delta : { 0.05, 0.13, 0.4 }) {
      auto plus = rbf_filter(2.0 + delta, mu, sigma);
      auto minus = rbf_filter(2.0 - delta, mu, sigma);
      CHECK(plus[0] == doctest::Approx(minus[0]).epsilon(1e-12));
    }
  }
}

TEST_CASE("interaction worked examples") {
  SUBCASE("single point at the filter center with unit S recovers x") {
    auto params = tiny_params<double>(2, 1, 1);
    params.type_embedding = Tensor64({ 2, 2 }, { 0.3, -0.7, 0.9, 0.4 });
    params.rbf_mu[0] = Tensor64({ 2 }, { 1.5, 1.5 });
    params.env_bias = Tensor64({ 2 }, { 1.0, 1.0 });  // S = ones
    auto sys = tiny_system();
    // One surface point 1.5 A from atom 0... and also pick atom 1 at the
    // same distance so both rows are exact.
    SurfacePoints pts = points_at({ { -1.5, 0, 0 } });
    // atom 0 at origin: d = 1.5 = mu -> w = 1; atom 1 at (1.5,0,0): d = 3.
    ModelRun<double> run(params, false);
    auto x = run.embed_block(sys.graph);
    auto s_rows = run.environment_rows("env", pts.count());
    auto inter = run.interaction(x, s_rows, distance_matrix<double>(sys.mol, pts));
    const Tensor64 &f = run.tape().value(inter.fields[0]);
    CHECK(f.at(0, 0) == doctest::Approx(1.0));
    CHECK(f.at(0, 1) == doctest::Approx(1.0));
    const Tensor64 &v = run.tape().value(inter.potentials);
    CHECK(v.at(0, 0) == doctest::Approx(0.3));  // V = x o f
    CHECK(v.at(0, 1) == doctest::Approx(-0.7));
  }
  SUBCASE("zero S zeroes every potential") {
    auto params = tiny_params<double>(2, 2, 1);
    params.type_embedding = Tensor64({ 2, 2 }, { 0.3, -0.7, 0.9, 0.4 });
    auto sys = tiny_system();
    SurfacePoints pts = points_at({ { -1.0, 0.4, 0 }, { 2.0, -0.3, 0.8 } });
    ModelRun<double> run(params, false);
    auto x = run.embed_block(sys.graph);
    auto s_rows = run.environment_rows("env", pts.count());
    auto inter = run.interaction(x, s_rows, distance_matrix<double>(sys.mol, pts));
    for (double v : run.tape().value(inter.potentials).data)
      CHECK(v == 0.0);
  }
  SUBCASE("two points accumulate the hand formula") {
    auto params = tiny_params<double>(1, 1, 1);
    params.type_embedding = Tensor64({ 2, 1 }, { 1.0, 1.0 });
    params.rbf_mu[0] = Tensor64({ 1 }, { 2.0 });
    params.rbf_sigma[0] = Tensor64({ 1 }, { 0.5 });
    params.env_bias = Tensor64({ 1 }, { 1.0 });
    Molecule lone;
    lone.id = "lone";
    lone.atoms = { { "C", { 0, 0, 0 }, 0 } };
    TypedGraph g;
    g.molecule = &lone;
    g.atom_types = { "A.sp3.0" };
    g.adjacency = { {} };
    g.dist2 = { {} };
    SurfacePoints pts = points_at({ { 1.7, 0, 0 }, { 0, -2.6, 0 } });
    ModelRun<double> run(params, false);
    auto x = run.embed_block(g);
    auto s_rows = run.environment_rows("env", pts.count());
    auto inter = run.interaction(x, s_rows, distance_matrix<double>(lone, pts));
    auto w = [](double d, double mu, double sig) {
      double z = (d - mu) / (2 * sig);
      return std::exp(-z * z);
    };
    CHECK(run.tape().value(inter.fields[0]).data[0]
          == doctest::Approx(w(1.7, 2.0, 0.5) + w(2.6, 2.0, 0.5)).epsilon(1e-12));
  }
  SUBCASE("empty surface is an error") {
    auto params = tiny_params<double>(1, 1, 1);
    auto sys = tiny_system();
    auto dist = std::make_shared<Tensor64>(Tensor64::zeros({ 2, 0 }));
    ModelRun<double> run(params, false);
    auto x = run.embed_block(sys.graph);
    auto s_rows = run.environment_rows("env", 0);
    CHECK_THROWS_AS(run.interaction(x, s_rows, dist), DataError);
  }
}

TEST_CASE("predict: constant-contribution cases and the omega rule") {
  auto params = tiny_params<double>(2, 1, 2);
  params.type_embedding = Tensor64({ 2, 2 }, { 0.3, -0.7, 0.9, 0.4 });
  params.pred_b2 = Tensor64({ 1 }, { 0.75 });  // predictor == 0.75 per atom
  params.environments.push_back(
      { "oct-water", Task::kLogp, true, Tensor64::zeros({ 5 }) });
  auto sys = tiny_system();
  SurfacePoints pts = points_at({ { -1.0, 0.4, 0 }, { 2.0, -0.3, 0.8 } });

  ModelRun<double> run(params, false);
  auto pred = run.forward(sys.graph, pts, "env");
  CHECK(run.tape().value(pred.property).data[0] == doctest::Approx(1.5));

  ModelRun<double> run_log(params, false);
  auto pred_log = run_log.forward(sys.graph, pts, "oct-water");
  CHECK(run_log.tape().value(pred_log.property).data[0]
        == doctest::Approx(1.5 / 1.364247).epsilon(1e-5));
}

TEST_CASE("predict: zero weights except predictor biases") {
  auto params = tiny_params<double>(2, 1, 3);
  params.pred_b1 = Tensor64({ 3 }, { 0.2, -0.3, 0.5 });
  params.pred_w2 = Tensor64({ 3, 1 }, { 1.0, 2.0, -1.0 });
  params.pred_b2 = Tensor64({ 1 }, { 0.1 });
  auto sys = tiny_system();
  SurfacePoints pts = points_at({ { -1.0, 0.4, 0 } });
  // V = 0 everywhere (type embeddings zero), so per atom:
  // p = sum_h w2[h] * ssp(b1[h]) + b2
  double per_atom = 1.0 * shifted_softplus_value(0.2)
                    + 2.0 * shifted_softplus_value(-0.3)
                    - 1.0 * shifted_softplus_value(0.5) + 0.1;
  ModelRun<double> run(params, false);
  auto pred = run.forward(sys.graph, pts, "env");
  CHECK(run.tape().value(pred.property).data[0]
        == doctest::Approx(2 * per_atom).epsilon(1e-12));
}

TEST_CASE("logp_from_solvation worked examples") {
  CHECK(logp_from_solvation(-4.2, -4.2) == 0.0);
  CHECK(logp_from_solvation(-5.0, -3.0, 298.15)
        == doctest::Approx(-1.4660).epsilon(1e-3));
  double once = logp_from_solvation(-5.0, -3.0);
  double twice = logp_from_solvation(-7.0, -3.0);
  CHECK(twice == doctest::Approx(2 * once).epsilon(1e-12));
}

TEST_CASE("omega: 1 for solvation, 1/(RT ln10) for both log-unit tasks") {
  CHECK(task_omega(Task::kSolvation, 298.15) == 1.0);
  CHECK(task_omega(Task::kLogp, 298.15)
        == doctest::Approx(1.0 / 1.364247).epsilon(1e-5));
  CHECK(task_omega(Task::kPampa, 298.15) == task_omega(Task::kLogp, 298.15));
  CHECK(task_omega(Task::kLogp, 310.0) < task_omega(Task::kLogp, 298.15));
}

TEST_CASE("additivity: P equals omega times the ordered contribution sum") {
  auto params = corpus_params(3);
  auto mols = parse_sdf(read_file(data_dir() + "/test_molecules.sdf"));
  for (const char *system : { "water", "logp_ow" }) {
    for (size_t k = 0; k < 6; ++k) {
      auto result = predict_property(params, mols[k], elements(), system);
      float sum = 0.0f;
      for (float p : result.contributions)
        sum += p;
      const float omega = static_cast<float>(task_omega(
          params.environment(system).task, params.hyper.temperature));
      float expected = sum * omega;
      CHECK(std::memcmp(&expected, &result.property, sizeof(float)) == 0);
    }
  }
}

TEST_CASE("environment decoupling: equal Q means identical P") {
  auto params = corpus_params(5);
  EnvEntry<float> clone = params.environment("water");
  clone.system_id = "water-clone";
  clone.trainable = true;
  params.environments.push_back(clone);
  auto mols = parse_sdf(read_file(data_dir() + "/test_molecules.sdf"));
  for (size_t k = 0; k < 4; ++k) {
    auto a = predict_property(params, mols[k], elements(), "water");
    auto b = predict_property(params, mols[k], elements(), "water-clone");
    CHECK(a.property == b.property);
  }
}

TEST_CASE("RBF parameters initialize evenly spaced with sigma 0.1") {
  auto params = corpus_params(9);
  const int f_dim = params.hyper.feature_dim;
  for (const auto &mu : params.rbf_mu) {
    CHECK(mu.data.front() == 0.0f);
    CHECK(mu.data.back() == doctest::Approx(8.0));
    for (int f = 1; f < f_dim; ++f)
      CHECK(mu.data[size_t(f)] - mu.data[size_t(f - 1)]
            == doctest::Approx(8.0 / (f_dim - 1)).epsilon(1e-5));
  }
  for (const auto &sigma : params.rbf_sigma)
    for (float v : sigma.data)
      CHECK(v == doctest::Approx(0.1f));
}

TEST_CASE("sigma clamp enforces the floor") {
  auto params = corpus_params(9);
  params.rbf_sigma[0].data[3] = 1e-9f;
  params.clamp_sigmas();
  CHECK(params.rbf_sigma[0].data[3] == doctest::Approx(1e-4f));
}

TEST_CASE("init validates the feature dimension against the table") {
  auto mols = parse_sdf(kMethaneSdf);
  auto g = perceive(mols[0]);
  Vocabulary atom_vocab, bond_vocab;
  for (const auto &c : g.atom_types)
    atom_vocab.add(c);
  for (const auto &c : g.bond_types)
    bond_vocab.add(c);
  atom_vocab.finalize();
  bond_vocab.finalize();
  EmbeddingTable table = table_for(atom_vocab, 8, 1);
  Hyperparams hyper;
  hyper.feature_dim = 16;  // mismatch
  CHECK_THROWS_AS(
      init_params<float>(hyper, table, bond_vocab, {}, 0, 1), UsageError);
}

TEST_CASE("checkpoint round trip is byte-identical and validated") {
  auto params = corpus_params(11);
  std::string once = serialize_checkpoint(params);
  NetParams<float> loaded = deserialize_checkpoint(once);
  CHECK(serialize_checkpoint(loaded) == once);
  CHECK(loaded.atom_vocab == params.atom_vocab);
  CHECK(loaded.bond_embedding.data == params.bond_embedding.data);
  CHECK(loaded.environments.size() == params.environments.size());

  SUBCASE("edited feature_dim is a dimension mismatch") {
    std::string tampered = once;
    tampered.replace(tampered.find("feature_dim 16"), 14, "feature_dim 24");
    try {
      deserialize_checkpoint(tampered);
      FAIL("expected mismatch error");
    } catch (const DataError &e) {
      CHECK(std::string(e.what()).find("mismatch") != std::string::npos);
    }
  }
  SUBCASE("edited n_interactions is a dimension mismatch") {
    std::string tampered = once;
    tampered.replace(tampered.find("n_interactions 2"), 16, "n_interactions 3");
    CHECK_THROWS_AS(deserialize_checkpoint(tampered), DataError);
  }
  SUBCASE("missing radii checksum is refused explicitly") {
    std::string tampered = once;
    size_t pos = tampered.find("radii_checksum");
    size_t end = tampered.find('\n', pos);
    tampered.erase(pos, end - pos + 1);
    try {
      deserialize_checkpoint(tampered);
      FAIL("expected refusal");
    } catch (const DataError &e) {
      CHECK(std::string(e.what()).find("radii_checksum") != std::string::npos);
    }
  }
  SUBCASE("truncated blob is rejected") {
    CHECK_THROWS_AS(deserialize_checkpoint(once.substr(0, once.size() - 10)),
                    DataError);
  }
  SUBCASE("radii validation matches table checksums") {
    CHECK_NOTHROW(validate_radii(params, elements()));
    std::string other_tsv = read_file(data_dir() + "/bondi_radii.tsv");
    other_tsv.replace(other_tsv.find("1.70"), 4, "1.71");
    ElementTable other = ElementTable::from_tsv(other_tsv, 12345);
    CHECK_THROWS_AS(validate_radii(params, other), DataError);
  }
}

TEST_CASE("rigid motions leave predictions unchanged (32-bit smoke)") {
  auto params = corpus_params(13);
  auto mols = parse_sdf(read_file(data_dir() + "/test_molecules.sdf"));
  Rng rng(31);
  for (size_t k = 0; k < 3; ++k) {
    auto base = predict_property(params, mols[k], elements(), "water");
    for (int trial = 0; trial < 3; ++trial) {
      Molecule moved = transform_molecule(mols[k], random_rigid_motion(rng));
      auto result = predict_property(params, moved, elements(), "water");
      CHECK(std::abs(static_cast<double>(result.property)
                     - static_cast<double>(base.property)) < 1e-4);
    }
  }
}

TEST_CASE("atom reindexing permutes contributions (64-bit smoke)") {
  auto params = corpus_params(17).cast<double>();
  auto mols = parse_sdf(read_file(data_dir() + "/test_molecules.sdf"));
  Rng rng(37);
  const Molecule &mol = mols[7];
  auto base = predict_property(params, mol, elements(), "water");
  for (int trial = 0; trial < 3; ++trial) {
    auto perm = random_permutation(mol.atom_count(), rng);
    Molecule shuffled = permute_molecule(mol, perm);
    auto moved = predict_property(params, shuffled, elements(), "water");
    CHECK(std::abs(moved.property - base.property) < 1e-9);
    for (int a = 0; a < mol.atom_count(); ++a)
      CHECK(std::abs(moved.contributions[size_t(perm[size_t(a)])]
                     - base.contributions[size_t(a)]) < 1e-9);
  }
}

TEST_CASE("full model gradient fidelity (compact fixture)") {
  auto report = full_model_grad_check(2024);
  CHECK(report.max_rel_err < 1e-4);
}
