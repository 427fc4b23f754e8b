//
// Project c3net - Copyright 2026 c3net developers.
// SPDX-License-Identifier: Apache-2.0
//
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <set>

#include "c3net/checkpoint.hpp"
#include "c3net/dataset.hpp"
#include "c3net/errors.hpp"
#include "c3net/metrics.hpp"
#include "c3net/net.hpp"
#include "c3net/sdf.hpp"
#include "c3net/skipgram.hpp"
#include "c3net/strings.hpp"
#include "c3net/train_loop.hpp"
#include "support/fixtures.hpp"

using namespace c3net;
using namespace c3net::testing;

namespace {

const ElementTable &elements() {
  static ElementTable table = ElementTable::load(data_dir() + "/bondi_radii.tsv");
  return table;
}

const SolventTable &solvents() {
  static SolventTable table = SolventTable::load(data_dir() + "/solvents.tsv");
  return table;
}

const std::vector<Record> &toy_records() {
  static std::vector<Record> records =
      load_manifest(data_dir() + "/toy/manifest.csv", "", solvents());
  return records;
}

/// Compact trained-from-scratch-ready params over the toy molecules.
NetParams<float> toy_params(uint64_t seed) {
  Vocabulary atom_vocab, bond_vocab;
  for (const auto &record : toy_records())
    for (const auto &mol : record.conformers) {
      auto g = perceive(mol);
      for (const auto &c : g.atom_types)
        atom_vocab.add(c);
      for (const auto &c : g.bond_types)
        bond_vocab.add(c);
    }
  atom_vocab.finalize();
  bond_vocab.finalize();

  EmbeddingTable table;
  table.vocabulary = atom_vocab;
  table.dim = 8;
  table.center = Tensor64::zeros({ atom_vocab.size(), 8 });
  table.context = Tensor64::zeros({ atom_vocab.size(), 8 });
  Rng rng(seed);
  for (auto &v : table.center.data)
    v = rng.uniform(-0.03, 0.03);

  Hyperparams hyper;
  hyper.feature_dim = 8;
  hyper.n_interactions = 2;
  hyper.bond_iterations = 1;
  hyper.hidden_dim = 4;
  hyper.points_per_atom = 8;
  return init_params<float>(hyper, table, bond_vocab, solvents().specs,
                            elements().checksum(), seed);
}

std::string scratch_dir() {
  auto dir = std::filesystem::temp_directory_path() / "c3net_train_tests";
  std::filesystem::create_directories(dir);
  return dir.string();
}

}  // namespace

TEST_CASE("solvent table resolves composite Q from the water/octanol difference") {
  const EnvironmentSpec &water = solvents().find("water");
  const EnvironmentSpec &octanol = solvents().find("1-octanol");
  const EnvironmentSpec &logp = solvents().find("logp_ow");
  CHECK(logp.trainable);
  CHECK(logp.task == Task::kLogp);
  for (size_t k = 0; k < 5; ++k)
    CHECK(logp.q[k] == doctest::Approx(water.q[k] - octanol.q[k]));
  const EnvironmentSpec &pampa = solvents().find("pampa");
  CHECK(pampa.trainable);
  CHECK(pampa.task == Task::kPampa);
  CHECK(pampa.q[0] == doctest::Approx(water.q[0] - octanol.q[0]));
  CHECK_THROWS_AS(solvents().find("no-such-solvent"), DataError);
}

TEST_CASE("manifest grouping: rows sharing record_id become conformers") {
  const auto &records = toy_records();
  CHECK(records.size() == 20);
  int multi = 0;
  for (const auto &record : records) {
    CHECK(record.conformers.size() >= 1);
    CHECK(record.conformers.size() <= 5);
    if (record.record_id == "tr-ethanol")
      CHECK(record.conformers.size() == 3);
    multi += record.conformers.size() > 1;
    for (const auto &mol : record.conformers)
      CHECK(mol.conformer_group == record.record_id);
  }
  CHECK(multi >= 5);
}

TEST_CASE("manifest validation errors carry row numbers") {
  std::string dir = scratch_dir();
  std::string sdf_path = dir + "/conf.sdf";
  write_file(sdf_path, kMethaneSdf);

  SUBCASE("more than five conformers") {
    std::string manifest = "record_id,system_id,task,target,sdf_path\n";
    for (int k = 0; k < 6; ++k)
      manifest += "r1,water,solvation,1.0," + sdf_path + "\n";
    std::string path = dir + "/m1.csv";
    write_file(path, manifest);
    try {
      load_manifest(path, "", solvents());
      FAIL("expected max-conformer error");
    } catch (const DataError &e) {
      CHECK(std::string(e.what()).find("row 7") != std::string::npos);
      CHECK(std::string(e.what()).find("maximum") != std::string::npos);
    }
  }
  SUBCASE("unknown system id") {
    std::string path = dir + "/m2.csv";
    write_file(path, "record_id,system_id,task,target,sdf_path\n"
                     "r1,vacuum,solvation,1.0," + sdf_path + "\n");
    CHECK_THROWS_AS(load_manifest(path, "", solvents()), DataError);
  }
  SUBCASE("missing sdf file") {
    std::string path = dir + "/m3.csv";
    write_file(path, "record_id,system_id,task,target,sdf_path\n"
                     "r1,water,solvation,1.0,/nonexistent/x.sdf\n");
    try {
      load_manifest(path, "", solvents());
      FAIL("expected missing-file error");
    } catch (const DataError &e) {
      CHECK(std::string(e.what()).find("row 2") != std::string::npos);
    }
  }
  SUBCASE("conformers disagreeing on targets") {
    std::string path = dir + "/m4.csv";
    write_file(path, "record_id,system_id,task,target,sdf_path\n"
                     "r1,water,solvation,1.0," + sdf_path + "\n"
                     "r1,water,solvation,2.0," + sdf_path + "\n");
    CHECK_THROWS_AS(load_manifest(path, "", solvents()), DataError);
  }
  SUBCASE("conformers with different structures") {
    std::string other = dir + "/other.sdf";
    write_file(other, kEtheneSdf);
    std::string path = dir + "/m5.csv";
    write_file(path, "record_id,system_id,task,target,sdf_path\n"
                     "r1,water,solvation,1.0," + sdf_path + "\n"
                     "r1,water,solvation,1.0," + other + "\n");
    CHECK_THROWS_AS(load_manifest(path, "", solvents()), DataError);
  }
  SUBCASE("task not matching the system") {
    std::string path = dir + "/m6.csv";
    write_file(path, "record_id,system_id,task,target,sdf_path\n"
                     "r1,water,logp,1.0," + sdf_path + "\n");
    CHECK_THROWS_AS(load_manifest(path, "", solvents()), DataError);
  }
}

TEST_CASE("split: 80/20 at record granularity, deterministic, partitioning") {
  const auto &records = toy_records();
  Split split = split_dataset(records, 7);
  CHECK(split.train_ids.size() == 16);
  CHECK(split.valid_ids.size() == 4);

  Split again = split_dataset(records, 7);
  CHECK(split.train_ids == again.train_ids);
  CHECK(split.valid_ids == again.valid_ids);

  std::set<std::string> all(split.train_ids.begin(), split.train_ids.end());
  all.insert(split.valid_ids.begin(), split.valid_ids.end());
  CHECK(all.size() == records.size());
  for (const auto &record : records)
    CHECK(all.count(record.record_id) == 1);

  std::vector<Record> four(records.begin(), records.begin() + 4);
  CHECK_THROWS_AS(split_dataset(four, 7), DataError);
}

TEST_CASE("train_loop: lr 0 leaves parameters and loss untouched") {
  auto params = toy_params(21);
  std::string before = serialize_checkpoint(params);
  TrainOptions options;
  options.epochs = 3;
  options.lr = 0;
  options.seed = 5;
  auto result = train_loop(params, elements(), toy_records(), options);
  CHECK(serialize_checkpoint(params) == before);
  REQUIRE(result.epoch_mean_mse.size() == 3);
  CHECK(result.epoch_mean_mse[0] == result.epoch_mean_mse[1]);
  CHECK(result.epoch_mean_mse[1] == result.epoch_mean_mse[2]);
}

TEST_CASE("train_loop: loss trace and parameters are bit-reproducible") {
  TrainOptions options;
  options.epochs = 4;
  options.lr = 1e-4;
  options.seed = 99;
  auto params_a = toy_params(33);
  auto trace_a = train_loop(params_a, elements(), toy_records(), options);
  auto params_b = toy_params(33);
  auto trace_b = train_loop(params_b, elements(), toy_records(), options);
  CHECK(trace_a.epoch_mean_mse == trace_b.epoch_mean_mse);
  CHECK(serialize_checkpoint(params_a) == serialize_checkpoint(params_b));
}

TEST_CASE("train_loop: loss decreases on the toy set") {
  auto params = toy_params(33);
  TrainOptions options;
  options.epochs = 25;
  options.lr = 1e-3;
  options.seed = 12;
  auto result = train_loop(params, elements(), toy_records(), options);
  CHECK(result.epoch_mean_mse.back() < result.epoch_mean_mse.front());
}

TEST_CASE("multitask batches share one parameter set across tasks") {
  auto params = toy_params(41);
  ModelRun<float> solvation_run(params, true);
  ModelRun<float> logp_run(params, true);
  auto solvation_bindings = solvation_run.gradient_bindings();
  auto logp_bindings = logp_run.gradient_bindings();
  REQUIRE(solvation_bindings.size() == logp_bindings.size());
  for (size_t k = 0; k < solvation_bindings.size(); ++k) {
    CHECK(solvation_bindings[k].name == logp_bindings[k].name);
    CHECK(solvation_bindings[k].value == logp_bindings[k].value);  // same buffer
  }
  // And those buffers are the model's own storage.
  bool saw_w1 = false;
  for (const auto &binding : solvation_bindings)
    if (binding.name == "pred_w1") {
      CHECK(binding.value == &params.pred_w1);
      saw_w1 = true;
    }
  CHECK(saw_w1);
}

TEST_CASE("type embeddings stay frozen unless fine-tuning is requested") {
  TrainOptions options;
  options.epochs = 3;
  options.lr = 1e-3;
  options.seed = 17;

  auto frozen = toy_params(47);
  Tensor32 before = frozen.type_embedding;
  train_loop(frozen, elements(), toy_records(), options);
  CHECK(frozen.type_embedding.data == before.data);

  auto tuned = toy_params(47);
  tuned.hyper.finetune_embeddings = true;
  train_loop(tuned, elements(), toy_records(), options);
  CHECK(tuned.type_embedding.data != before.data);
}

TEST_CASE("q_only training moves Q vectors and nothing else") {
  auto params = toy_params(55);
  Tensor32 w1_before = params.pred_w1;
  Tensor32 q_before = params.environment("logp_ow").q;
  TrainOptions options;
  options.epochs = 4;
  options.lr = 1e-2;
  options.seed = 3;
  options.q_only = true;
  train_loop(params, elements(), toy_records(), options);
  CHECK(params.pred_w1.data == w1_before.data);
  CHECK(params.environment("logp_ow").q.data != q_before.data);
}

TEST_CASE("balanced sampling covers every point each epoch") {
  auto params = toy_params(61);
  TrainOptions options;
  options.epochs = 2;
  options.lr = 1e-4;
  options.seed = 8;
  options.balanced_sampling = true;
  auto result = train_loop(params, elements(), toy_records(), options);
  CHECK(result.epoch_mean_mse.size() == 2);
  for (double v : result.epoch_mean_mse)
    CHECK(std::isfinite(v));
}

TEST_CASE("non-finite loss aborts with the offending records") {
  auto params = toy_params(71);
  params.pred_b2.data[0] = 3e38f;  // squaring the residual overflows float
  TrainOptions options;
  options.epochs = 1;
  options.lr = 1e-4;
  options.seed = 3;
  try {
    train_loop(params, elements(), toy_records(), options);
    FAIL("expected NumericError");
  } catch (const NumericError &e) {
    CHECK(std::string(e.what()).find("tr-") != std::string::npos);
  }
}

TEST_CASE("evaluate: conformer means and metric math") {
  auto params = toy_params(81);
  const auto &records = toy_records();

  std::vector<double> per_record;
  Metrics metrics = evaluate(params, elements(), records, &per_record);
  REQUIRE(per_record.size() == records.size());
  CHECK(metrics.overall.n == static_cast<int>(records.size()));

  // The reported per-record prediction is the arithmetic conformer mean.
  for (size_t r = 0; r < records.size(); ++r) {
    double sum = 0;
    for (const auto &mol : records[r].conformers)
      sum += static_cast<double>(
          predict_property(params, mol, elements(), records[r].system_id)
              .property);
    CHECK(per_record[r]
          == doctest::Approx(sum / records[r].conformers.size()).epsilon(1e-12));
  }

  // Groups appear per system plus one overall row in the CSV.
  std::string csv = metrics_csv(metrics);
  CHECK(csv.find("system_id,task,n,mae,r2\n") == 0);
  CHECK(csv.find("water,solvation,10,") != std::string::npos);
  CHECK(csv.find("logp_ow,logp,10,") != std::string::npos);
  CHECK(csv.find("overall,all,20,") != std::string::npos);
}

TEST_CASE("metric formulas on hand data") {
  SUBCASE("perfect predictions") {
    auto g = compute_group("s", "solvation",
                           { { 1.0, 1.0 }, { -2.0, -2.0 }, { 0.5, 0.5 } });
    CHECK(g.mae == 0.0);
    CHECK(g.r2 == 1.0);
  }
  SUBCASE("predicting the mean gives R2 of zero") {
    auto g = compute_group("s", "solvation",
                           { { 2.0, 1.0 }, { 2.0, 2.0 }, { 2.0, 3.0 } });
    CHECK(g.r2 == doctest::Approx(0.0));
    CHECK(g.mae == doctest::Approx(2.0 / 3));
  }
  SUBCASE("empty input is an error") {
    CHECK_THROWS_AS(compute_group("s", "solvation", {}), DataError);
  }
  SUBCASE("zero-variance targets") {
    CHECK(compute_group("s", "x", { { 1.0, 1.0 }, { 1.0, 1.0 } }).r2 == 1.0);
    CHECK(compute_group("s", "x", { { 2.0, 1.0 }, { 1.0, 1.0 } }).r2
          < -1e100);
  }
}

TEST_CASE("conformer averaging beats the worst conformer on straddled targets") {
  auto params = toy_params(91);
  const Record *multi = nullptr;
  for (const auto &record : toy_records())
    if (record.conformers.size() == 2)
      multi = &record;
  REQUIRE(multi != nullptr);

  double p0 = predict_property(params, multi->conformers[0], elements(),
                               multi->system_id).property;
  double p1 = predict_property(params, multi->conformers[1], elements(),
                               multi->system_id).property;
  Record probe = *multi;
  probe.target = 0.5 * (p0 + p1);  // conformers straddle the target

  Metrics metrics = evaluate(params, elements(), { probe });
  double record_error = metrics.overall.mae;
  double worst = std::max(std::abs(p0 - probe.target),
                          std::abs(p1 - probe.target));
  if (p0 != p1)
    CHECK(record_error < worst);
  CHECK(record_error < 1e-6);
}

TEST_CASE("evaluate rejects an empty record set") {
  auto params = toy_params(95);
  CHECK_THROWS_AS(evaluate(params, elements(), {}), DataError);
}
