//
// Project c3net - Copyright 2026 c3net developers.
// SPDX-License-Identifier: Apache-2.0
//
// Command-line entry point: the subcommands wire the parsing, typing,
// surface, embedding, model and training pieces into batch workflows.
// Exit codes: 0 success, 1 usage error, 2 data/validation error,
// 3 numerical failure.

#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "c3net/checkpoint.hpp"
#include "c3net/checksum.hpp"
#include "c3net/dataset.hpp"
#include "c3net/decomposition.hpp"
#include "c3net/element_table.hpp"
#include "c3net/errors.hpp"
#include "c3net/metrics.hpp"
#include "c3net/model_check.hpp"
#include "c3net/net.hpp"
#include "c3net/sas.hpp"
#include "c3net/sdf.hpp"
#include "c3net/skipgram.hpp"
#include "c3net/strings.hpp"
#include "c3net/train_loop.hpp"

namespace {

using namespace c3net;

std::string default_data_dir() {
  if (const char *env = std::getenv("C3NET_DATA_DIR"); env && *env)
    return env;
  return C3NET_DEFAULT_DATA_DIR;
}

std::string default_radii_path() {
  return default_data_dir() + "/bondi_radii.tsv";
}

void emit(const std::string &path, const std::string &content) {
  if (path.empty() || path == "-")
    std::cout << content;
  else
    write_file(path, content);
}

struct Type2vecArgs {
  std::string corpus, out;
  SkipgramOptions options;
};

int run_type2vec_train(const Type2vecArgs &args) {
  const std::string corpus_text = read_file(args.corpus);
  const std::vector<Molecule> molecules = parse_sdf(corpus_text);

  Vocabulary vocab;
  std::vector<TypedGraph> graphs;
  graphs.reserve(molecules.size());
  for (const auto &mol : molecules) {
    graphs.push_back(perceive(mol));
    for (const auto &warning : graphs.back().warnings)
      std::cerr << "warning: " << warning << "\n";
    for (const auto &code : graphs.back().atom_types)
      vocab.add(code);
  }
  vocab.finalize();

  std::vector<std::pair<int, int>> pairs;
  for (const auto &graph : graphs)
    for (const auto &ctx : contexts(graph))
      pairs.push_back({ vocab.id(graph.atom_types[static_cast<size_t>(ctx.center)]),
                        vocab.id(graph.atom_types[static_cast<size_t>(ctx.context)]) });

  SkipgramOptions options = args.options;
  options.corpus_checksum = checksum_bytes(corpus_text);
  SkipgramResult result = train_skipgram(vocab, pairs, options);
  result.table.save(args.out);

  std::cerr << "type2vec: " << molecules.size() << " molecules, " << vocab.size()
            << " types, " << pairs.size() << " pairs; epoch loss "
            << (result.epoch_mean_loss.empty() ? 0.0
                                               : result.epoch_mean_loss.front())
            << " -> "
            << (result.epoch_mean_loss.empty() ? 0.0
                                               : result.epoch_mean_loss.back())
            << "\n";
  return 0;
}

struct TrainArgs {
  std::string manifest, sdf_root, solvents, type2vec, out, loss_out, radii;
  Hyperparams hyper;
  TrainOptions options;
  bool train_all = false;
  bool train_solvent_q = false;
};

int run_train(const TrainArgs &args) {
  args.hyper.validate();
  args.options.validate();

  const ElementTable elements = ElementTable::load(args.radii);
  SolventTable solvents = SolventTable::load(args.solvents);
  if (args.train_solvent_q)
    for (auto &spec : solvents.specs)
      spec.trainable = true;

  const EmbeddingTable table = EmbeddingTable::load(args.type2vec);
  std::vector<Record> records = load_manifest(args.manifest, args.sdf_root,
                                              solvents);

  std::vector<Record> train_records;
  std::vector<Record> valid_records;
  if (args.train_all) {
    train_records = records;
  } else {
    Split split = split_dataset(records, args.options.seed);
    train_records = select_records(records, split.train_ids);
    valid_records = select_records(records, split.valid_ids);
  }

  // Bond vocabulary is data-driven; atom types must already be covered by
  // the pretrained Type2Vec table.
  Vocabulary bond_vocab;
  for (const auto &record : records)
    for (const auto &conformer : record.conformers) {
      TypedGraph graph = perceive(conformer);
      for (const auto &warning : graph.warnings)
        std::cerr << "warning: " << warning << "\n";
      for (const auto &code : graph.atom_types)
        if (!table.vocabulary.contains(code))
          throw DataError("atom type '" + code + "' in record '"
                          + record.record_id
                          + "' is not covered by the Type2Vec table");
      for (const auto &code : graph.bond_types)
        bond_vocab.add(code);
    }
  bond_vocab.finalize();

  NetParams<float> params = init_params<float>(
      args.hyper, table, bond_vocab, solvents.specs, elements.checksum(),
      args.options.seed);

  TrainResult result = train_loop(params, elements, train_records, args.options);
  save_checkpoint(params, args.out);

  if (!args.loss_out.empty()) {
    std::string csv = "epoch,mean_mse\n";
    for (size_t e = 0; e < result.epoch_mean_mse.size(); ++e)
      csv += std::to_string(e) + "," + format_double(result.epoch_mean_mse[e])
             + "\n";
    write_file(args.loss_out, csv);
  }

  std::cerr << "train: " << train_records.size() << " records";
  if (!result.epoch_mean_mse.empty())
    std::cerr << ", final train MSE " << result.epoch_mean_mse.back();
  std::cerr << "\n";
  if (!valid_records.empty()) {
    Metrics metrics = evaluate(params, elements, valid_records);
    std::cerr << "valid: n=" << metrics.overall.n << " MAE="
              << metrics.overall.mae << " R2=" << metrics.overall.r2 << "\n";
  }
  return 0;
}

struct PredictArgs {
  std::string checkpoint, sdf, system, out, radii;
};

int run_predict(const PredictArgs &args) {
  NetParams<float> params = load_checkpoint(args.checkpoint);
  const ElementTable elements = ElementTable::load(args.radii);
  validate_radii(params, elements);
  const EnvEntry<float> &env = params.environment(args.system);

  std::string csv = "record_id,system_id,task,prediction\n";
  for (const auto &mol : parse_sdf(read_file(args.sdf))) {
    ForwardResult<float> result =
        predict_property(params, mol, elements, args.system);
    csv += mol.id + "," + args.system + ","
           + std::string(task_name(env.task)) + ","
           + format_float(result.property) + "\n";
  }
  emit(args.out, csv);
  return 0;
}

int run_decompose(const PredictArgs &args) {
  NetParams<float> params = load_checkpoint(args.checkpoint);
  const ElementTable elements = ElementTable::load(args.radii);
  validate_radii(params, elements);

  std::vector<Molecule> mols = parse_sdf(read_file(args.sdf));
  if (mols.size() != 1)
    throw DataError("decompose expects a single-record SDF, got "
                    + std::to_string(mols.size()) + " records");
  const Molecule &mol = mols.front();

  TypedGraph graph = perceive(mol);
  ForwardResult<float> result =
      predict_property(params, mol, elements, args.system);

  std::ostringstream csv;
  write_decomposition(mol, graph.atom_types, result.contributions, csv);
  emit(args.out, csv.str());
  std::cerr << "decompose: " << mol.id << " P = " << format_float(result.property)
            << " (" << task_name(params.environment(args.system).task) << ")\n";
  return 0;
}

struct EvalArgs {
  std::string checkpoint, manifest, sdf_root, solvents, out, subset, radii;
  uint64_t seed = 0;
};

int run_eval(const EvalArgs &args) {
  NetParams<float> params = load_checkpoint(args.checkpoint);
  const ElementTable elements = ElementTable::load(args.radii);
  validate_radii(params, elements);
  const SolventTable solvents = SolventTable::load(args.solvents);

  std::vector<Record> records = load_manifest(args.manifest, args.sdf_root,
                                              solvents);
  if (args.subset != "all") {
    Split split = split_dataset(records, args.seed);
    records = select_records(records, args.subset == "train" ? split.train_ids
                                                             : split.valid_ids);
  }
  Metrics metrics = evaluate(params, elements, records);
  emit(args.out, metrics_csv(metrics));
  return 0;
}

struct SurfaceArgs {
  std::string sdf, out, radii;
  double probe = 1.4;
  int points_per_atom = 64;
};

int run_surface(const SurfaceArgs &args) {
  const ElementTable elements = ElementTable::load(args.radii);
  std::vector<Molecule> mols = parse_sdf(read_file(args.sdf));
  if (mols.size() != 1)
    throw DataError("surface expects a single-record SDF, got "
                    + std::to_string(mols.size()) + " records");
  SurfacePoints points = sas_points(mols.front(), elements, args.probe,
                                    args.points_per_atom);
  emit(args.out, surface_dump(points));
  std::cerr << "surface: " << points.count() << " points, approx area "
            << points.approx_area << " A^2\n";
  return 0;
}

struct GradCheckArgs {
  uint64_t seed = 0;
  double step = 1e-5;
};

int run_grad_check(const GradCheckArgs &args) {
  GradCheckReport report = full_model_grad_check(args.seed, args.step);
  std::cout << "max relative error " << report.max_rel_err << " (parameter "
            << report.worst_param << ", coordinate " << report.worst_coord
            << ")\n";
  if (report.max_rel_err >= 1e-4) {
    std::cerr << "grad-check failed: " << report.max_rel_err << " >= 1e-4\n";
    return 3;
  }
  return 0;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{ "c3net: per-atom interaction potentials for physicochemical "
                "property prediction in continuum environments" };
  app.set_version_flag("--version",
                       std::string("c3net ") + C3NET_VERSION
                           + " (checkpoint format "
                           + std::to_string(kCheckpointFormatVersion) + ")");
  app.require_subcommand(1);

  Type2vecArgs t2v;
  auto *cmd_t2v = app.add_subcommand("type2vec-train",
                                     "Train atom-type embeddings on a corpus SDF");
  cmd_t2v->add_option("--corpus", t2v.corpus, "corpus SDF file")->required();
  cmd_t2v->add_option("--out", t2v.out, "output table file")->required();
  cmd_t2v->add_option("--dim", t2v.options.dim, "embedding dimension");
  cmd_t2v->add_option("--negatives", t2v.options.negatives, "negative samples");
  cmd_t2v->add_option("--epochs", t2v.options.epochs, "training epochs");
  cmd_t2v->add_option("--lr", t2v.options.lr, "initial learning rate");
  cmd_t2v->add_option("--subsample", t2v.options.subsample_threshold,
                      "frequent-type subsampling threshold (0 disables)");
  cmd_t2v->add_option("--seed", t2v.options.seed, "master seed");

  TrainArgs train;
  auto *cmd_train = app.add_subcommand("train", "Train the model on a manifest");
  cmd_train->add_option("--manifest", train.manifest, "dataset manifest CSV")
      ->required();
  cmd_train->add_option("--sdf-root", train.sdf_root,
                        "root for relative sdf paths (default: manifest dir)");
  cmd_train->add_option("--solvents", train.solvents, "solvent table TSV")
      ->required();
  cmd_train->add_option("--type2vec", train.type2vec, "pretrained embedding table")
      ->required();
  cmd_train->add_option("--out", train.out, "output checkpoint")->required();
  cmd_train->add_option("--loss-out", train.loss_out, "loss trace CSV");
  cmd_train->add_option("--radii", train.radii, "element table TSV")
      ->default_val(default_radii_path());
  cmd_train->add_option("--epochs", train.options.epochs, "training epochs");
  cmd_train->add_option("--batch", train.options.batch_size, "batch size");
  cmd_train->add_option("--lr", train.options.lr, "learning rate");
  cmd_train->add_option("--seed", train.options.seed, "master seed");
  cmd_train->add_flag("--balanced-sampling", train.options.balanced_sampling,
                      "interleave tasks instead of uniform shuffling");
  cmd_train->add_flag("--train-all", train.train_all,
                      "skip the 80/20 split and train on every record");
  cmd_train->add_flag("--train-solvent-q", train.train_solvent_q,
                      "unfreeze pure-solvent Q vectors");
  cmd_train->add_flag("--finetune-type2vec", train.hyper.finetune_embeddings,
                      "fine-tune the type embeddings");
  cmd_train->add_option("--features", train.hyper.feature_dim,
                        "feature dimension F (must match the Type2Vec table)");
  cmd_train->add_option("--interactions", train.hyper.n_interactions,
                        "parallel interaction networks K");
  cmd_train->add_option("--bond-iterations", train.hyper.bond_iterations,
                        "bond network iterations L");
  cmd_train->add_option("--hidden", train.hyper.hidden_dim,
                        "predictor hidden width");
  cmd_train->add_option("--probe", train.hyper.probe_radius,
                        "probe radius, angstrom");
  cmd_train->add_option("--points-per-atom", train.hyper.points_per_atom,
                        "surface points per atom");
  cmd_train->add_option("--temperature", train.hyper.temperature,
                        "system temperature, kelvin");
  cmd_train->add_option("--cutoff", train.hyper.cutoff,
                        "distance cutoff in angstrom (0 = none)");

  PredictArgs predict;
  auto *cmd_predict = app.add_subcommand("predict",
                                         "Predict properties for an SDF");
  cmd_predict->add_option("--checkpoint", predict.checkpoint, "model checkpoint")
      ->required();
  cmd_predict->add_option("--sdf", predict.sdf, "input SDF")->required();
  cmd_predict->add_option("--system", predict.system, "system_id")->required();
  cmd_predict->add_option("--out", predict.out, "output CSV (default stdout)");
  cmd_predict->add_option("--radii", predict.radii, "element table TSV")
      ->default_val(default_radii_path());

  PredictArgs decompose;
  auto *cmd_decompose = app.add_subcommand(
      "decompose", "Per-atom contribution breakdown for one molecule");
  cmd_decompose
      ->add_option("--checkpoint", decompose.checkpoint, "model checkpoint")
      ->required();
  cmd_decompose->add_option("--sdf", decompose.sdf, "single-record SDF")
      ->required();
  cmd_decompose->add_option("--system", decompose.system, "system_id")->required();
  cmd_decompose->add_option("--out", decompose.out, "output CSV (default stdout)");
  cmd_decompose->add_option("--radii", decompose.radii, "element table TSV")
      ->default_val(default_radii_path());

  EvalArgs eval;
  auto *cmd_eval = app.add_subcommand("eval",
                                      "Evaluate a checkpoint against a manifest");
  cmd_eval->add_option("--checkpoint", eval.checkpoint, "model checkpoint")
      ->required();
  cmd_eval->add_option("--manifest", eval.manifest, "dataset manifest CSV")
      ->required();
  cmd_eval->add_option("--sdf-root", eval.sdf_root,
                       "root for relative sdf paths (default: manifest dir)");
  cmd_eval->add_option("--solvents", eval.solvents, "solvent table TSV")
      ->required();
  cmd_eval->add_option("--out", eval.out, "metrics CSV (default stdout)");
  cmd_eval->add_option("--subset", eval.subset, "all, train or valid")
      ->default_val("all")
      ->check(CLI::IsMember({ "all", "train", "valid" }));
  cmd_eval->add_option("--seed", eval.seed, "split seed for train/valid subsets");
  cmd_eval->add_option("--radii", eval.radii, "element table TSV")
      ->default_val(default_radii_path());

  SurfaceArgs surface;
  auto *cmd_surface = app.add_subcommand("surface",
                                         "Dump SAS sample points for one molecule");
  cmd_surface->add_option("--sdf", surface.sdf, "single-record SDF")->required();
  cmd_surface->add_option("--probe", surface.probe, "probe radius, angstrom");
  cmd_surface->add_option("--points-per-atom", surface.points_per_atom,
                          "lattice points per atom");
  cmd_surface->add_option("--out", surface.out, "output file (default stdout)");
  cmd_surface->add_option("--radii", surface.radii, "element table TSV")
      ->default_val(default_radii_path());

  GradCheckArgs grad_check_args;
  auto *cmd_grad = app.add_subcommand(
      "grad-check", "Full-model finite-difference check on the bundled fixture");
  cmd_grad->add_option("--seed", grad_check_args.seed, "parameter init seed");
  cmd_grad->add_option("--step", grad_check_args.step,
                       "finite-difference step in [1e-6, 1e-4]");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (cmd_t2v->parsed())
      return run_type2vec_train(t2v);
    if (cmd_train->parsed())
      return run_train(train);
    if (cmd_predict->parsed())
      return run_predict(predict);
    if (cmd_decompose->parsed())
      return run_decompose(decompose);
    if (cmd_eval->parsed())
      return run_eval(eval);
    if (cmd_surface->parsed())
      return run_surface(surface);
    if (cmd_grad->parsed())
      return run_grad_check(grad_check_args);
  } catch (const UsageError &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const NumericError &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const Error &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception &e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
  return 1;
}
