//
// Project c3net - Copyright 2026 c3net developers.
// SPDX-License-Identifier: Apache-2.0
//
#include <benchmark/benchmark.h>

#include <memory>

#include "c3net/element_table.hpp"
#include "c3net/net.hpp"
#include "c3net/rng.hpp"
#include "c3net/sas.hpp"
#include "c3net/sdf.hpp"
#include "c3net/skipgram.hpp"
#include "c3net/strings.hpp"
#include "c3net/tape.hpp"

namespace {

using namespace c3net;

std::string data_dir() { return C3NET_BENCH_DATA_DIR; }

const std::vector<Molecule> &corpus() {
  static auto mols = parse_sdf(read_file(data_dir() + "/corpus.sdf"));
  return mols;
}

const ElementTable &elements() {
  static auto table = ElementTable::load(data_dir() + "/bondi_radii.tsv");
  return table;
}

const Molecule &midsize_molecule() {
  static const Molecule &mol = []() -> const Molecule & {
    const Molecule *best = &corpus().front();
    for (const auto &m : corpus())
      if (std::abs(m.atom_count() - 18) < std::abs(best->atom_count() - 18))
        best = &m;
    return *best;
  }();
  return mol;
}

struct BenchModel {
  NetParams<float> params;
  TypedGraph graph;
  SurfacePoints surface;
  std::shared_ptr<const Tensor32> distances;

  explicit BenchModel(int n_per_atom) {
    const Molecule &mol = midsize_molecule();
    graph = perceive(mol);

    Vocabulary atom_vocab, bond_vocab;
    for (const auto &code : graph.atom_types)
      atom_vocab.add(code);
    for (const auto &code : graph.bond_types)
      bond_vocab.add(code);
    atom_vocab.finalize();
    bond_vocab.finalize();

    EmbeddingTable table;
    table.vocabulary = atom_vocab;
    table.dim = 64;
    table.center = Tensor64::zeros({ atom_vocab.size(), 64 });
    table.context = Tensor64::zeros({ atom_vocab.size(), 64 });
    Rng rng(7);
    for (auto &v : table.center.data)
      v = rng.uniform(-0.03, 0.03);

    Hyperparams hyper;
    hyper.points_per_atom = n_per_atom;
    EnvironmentSpec env;
    env.system_id = "bench";
    env.q = { 78.36, 1.3325, 71.97, 1.17, 0.47 };
    params = init_params<float>(hyper, table, bond_vocab, { env },
                                elements().checksum(), 7);
    surface = sas_points(mol, elements(), hyper.probe_radius, n_per_atom);
    distances = distance_matrix<float>(mol, surface);
  }
};

void BM_ParseCorpus(benchmark::State &state) {
  const std::string text = read_file(data_dir() + "/corpus.sdf");
  for (auto _ : state) {
    auto mols = parse_sdf(text);
    benchmark::DoNotOptimize(mols);
  }
  state.SetItemsProcessed(state.iterations()
                          * static_cast<int64_t>(corpus().size()));
}
BENCHMARK(BM_ParseCorpus)->Unit(benchmark::kMillisecond);

void BM_Perceive(benchmark::State &state) {
  const Molecule &mol = midsize_molecule();
  for (auto _ : state) {
    auto graph = perceive(mol);
    benchmark::DoNotOptimize(graph);
  }
}
BENCHMARK(BM_Perceive)->Unit(benchmark::kMicrosecond);

void BM_SasPoints(benchmark::State &state) {
  const Molecule &mol = midsize_molecule();
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto pts = sas_points(mol, elements(), 1.4, n);
    benchmark::DoNotOptimize(pts);
  }
}
BENCHMARK(BM_SasPoints)->Arg(16)->Arg(64)->Arg(256)->Unit(benchmark::kMicrosecond);

void BM_RbfConv(benchmark::State &state) {
  BenchModel model(static_cast<int>(state.range(0)));
  const int64_t s = model.surface.count();
  Tensor32 rows = Tensor32::full({ s, 64 }, 0.5f);
  for (auto _ : state) {
    Tape32 tape;
    auto s_id = tape.constant(rows);
    auto mu = tape.leaf(model.params.rbf_mu[0], true);
    auto sigma = tape.leaf(model.params.rbf_sigma[0], true);
    auto out = tape.rbf_conv(s_id, model.distances, mu, sigma);
    benchmark::DoNotOptimize(tape.value(out));
  }
}
BENCHMARK(BM_RbfConv)->Arg(16)->Arg(64)->Unit(benchmark::kMicrosecond);

void BM_ForwardInference(benchmark::State &state) {
  BenchModel model(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    ModelRun<float> run(model.params, false);
    auto pred = run.forward(model.graph, model.surface, "bench",
                            model.distances);
    benchmark::DoNotOptimize(run.tape().value(pred.property));
  }
}
BENCHMARK(BM_ForwardInference)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_ForwardBackward(benchmark::State &state) {
  BenchModel model(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    ModelRun<float> run(model.params, true);
    auto pred = run.forward(model.graph, model.surface, "bench",
                            model.distances);
    run.tape().backward(pred.property);
    benchmark::DoNotOptimize(run.gradient_bindings());
  }
}
BENCHMARK(BM_ForwardBackward)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_SkipgramEpoch(benchmark::State &state) {
  Vocabulary vocab;
  std::vector<std::pair<int, int>> pairs;
  std::vector<TypedGraph> graphs;
  for (size_t k = 0; k < 200; ++k) {
    graphs.push_back(perceive(corpus()[k]));
    for (const auto &code : graphs.back().atom_types)
      vocab.add(code);
  }
  vocab.finalize();
  for (const auto &graph : graphs)
    for (const auto &ctx : contexts(graph))
      pairs.push_back({ vocab.id(graph.atom_types[size_t(ctx.center)]),
                        vocab.id(graph.atom_types[size_t(ctx.context)]) });
  SkipgramOptions options;
  options.dim = 64;
  options.epochs = 1;
  for (auto _ : state) {
    auto result = train_skipgram(vocab, pairs, options);
    benchmark::DoNotOptimize(result);
  }
  state.SetItemsProcessed(state.iterations()
                          * static_cast<int64_t>(pairs.size()));
}
BENCHMARK(BM_SkipgramEpoch)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
