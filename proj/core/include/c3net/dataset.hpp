//
// Project c3net - Copyright 2026 c3net developers.
// SPDX-License-Identifier: Apache-2.0
//
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "c3net/environment.hpp"
#include "c3net/molecule.hpp"

namespace c3net {

/// One measurement: a solute in a system with a target value, carried by
/// one to five conformers that all share the same chemical graph.
struct Record {
  std::string record_id;
  std::string system_id;
  Task task = Task::kSolvation;
  double target = 0;  // kcal/mol for solvation, log units otherwise
  std::vector<Molecule> conformers;
};

inline constexpr int kMaxConformers = 5;

/// Loads the manifest CSV (columns record_id, system_id, task, target,
/// sdf_path; one row per conformer) and the molecules it references.
/// Relative sdf paths resolve against sdf_root; each referenced file must
/// hold exactly one molecule. Rows sharing a record_id are grouped into one
/// Record and must agree on system, task and target; conformers must share
/// atom count, elements and bonds. Errors carry the offending row number.
std::vector<Record> load_manifest(const std::string &csv_path,
                                  const std::string &sdf_root,
                                  const SolventTable &solvents);

/// 80/20 split at record granularity (conformers of one measurement never
/// straddle the boundary). Deterministic for a given seed.
struct Split {
  std::vector<std::string> train_ids;
  std::vector<std::string> valid_ids;
  uint64_t seed = 0;
};

Split split_dataset(const std::vector<Record> &records, uint64_t seed);

/// Records whose ids appear in `ids`, in dataset order.
std::vector<Record> select_records(const std::vector<Record> &records,
                                   const std::vector<std::string> &ids);

}  // namespace c3net
