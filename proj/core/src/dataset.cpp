//
// Project c3net - Copyright 2026 c3net developers.
// SPDX-License-Identifier: Apache-2.0
//
#include "c3net/dataset.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

#include "c3net/errors.hpp"
#include "c3net/rng.hpp"
#include "c3net/sdf.hpp"
#include "c3net/strings.hpp"

namespace c3net {
namespace {

std::string resolve_path(const std::string &sdf_root, const std::string &path) {
  if (path.empty())
    return path;
  if (path.front() == '/' || sdf_root.empty())
    return path;
  return sdf_root + "/" + path;
}

std::vector<std::tuple<int, int, int>> canonical_bonds(const Molecule &mol) {
  std::vector<std::tuple<int, int, int>> bonds;
  for (const auto &b : mol.bonds) {
    auto [lo, hi] = std::minmax(b.i, b.j);
    bonds.emplace_back(lo, hi, static_cast<int>(b.order));
  }
  std::sort(bonds.begin(), bonds.end());
  return bonds;
}

void check_conformer_consistency(const Record &record, const Molecule &next,
                                 size_t row_no) {
  const Molecule &first = record.conformers.front();
  if (next.atom_count() != first.atom_count())
    throw DataError("manifest row " + std::to_string(row_no) + ": conformer of '"
                    + record.record_id + "' has " + std::to_string(next.atom_count())
                    + " atoms, expected " + std::to_string(first.atom_count()));
  for (int a = 0; a < first.atom_count(); ++a)
    if (first.atoms[static_cast<size_t>(a)].element
        != next.atoms[static_cast<size_t>(a)].element)
      throw DataError("manifest row " + std::to_string(row_no)
                      + ": conformer of '" + record.record_id
                      + "' disagrees on the element of atom " + std::to_string(a));
  if (canonical_bonds(first) != canonical_bonds(next))
    throw DataError("manifest row " + std::to_string(row_no) + ": conformer of '"
                    + record.record_id + "' has a different bond list");
}

}  // namespace

std::vector<Record> load_manifest(const std::string &csv_path,
                                  const std::string &sdf_root,
                                  const SolventTable &solvents) {
  const std::string text = read_file(csv_path);

  std::vector<Record> records;
  std::map<std::string, size_t> index_of;

  size_t row_no = 0;
  for (const auto &raw : split(text, '\n')) {
    ++row_no;
    auto line = strip(raw);
    if (line.empty() || line.front() == '#')
      continue;
    auto fields = split(line, ',');
    if (!fields.empty() && strip(fields[0]) == "record_id")
      continue;
    if (fields.size() != 5)
      throw DataError("manifest row " + std::to_string(row_no)
                      + ": expected 5 comma-separated fields (record_id, "
                        "system_id, task, target, sdf_path)");

    const std::string record_id{ strip(fields[0]) };
    const std::string system_id{ strip(fields[1]) };
    const Task task = parse_task(strip(fields[2]));
    const double target = parse_double(fields[3], "target");
    // Relative paths resolve against --sdf-root, defaulting to the
    // manifest's own directory.
    std::string root = sdf_root;
    if (root.empty() && csv_path.find('/') != std::string::npos)
      root = csv_path.substr(0, csv_path.rfind('/'));
    const std::string sdf_path = resolve_path(root, std::string(strip(fields[4])));

    if (!solvents.contains(system_id))
      throw DataError("manifest row " + std::to_string(row_no) + ": system_id '"
                      + system_id + "' is not in the solvent table");
    const EnvironmentSpec &spec = solvents.find(system_id);
    if (spec.task != task)
      throw DataError("manifest row " + std::to_string(row_no) + ": task '"
                      + std::string(task_name(task)) + "' does not match system '"
                      + system_id + "' (" + std::string(task_name(spec.task)) + ")");

    std::string sdf_text;
    try {
      sdf_text = read_file(sdf_path);
    } catch (const DataError &) {
      throw DataError("manifest row " + std::to_string(row_no)
                      + ": cannot read SDF file '" + sdf_path + "'");
    }
    std::vector<Molecule> mols = parse_sdf(sdf_text);
    if (mols.size() != 1)
      throw DataError("manifest row " + std::to_string(row_no) + ": '" + sdf_path
                      + "' holds " + std::to_string(mols.size())
                      + " records; conformer files must hold exactly one");
    Molecule mol = std::move(mols.front());
    mol.conformer_group = record_id;

    auto it = index_of.find(record_id);
    if (it == index_of.end()) {
      Record record;
      record.record_id = record_id;
      record.system_id = system_id;
      record.task = task;
      record.target = target;
      record.conformers.push_back(std::move(mol));
      index_of.emplace(record_id, records.size());
      records.push_back(std::move(record));
    } else {
      Record &record = records[it->second];
      if (record.system_id != system_id || record.task != task
          || record.target != target)
        throw DataError("manifest row " + std::to_string(row_no)
                        + ": conformer rows of '" + record_id
                        + "' disagree on system/task/target");
      if (static_cast<int>(record.conformers.size()) >= kMaxConformers)
        throw DataError("manifest row " + std::to_string(row_no) + ": record '"
                        + record_id + "' exceeds the maximum of "
                        + std::to_string(kMaxConformers) + " conformers");
      check_conformer_consistency(record, mol, row_no);
      record.conformers.push_back(std::move(mol));
    }
  }

  if (records.empty())
    throw DataError("manifest '" + csv_path + "' contains no records");
  return records;
}

Split split_dataset(const std::vector<Record> &records, uint64_t seed) {
  if (records.size() < 5)
    throw DataError("need at least 5 records to split, got "
                    + std::to_string(records.size()));

  std::vector<std::string> ids;
  ids.reserve(records.size());
  for (const auto &r : records)
    ids.push_back(r.record_id);

  Rng rng(derive_seed(seed, "split"));
  rng.shuffle(ids);

  const size_t n_train = records.size() * 8 / 10;
  Split split;
  split.seed = seed;
  split.train_ids.assign(ids.begin(), ids.begin() + static_cast<long>(n_train));
  split.valid_ids.assign(ids.begin() + static_cast<long>(n_train), ids.end());
  return split;
}

std::vector<Record> select_records(const std::vector<Record> &records,
                                   const std::vector<std::string> &ids) {
  std::set<std::string> wanted(ids.begin(), ids.end());
  std::vector<Record> out;
  for (const auto &r : records)
    if (wanted.count(r.record_id))
      out.push_back(r);
  return out;
}

}  // namespace c3net
