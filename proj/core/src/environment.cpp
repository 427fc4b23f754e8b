//
// Project c3net - Copyright 2026 c3net developers.
// SPDX-License-Identifier: Apache-2.0
//
#include "c3net/environment.hpp"

#include <cmath>
#include <numbers>

#include "c3net/errors.hpp"
#include "c3net/strings.hpp"

namespace c3net {

Task parse_task(std::string_view name) {
  if (name == "solvation")
    return Task::kSolvation;
  if (name == "logp")
    return Task::kLogp;
  if (name == "pampa")
    return Task::kPampa;
  throw DataError("unknown task '" + std::string(name)
                  + "' (expected solvation, logp or pampa)");
}

std::string_view task_name(Task task) {
  switch (task) {
  case Task::kSolvation:
    return "solvation";
  case Task::kLogp:
    return "logp";
  case Task::kPampa:
    return "pampa";
  }
  return "solvation";
}

double rt_ln10(double temperature) {
  return kGasConstantKcal * temperature * std::numbers::ln10;
}

double task_omega(Task task, double temperature) {
  return task == Task::kSolvation ? 1.0 : 1.0 / rt_ln10(temperature);
}

double logp_from_solvation(double dg_water_kcal, double dg_octanol_kcal,
                           double temperature) {
  return (dg_water_kcal - dg_octanol_kcal) / rt_ln10(temperature);
}

bool SolventTable::contains(std::string_view system_id) const {
  for (const auto &spec : specs)
    if (spec.system_id == system_id)
      return true;
  return false;
}

const EnvironmentSpec &SolventTable::find(std::string_view system_id) const {
  for (const auto &spec : specs)
    if (spec.system_id == system_id)
      return spec;
  throw DataError("unknown system_id '" + std::string(system_id)
                  + "' (not in solvent table)");
}

SolventTable SolventTable::from_tsv(std::string_view text) {
  SolventTable table;
  std::vector<size_t> pending_difference;  // specs awaiting water - 1-octanol

  size_t line_no = 0;
  for (const auto &raw : split(text, '\n')) {
    ++line_no;
    auto line = strip(raw);
    if (line.empty() || line.front() == '#')
      continue;
    auto fields = split(line, '\t');
    if (!fields.empty() && strip(fields[0]) == "system_id")
      continue;
    if (fields.size() != 8)
      throw DataError("solvent table line " + std::to_string(line_no)
                      + ": expected 8 tab-separated fields, got "
                      + std::to_string(fields.size()));

    EnvironmentSpec spec;
    spec.system_id = std::string(strip(fields[0]));
    spec.task = parse_task(strip(fields[6]));
    auto trainable = strip(fields[7]);
    if (trainable == "1" || trainable == "true")
      spec.trainable = true;
    else if (trainable == "0" || trainable == "false")
      spec.trainable = false;
    else
      throw DataError("solvent table line " + std::to_string(line_no)
                      + ": trainable must be 0/1/true/false");

    int dashes = 0;
    for (int k = 0; k < 5; ++k)
      if (strip(fields[static_cast<size_t>(k + 1)]) == "-")
        ++dashes;
    if (dashes == 5) {
      if (!spec.trainable)
        throw DataError("solvent table line " + std::to_string(line_no)
                        + ": only trainable systems may defer Q to the "
                          "water - 1-octanol difference");
      pending_difference.push_back(table.specs.size());
    } else if (dashes == 0) {
      for (int k = 0; k < 5; ++k)
        spec.q[static_cast<size_t>(k)] =
            parse_double(fields[static_cast<size_t>(k + 1)], "solvent property");
    } else {
      throw DataError("solvent table line " + std::to_string(line_no)
                      + ": give all five properties or '-' for all five");
    }
    for (double v : spec.q)
      if (!std::isfinite(v))
        throw DataError("solvent table line " + std::to_string(line_no)
                        + ": non-finite property value");
    if (table.contains(spec.system_id))
      throw DataError("solvent table line " + std::to_string(line_no)
                      + ": duplicate system_id '" + spec.system_id + "'");
    table.specs.push_back(std::move(spec));
  }

  if (!pending_difference.empty()) {
    if (!table.contains("water") || !table.contains("1-octanol"))
      throw DataError("solvent table: deferred Q rows need both 'water' and "
                      "'1-octanol' entries");
    const auto &water = table.find("water");
    const auto &octanol = table.find("1-octanol");
    for (size_t idx : pending_difference)
      for (size_t k = 0; k < 5; ++k)
        table.specs[idx].q[k] = water.q[k] - octanol.q[k];
  }
  return table;
}

SolventTable SolventTable::load(const std::string &path) {
  return from_tsv(read_file(path));
}

}  // namespace c3net
