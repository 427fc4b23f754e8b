//
// Project c3net - Copyright 2026 c3net developers.
// SPDX-License-Identifier: Apache-2.0
//
#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

namespace c3net {

enum class Task { kSolvation, kLogp, kPampa };

Task parse_task(std::string_view name);
std::string_view task_name(Task task);

inline constexpr double kGasConstantKcal = 1.98720425864e-3;  // kcal/(mol K)
inline constexpr double kDefaultTemperature = 298.15;         // K

/// R*T*ln(10) in kcal/mol; divides the per-atom sum for log-unit tasks.
double rt_ln10(double temperature);

/// Unit conversion applied to the summed atomic contributions: 1/(RT ln10)
/// for log-unit tasks, 1 otherwise.
double task_omega(Task task, double temperature);

/// (dG_water - dG_octanol) / (RT ln10), in log units.
double logp_from_solvation(double dg_water_kcal, double dg_octanol_kcal,
                           double temperature = kDefaultTemperature);

/// One environment the continuum medium can take: a pure solvent with fixed
/// properties, or a composite system whose Q is optimized in training.
/// q = [dielectric constant, refractive index, surface tension,
///      H-bond acidity, H-bond basicity].
struct EnvironmentSpec {
  std::string system_id;
  std::array<double, 5> q{};
  bool trainable = false;
  Task task = Task::kSolvation;
};

/// Environment registry loaded from the solvent table TSV with columns
/// system_id, epsilon, refractive_index, surface_tension, hb_acidity,
/// hb_basicity, task, trainable. A trainable row may give "-" for all five
/// property columns, in which case its Q starts as Q(water) - Q(1-octanol);
/// those two rows must then exist.
struct SolventTable {
  std::vector<EnvironmentSpec> specs;  // file order

  bool contains(std::string_view system_id) const;
  const EnvironmentSpec &find(std::string_view system_id) const;

  static SolventTable from_tsv(std::string_view text);
  static SolventTable load(const std::string &path);
};

}  // namespace c3net
