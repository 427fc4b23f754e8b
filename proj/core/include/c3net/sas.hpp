//
// Project c3net - Copyright 2026 c3net developers.
// SPDX-License-Identifier: Apache-2.0
//
#pragma once

#include <string>
#include <vector>

#include "c3net/element_table.hpp"
#include "c3net/molecule.hpp"

namespace c3net {

/// Environment sample points on the solvent accessible surface.
struct SurfacePoints {
  std::vector<Vec3> positions;   // angstrom
  std::vector<int> owner_atom;   // which atom's sphere each point came from
  double probe_radius = 0;
  int points_per_atom = 0;
  double approx_area = 0;        // occlusion-corrected Shrake-Rupley estimate

  int count() const { return static_cast<int>(positions.size()); }
};

/// Samples n_per_atom points per atom on the sphere of radius vdw+probe via
/// a deterministic Fibonacci lattice, then deletes points lying inside any
/// other atom's SAS sphere (strict test with 1e-9 A slack against boundary
/// flapping). The lattice is generated in a per-atom frame derived from the
/// molecule's own geometry, so a rigid motion of the molecule moves the
/// point set rigidly with it.
///
/// approx_area = sum over atoms of 4 pi (r+probe)^2 * kept/n_per_atom.
///
/// Throws UsageError for bad probe/n_per_atom and DataError if no point
/// survives.
SurfacePoints sas_points(const Molecule &mol, const ElementTable &elements,
                         double probe, int n_per_atom);

/// Debug dump, one "x y z owner_index" line per point.
std::string surface_dump(const SurfacePoints &points);

}  // namespace c3net
