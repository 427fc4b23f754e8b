//
// Project c3net - Copyright 2026 c3net developers.
// SPDX-License-Identifier: Apache-2.0
//
#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "c3net/molecule.hpp"

namespace c3net {

/// Writes the per-atom energy breakdown as CSV with columns atom_index,
/// element, atom_type, contribution_kcal_per_mol. The final TOTAL row is the
/// plain left-to-right sum of the contributions, the same accumulation order
/// the predictor uses, so it matches the predicted property bit for bit.
///
/// atom_types may be empty (column left blank) or must match the atom count.
/// Values are printed in shortest round-trip form, so parsing the CSV back
/// recovers the exact floats.
void write_decomposition(const Molecule &mol,
                         const std::vector<std::string> &atom_types,
                         const std::vector<float> &contributions_kcal_mol,
                         std::ostream &sink);

}  // namespace c3net
