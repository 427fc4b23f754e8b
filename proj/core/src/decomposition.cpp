//
// Project c3net - Copyright 2026 c3net developers.
// SPDX-License-Identifier: Apache-2.0
//
#include "c3net/decomposition.hpp"

#include "c3net/errors.hpp"
#include "c3net/strings.hpp"

namespace c3net {

void write_decomposition(const Molecule &mol,
                         const std::vector<std::string> &atom_types,
                         const std::vector<float> &contributions_kcal_mol,
                         std::ostream &sink) {
  if (contributions_kcal_mol.size() != mol.atoms.size())
    throw DataError("decomposition: " + std::to_string(contributions_kcal_mol.size())
                    + " contributions for " + std::to_string(mol.atoms.size())
                    + " atoms");
  if (!atom_types.empty() && atom_types.size() != mol.atoms.size())
    throw DataError("decomposition: atom_types length does not match atom count");

  sink << "atom_index,element,atom_type,contribution_kcal_per_mol\n";
  float total = 0.0f;
  for (size_t a = 0; a < mol.atoms.size(); ++a) {
    total += contributions_kcal_mol[a];
    sink << a << ',' << mol.atoms[a].element << ','
         << (atom_types.empty() ? std::string() : atom_types[a]) << ','
         << format_float(contributions_kcal_mol[a]) << '\n';
  }
  sink << "TOTAL,,," << format_float(total) << '\n';
}

}  // namespace c3net
