//
// Project c3net - Copyright 2026 c3net developers.
// SPDX-License-Identifier: Apache-2.0
//
#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "c3net/molecule.hpp"

namespace c3net {

/// Parses SDF/MOL V2000 text into validated molecules, one per record in
/// file order. V3000 records are rejected. Validation enforces the
/// supported 10-element set, bond index sanity, explicit hydrogens (a heavy
/// atom with under-filled valence and no attached H is rejected) and
/// non-degenerate coordinates (no two atoms closer than 0.3 A).
///
/// Throws DataError naming the record and line on any failure; on failure
/// nothing is returned (no partial output).
std::vector<Molecule> parse_sdf(std::string_view text);

/// Serializes one molecule as a V2000 record terminated by "$$$$".
/// Deterministic byte-for-byte: coordinates at 4 decimals, charges as
/// "M  CHG" lines.
std::string write_sdf(const Molecule &mol);

}  // namespace c3net
