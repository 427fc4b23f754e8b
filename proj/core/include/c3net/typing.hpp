//
// Project c3net - Copyright 2026 c3net developers.
// SPDX-License-Identifier: Apache-2.0
//
#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "c3net/molecule.hpp"

namespace c3net {

enum class Hybridization { kNone, kSp, kSp2, kSp3, kAromatic };

std::string_view hybridization_name(Hybridization h);

/// Atom type code string, e.g. "C.sp3.0", "H.none.0", "N.aromatic.+1".
std::string atom_type_code(std::string_view element, Hybridization hyb,
                           int charge_bucket);

/// Bond type code string with the element pair sorted, e.g. "C-H.single",
/// "C-N.aromatic".
std::string bond_type_code(std::string_view elem_a, std::string_view elem_b,
                           BondOrder order_class);

/// Typed view of a molecule: perceived atom/bond type codes plus the
/// topological neighborhoods used by the embedding pipeline.
struct TypedGraph {
  const Molecule *molecule = nullptr;
  std::vector<std::string> atom_types;       // per atom, code strings
  std::vector<Hybridization> hybridizations; // per atom
  std::vector<std::string> bond_types;       // per bond, code strings
  std::vector<bool> bond_aromatic;           // normalized aromatic flag
  std::vector<std::vector<int>> adjacency;   // sorted neighbor lists
  std::vector<std::vector<int>> dist2;       // atoms at topological distance 2
  std::vector<std::vector<int>> rings;       // SSSR, each ring as sorted atoms
  std::vector<std::string> warnings;         // e.g. clamped charge buckets
};

/// Assigns atom and bond types. Rings come from a smallest-set-of-smallest-
/// rings basis; aromaticity is Huckel 4n+2 over 5- and 6-membered rings;
/// hybridization falls out of the bond orders. Kekule and aromatic-flag
/// encodings of the same ring normalize to the same typed graph.
///
/// Throws DataError if an atom's valence is impossible for its element.
TypedGraph perceive(const Molecule &mol);

/// One skip-gram context: atoms i, j at topological distance 1 or 2.
struct AtomContext {
  int center = 0;
  int context = 0;
  int distance = 0;
};

/// Emits (center, context) atom pairs for every ordered pair at topological
/// distance <= 2, ordered by center then context. Mapping the atoms through
/// atom_types gives the (center_code, context_code) pairs Type2Vec trains on.
std::vector<AtomContext> contexts(const TypedGraph &graph);

/// Ordered code -> id map. Built data-driven from a corpus, then frozen;
/// lookups on the frozen vocabulary are stable because finalize() assigns
/// ids in lexicographic code order.
class Vocabulary {
public:
  /// Registers a code during the build phase. Returns true if new.
  bool add(const std::string &code);

  /// Sorts codes lexicographically and assigns ids 0..n-1.
  void finalize();

  bool finalized() const { return finalized_; }
  bool contains(std::string_view code) const;
  int id(std::string_view code) const;  // throws DataError for unknown codes
  const std::string &code(int id) const;
  int size() const { return static_cast<int>(codes_.size()); }

  /// TSV with columns code, id. Load validates ids form a permutation.
  std::string to_tsv() const;
  static Vocabulary from_tsv(std::string_view text);

  bool operator==(const Vocabulary &other) const { return codes_ == other.codes_; }

private:
  std::vector<std::string> codes_;               // index = id
  std::map<std::string, int, std::less<>> ids_;
  bool finalized_ = false;
};

}  // namespace c3net
