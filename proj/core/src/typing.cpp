//
// Project c3net - Copyright 2026 c3net developers.
// SPDX-License-Identifier: Apache-2.0
//
#include "c3net/typing.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "c3net/errors.hpp"
#include "c3net/strings.hpp"

namespace c3net {

std::string_view hybridization_name(Hybridization h) {
  switch (h) {
  case Hybridization::kNone:
    return "none";
  case Hybridization::kSp:
    return "sp";
  case Hybridization::kSp2:
    return "sp2";
  case Hybridization::kSp3:
    return "sp3";
  case Hybridization::kAromatic:
    return "aromatic";
  }
  return "none";
}

std::string atom_type_code(std::string_view element, Hybridization hyb,
                           int charge_bucket) {
  std::string code(element);
  code += '.';
  code += hybridization_name(hyb);
  code += '.';
  if (charge_bucket > 0)
    code += '+';
  code += std::to_string(charge_bucket);
  return code;
}

std::string bond_type_code(std::string_view elem_a, std::string_view elem_b,
                           BondOrder order_class) {
  if (elem_b < elem_a)
    std::swap(elem_a, elem_b);
  std::string code(elem_a);
  code += '-';
  code += elem_b;
  switch (order_class) {
  case BondOrder::kSingle:
    code += ".single";
    break;
  case BondOrder::kDouble:
    code += ".double";
    break;
  case BondOrder::kTriple:
    code += ".triple";
    break;
  case BondOrder::kAromatic:
    code += ".aromatic";
    break;
  }
  return code;
}

namespace {

int max_valence(std::string_view element) {
  if (element == "H" || element == "F" || element == "Cl" || element == "Br"
      || element == "I")
    return 1;
  if (element == "C" || element == "N")
    return 4;
  if (element == "O")
    return 3;
  if (element == "P")
    return 5;
  if (element == "S")
    return 6;
  return 0;
}

using EdgeBits = std::vector<uint64_t>;

void set_bit(EdgeBits &bits, int e) {
  bits[static_cast<size_t>(e) / 64] |= uint64_t(1) << (e % 64);
}

bool any_bit(const EdgeBits &bits) {
  for (uint64_t w : bits)
    if (w)
      return true;
  return false;
}

int lowest_bit(const EdgeBits &bits) {
  for (size_t w = 0; w < bits.size(); ++w)
    if (bits[w])
      return static_cast<int>(w * 64 + static_cast<size_t>(__builtin_ctzll(bits[w])));
  return -1;
}

void xor_into(EdgeBits &dst, const EdgeBits &src) {
  for (size_t w = 0; w < dst.size(); ++w)
    dst[w] ^= src[w];
}

/// Smallest set of smallest rings: shortest cycle through every edge as
/// candidates, greedily kept while independent over GF(2) on edge space,
/// until the cyclomatic number is reached.
std::vector<std::vector<int>> find_sssr(
    const Molecule &mol, const std::vector<std::vector<int>> &adjacency,
    const std::map<std::pair<int, int>, int> &edge_index) {
  const int n = mol.atom_count();
  const int m = mol.bond_count();

  // Connected components for the cyclomatic number.
  std::vector<int> comp(static_cast<size_t>(n), -1);
  int n_comp = 0;
  for (int start = 0; start < n; ++start) {
    if (comp[static_cast<size_t>(start)] != -1)
      continue;
    ++n_comp;
    std::deque<int> queue{ start };
    comp[static_cast<size_t>(start)] = n_comp;
    while (!queue.empty()) {
      int u = queue.front();
      queue.pop_front();
      for (int v : adjacency[static_cast<size_t>(u)])
        if (comp[static_cast<size_t>(v)] == -1) {
          comp[static_cast<size_t>(v)] = n_comp;
          queue.push_back(v);
        }
    }
  }
  const int n_rings = m - n + n_comp;
  if (n_rings <= 0)
    return {};

  // Shortest cycle through each edge: BFS from u to v avoiding the edge.
  std::vector<std::vector<int>> candidates;
  for (const auto &bond : mol.bonds) {
    std::vector<int> parent(static_cast<size_t>(n), -2);
    std::deque<int> queue{ bond.i };
    parent[static_cast<size_t>(bond.i)] = -1;
    while (!queue.empty() && parent[static_cast<size_t>(bond.j)] == -2) {
      int u = queue.front();
      queue.pop_front();
      for (int v : adjacency[static_cast<size_t>(u)]) {
        if ((u == bond.i && v == bond.j) || (u == bond.j && v == bond.i))
          continue;
        if (parent[static_cast<size_t>(v)] == -2) {
          parent[static_cast<size_t>(v)] = u;
          queue.push_back(v);
        }
      }
    }
    if (parent[static_cast<size_t>(bond.j)] == -2)
      continue;  // bridge edge, no cycle
    std::vector<int> ring;
    for (int v = bond.j; v != -1; v = parent[static_cast<size_t>(v)])
      ring.push_back(v);
    candidates.push_back(std::move(ring));
  }
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const auto &a, const auto &b) { return a.size() < b.size(); });

  // Greedy GF(2)-independent selection on edge incidence vectors.
  const size_t words = (static_cast<size_t>(m) + 63) / 64;
  std::vector<EdgeBits> basis;                // row-echelon rows
  std::vector<int> basis_pivot;
  std::vector<std::vector<int>> sssr;
  std::set<std::vector<int>> seen;

  for (const auto &ring : candidates) {
    if (static_cast<int>(sssr.size()) == n_rings)
      break;
    std::vector<int> sorted_ring = ring;
    std::sort(sorted_ring.begin(), sorted_ring.end());
    if (!seen.insert(sorted_ring).second)
      continue;

    EdgeBits bits(words, 0);
    for (size_t k = 0; k < ring.size(); ++k) {
      int a = ring[k];
      int b = ring[(k + 1) % ring.size()];
      auto it = edge_index.find(std::minmax(a, b));
      if (it == edge_index.end())
        continue;
      set_bit(bits, it->second);
    }
    EdgeBits reduced = bits;
    for (size_t r = 0; r < basis.size(); ++r) {
      int pivot = basis_pivot[r];
      if (reduced[static_cast<size_t>(pivot) / 64]
          & (uint64_t(1) << (pivot % 64)))
        xor_into(reduced, basis[r]);
    }
    if (!any_bit(reduced))
      continue;  // dependent on already chosen rings
    basis.push_back(reduced);
    basis_pivot.push_back(lowest_bit(reduced));
    sssr.push_back(sorted_ring);
  }
  return sssr;
}

struct AtomFlags {
  bool has_triple = false;
  int n_double = 0;
  bool has_aromatic_input = false;
  double order_sum = 0;
  int sigma = 0;  // number of bonds
};

}  // namespace

TypedGraph perceive(const Molecule &mol) {
  const int n = mol.atom_count();
  TypedGraph g;
  g.molecule = &mol;
  g.adjacency.assign(static_cast<size_t>(n), {});

  std::map<std::pair<int, int>, int> edge_index;
  for (int b = 0; b < mol.bond_count(); ++b) {
    const auto &bond = mol.bonds[static_cast<size_t>(b)];
    g.adjacency[static_cast<size_t>(bond.i)].push_back(bond.j);
    g.adjacency[static_cast<size_t>(bond.j)].push_back(bond.i);
    edge_index[std::minmax(bond.i, bond.j)] = b;
  }
  for (auto &nbrs : g.adjacency)
    std::sort(nbrs.begin(), nbrs.end());

  std::vector<AtomFlags> flags(static_cast<size_t>(n));
  for (const auto &bond : mol.bonds) {
    for (int end : { bond.i, bond.j }) {
      auto &f = flags[static_cast<size_t>(end)];
      ++f.sigma;
      switch (bond.order) {
      case BondOrder::kSingle:
        f.order_sum += 1;
        break;
      case BondOrder::kDouble:
        f.order_sum += 2;
        ++f.n_double;
        break;
      case BondOrder::kTriple:
        f.order_sum += 3;
        f.has_triple = true;
        break;
      case BondOrder::kAromatic:
        f.order_sum += 1.5;
        f.has_aromatic_input = true;
        break;
      }
    }
  }

  for (int a = 0; a < n; ++a) {
    const Atom &atom = mol.atoms[static_cast<size_t>(a)];
    double allowed = max_valence(atom.element) + std::abs(atom.formal_charge);
    if (flags[static_cast<size_t>(a)].order_sum > allowed + 1e-9)
      throw DataError("atom " + std::to_string(a) + " (" + atom.element
                      + ") in '" + mol.id + "' has impossible valence "
                      + format_double(flags[static_cast<size_t>(a)].order_sum));
  }

  g.rings = find_sssr(mol, g.adjacency, edge_index);

  // Ring membership for the exocyclic-double rule in pi counting.
  std::vector<bool> in_ring(static_cast<size_t>(n), false);
  for (const auto &ring : g.rings)
    for (int a : ring)
      in_ring[static_cast<size_t>(a)] = true;

  auto bond_between = [&](int a, int b) -> const Bond * {
    auto it = edge_index.find(std::minmax(a, b));
    return it == edge_index.end() ? nullptr
                                  : &mol.bonds[static_cast<size_t>(it->second)];
  };

  // Huckel 4n+2 over 5- and 6-membered SSSR rings, ring by ring.
  std::vector<bool> aromatic_atom(static_cast<size_t>(n), false);
  std::vector<bool> aromatic_bond(mol.bonds.size(), false);
  for (const auto &ring : g.rings) {
    if (ring.size() != 5 && ring.size() != 6)
      continue;
    std::set<int> members(ring.begin(), ring.end());
    int pi = 0;
    bool ok = true;
    for (int a : ring) {
      const Atom &atom = mol.atoms[static_cast<size_t>(a)];
      const auto &f = flags[static_cast<size_t>(a)];
      if (f.has_triple) {
        ok = false;
        break;
      }
      bool endo_double = false, exo_double_ring = false, exo_double_chain = false;
      bool endo_flagged = false;
      for (int nb : g.adjacency[static_cast<size_t>(a)]) {
        const Bond *bond = bond_between(a, nb);
        if (bond->order == BondOrder::kDouble) {
          if (members.count(nb))
            endo_double = true;
          else if (in_ring[static_cast<size_t>(nb)])
            exo_double_ring = true;
          else
            exo_double_chain = true;
        }
        if (bond->order == BondOrder::kAromatic && members.count(nb))
          endo_flagged = true;
      }
      if (atom.element == "C") {
        if (f.sigma >= 4 && !endo_double && !endo_flagged) {
          ok = false;  // saturated carbon breaks conjugation
          break;
        }
        if (endo_double)
          pi += 1;
        else if (exo_double_ring)
          pi += 1;
        else if (exo_double_chain)
          pi += 0;  // carbonyl-like: sp2 but contributes no electron
        else if (endo_flagged)
          pi += 1;
        else if (atom.formal_charge == -1)
          pi += 2;
        else if (atom.formal_charge == +1)
          pi += 0;
        else {
          ok = false;
          break;
        }
      } else if (atom.element == "N" || atom.element == "P") {
        if (endo_double)
          pi += 1;
        else if (exo_double_ring || exo_double_chain)
          pi += 1;
        else if (f.sigma >= 3)
          pi += 2;  // pyrrole-type lone pair in the ring plane
        else if (endo_flagged)
          pi += 1;  // pyridine-type in aromatic-flag encoding
        else
          pi += 2;
      } else if (atom.element == "O" || atom.element == "S") {
        if (f.sigma > 2) {
          ok = false;
          break;
        }
        pi += endo_double ? 1 : 2;
      } else {
        ok = false;  // halogens / H cannot be ring members of an aromatic ring
        break;
      }
    }
    if (!ok || !(pi == 2 || pi == 6 || pi == 10))
      continue;
    for (int a : ring)
      aromatic_atom[static_cast<size_t>(a)] = true;
    for (size_t k = 0; k < ring.size(); ++k)
      for (size_t l = k + 1; l < ring.size(); ++l) {
        auto it = edge_index.find(std::minmax(ring[k], ring[l]));
        if (it != edge_index.end()) {
          // Only perimeter edges of this ring, not chords.
          aromatic_bond[static_cast<size_t>(it->second)] = true;
        }
      }
  }

  // Hybridization and atom type codes.
  g.hybridizations.resize(static_cast<size_t>(n));
  g.atom_types.resize(static_cast<size_t>(n));
  for (int a = 0; a < n; ++a) {
    const Atom &atom = mol.atoms[static_cast<size_t>(a)];
    const auto &f = flags[static_cast<size_t>(a)];
    Hybridization hyb;
    if (atom.element == "H")
      hyb = Hybridization::kNone;
    else if (aromatic_atom[static_cast<size_t>(a)])
      hyb = Hybridization::kAromatic;
    else if (f.has_triple || f.n_double >= 2)
      hyb = Hybridization::kSp;
    else if (f.n_double >= 1 || f.has_aromatic_input)
      hyb = Hybridization::kSp2;
    else
      hyb = Hybridization::kSp3;
    g.hybridizations[static_cast<size_t>(a)] = hyb;

    int bucket = std::clamp(atom.formal_charge, -1, 1);
    if (bucket != atom.formal_charge)
      g.warnings.push_back("atom " + std::to_string(a) + " in '" + mol.id
                           + "': formal charge " + std::to_string(atom.formal_charge)
                           + " clamped to " + std::to_string(bucket));
    g.atom_types[static_cast<size_t>(a)] = atom_type_code(atom.element, hyb, bucket);
  }

  // Bond type codes; aromatic rings normalize their bonds to the aromatic
  // class so Kekule and flag encodings coincide.
  g.bond_types.resize(mol.bonds.size());
  g.bond_aromatic.resize(mol.bonds.size());
  for (size_t b = 0; b < mol.bonds.size(); ++b) {
    const auto &bond = mol.bonds[b];
    bool aromatic = aromatic_bond[b] || bond.order == BondOrder::kAromatic;
    BondOrder cls = aromatic ? BondOrder::kAromatic : bond.order;
    g.bond_aromatic[b] = aromatic;
    g.bond_types[b] = bond_type_code(mol.atoms[static_cast<size_t>(bond.i)].element,
                                     mol.atoms[static_cast<size_t>(bond.j)].element,
                                     cls);
  }

  // Topological distance exactly 2 (two-step BFS on the bond graph).
  g.dist2.assign(static_cast<size_t>(n), {});
  for (int a = 0; a < n; ++a) {
    std::set<int> second;
    for (int nb : g.adjacency[static_cast<size_t>(a)])
      for (int nb2 : g.adjacency[static_cast<size_t>(nb)])
        second.insert(nb2);
    second.erase(a);
    for (int nb : g.adjacency[static_cast<size_t>(a)])
      second.erase(nb);
    g.dist2[static_cast<size_t>(a)].assign(second.begin(), second.end());
  }

  return g;
}

std::vector<AtomContext> contexts(const TypedGraph &graph) {
  std::vector<AtomContext> out;
  const int n = static_cast<int>(graph.atom_types.size());
  for (int i = 0; i < n; ++i) {
    size_t a = 0, b = 0;
    const auto &d1 = graph.adjacency[static_cast<size_t>(i)];
    const auto &d2 = graph.dist2[static_cast<size_t>(i)];
    // Merge the two sorted lists so contexts come out ordered by j.
    while (a < d1.size() || b < d2.size()) {
      if (b >= d2.size() || (a < d1.size() && d1[a] < d2[b])) {
        out.push_back({ i, d1[a], 1 });
        ++a;
      } else {
        out.push_back({ i, d2[b], 2 });
        ++b;
      }
    }
  }
  return out;
}

bool Vocabulary::add(const std::string &code) {
  if (finalized_)
    throw DataError("vocabulary is frozen; cannot add '" + code + "'");
  return ids_.emplace(code, -1).second;
}

void Vocabulary::finalize() {
  codes_.clear();
  codes_.reserve(ids_.size());
  for (auto &entry : ids_)
    codes_.push_back(entry.first);  // std::map iterates lexicographically
  for (int i = 0; i < static_cast<int>(codes_.size()); ++i)
    ids_[codes_[static_cast<size_t>(i)]] = i;
  finalized_ = true;
}

bool Vocabulary::contains(std::string_view code) const {
  return ids_.find(code) != ids_.end();
}

int Vocabulary::id(std::string_view code) const {
  auto it = ids_.find(code);
  if (it == ids_.end() || it->second < 0)
    throw DataError("code not in vocabulary: '" + std::string(code) + "'");
  return it->second;
}

const std::string &Vocabulary::code(int id) const {
  if (id < 0 || id >= size())
    throw DataError("vocabulary id out of range: " + std::to_string(id));
  return codes_[static_cast<size_t>(id)];
}

std::string Vocabulary::to_tsv() const {
  std::string out = "code\tid\n";
  for (int i = 0; i < size(); ++i) {
    out += codes_[static_cast<size_t>(i)];
    out += '\t';
    out += std::to_string(i);
    out += '\n';
  }
  return out;
}

Vocabulary Vocabulary::from_tsv(std::string_view text) {
  Vocabulary vocab;
  std::vector<std::pair<int, std::string>> entries;
  size_t line_no = 0;
  for (const auto &raw : split(text, '\n')) {
    ++line_no;
    auto line = strip(raw);
    if (line.empty() || line == "code\tid")
      continue;
    auto fields = split(line, '\t');
    if (fields.size() != 2)
      throw DataError("vocabulary TSV line " + std::to_string(line_no)
                      + ": expected code<TAB>id");
    entries.push_back({ static_cast<int>(parse_int(fields[1], "vocab id")),
                        std::string(strip(fields[0])) });
  }
  std::sort(entries.begin(), entries.end());
  for (int i = 0; i < static_cast<int>(entries.size()); ++i)
    if (entries[static_cast<size_t>(i)].first != i)
      throw DataError("vocabulary TSV ids are not a permutation of 0.."
                      + std::to_string(entries.size() - 1));
  for (auto &entry : entries) {
    vocab.codes_.push_back(entry.second);
    vocab.ids_[entry.second] = entry.first;
  }
  vocab.finalized_ = true;
  return vocab;
}

}  // namespace c3net
