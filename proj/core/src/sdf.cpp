//
// Project c3net - Copyright 2026 c3net developers.
// SPDX-License-Identifier: Apache-2.0
//
#include "c3net/sdf.hpp"

#include <cmath>
#include <cstdio>
#include <set>
#include <utility>

#include "c3net/element_table.hpp"
#include "c3net/errors.hpp"
#include "c3net/strings.hpp"

namespace c3net {
namespace {

constexpr double kMinAtomSeparation = 0.3;  // angstrom

int default_valence(std::string_view element) {
  if (element == "H" || element == "F" || element == "Cl" || element == "Br"
      || element == "I")
    return 1;
  if (element == "C")
    return 4;
  if (element == "N" || element == "P")
    return 3;
  if (element == "O" || element == "S")
    return 2;
  return 0;
}

bool element_supported(std::string_view element) {
  for (const char *symbol : ElementTable::kSupported)
    if (element == symbol)
      return true;
  return false;
}

std::string_view field(std::string_view line, size_t pos, size_t len) {
  if (pos >= line.size())
    return {};
  return line.substr(pos, std::min(len, line.size() - pos));
}

[[noreturn]] void fail(size_t line_no, const std::string &record,
                       const std::string &msg) {
  throw DataError("SDF line " + std::to_string(line_no) + " (record '" + record
                  + "'): " + msg);
}

int charge_from_code(int code) {
  // Atom-block charge column: 1..3 -> +3..+1, 5..7 -> -1..-3, 4 = radical.
  switch (code) {
  case 0:
  case 4:
    return 0;
  case 1:
    return 3;
  case 2:
    return 2;
  case 3:
    return 1;
  case 5:
    return -1;
  case 6:
    return -2;
  case 7:
    return -3;
  default:
    return 0;
  }
}

struct RecordLines {
  std::vector<std::string> lines;
  size_t first_line_no = 0;  // 1-based position in the whole input
};

Molecule parse_record(const RecordLines &rec, size_t index) {
  const auto &lines = rec.lines;
  auto line_no = [&](size_t i) { return rec.first_line_no + i; };

  std::string id = std::string(strip(lines.empty() ? "" : lines[0]));
  if (id.empty())
    id = std::to_string(index);

  if (lines.size() < 4)
    fail(line_no(lines.size() ? lines.size() - 1 : 0), id,
         "truncated record: header block is incomplete");

  const std::string &counts = lines[3];
  if (counts.find("V3000") != std::string::npos)
    fail(line_no(3), id, "V3000 records are not supported; only V2000 is accepted");

  int natoms = 0, nbonds = 0;
  try {
    natoms = static_cast<int>(parse_int(field(counts, 0, 3), "atom count"));
    nbonds = static_cast<int>(parse_int(field(counts, 3, 3), "bond count"));
  } catch (const DataError &) {
    fail(line_no(3), id, "malformed counts line: '" + counts + "'");
  }
  if (natoms <= 0)
    fail(line_no(3), id, "malformed counts line: atom count must be positive");
  if (nbonds < 0)
    fail(line_no(3), id, "malformed counts line: negative bond count");

  if (lines.size() < 4 + static_cast<size_t>(natoms) + static_cast<size_t>(nbonds))
    fail(line_no(lines.size() - 1), id, "truncated record: expected "
         + std::to_string(natoms) + " atom and " + std::to_string(nbonds)
         + " bond lines");

  Molecule mol;
  mol.id = id;
  mol.atoms.reserve(static_cast<size_t>(natoms));

  bool saw_chg_property = false;
  for (int a = 0; a < natoms; ++a) {
    size_t li = 4 + static_cast<size_t>(a);
    const std::string &line = lines[li];
    if (line.size() < 34)
      fail(line_no(li), id, "atom line too short");
    Atom atom;
    try {
      atom.position.x = parse_double(field(line, 0, 10), "x");
      atom.position.y = parse_double(field(line, 10, 10), "y");
      atom.position.z = parse_double(field(line, 20, 10), "z");
    } catch (const DataError &) {
      fail(line_no(li), id, "malformed atom coordinates");
    }
    atom.element = std::string(strip(field(line, 31, 3)));
    if (!element_supported(atom.element))
      fail(line_no(li), id, "unsupported element '" + atom.element
           + "' (supported: H, C, N, O, F, P, S, Cl, Br, I)");
    if (line.size() >= 39) {
      auto cc = strip(field(line, 36, 3));
      if (!cc.empty())
        atom.formal_charge = charge_from_code(
            static_cast<int>(parse_int(cc, "charge code")));
    }
    mol.atoms.push_back(std::move(atom));
  }

  std::set<std::pair<int, int>> seen_pairs;
  for (int b = 0; b < nbonds; ++b) {
    size_t li = 4 + static_cast<size_t>(natoms) + static_cast<size_t>(b);
    const std::string &line = lines[li];
    if (line.size() < 9)
      fail(line_no(li), id, "bond line too short");
    Bond bond;
    int type = 0;
    try {
      bond.i = static_cast<int>(parse_int(field(line, 0, 3), "bond atom 1")) - 1;
      bond.j = static_cast<int>(parse_int(field(line, 3, 3), "bond atom 2")) - 1;
      type = static_cast<int>(parse_int(field(line, 6, 3), "bond type"));
    } catch (const DataError &) {
      fail(line_no(li), id, "malformed bond line");
    }
    if (bond.i < 0 || bond.i >= natoms || bond.j < 0 || bond.j >= natoms)
      fail(line_no(li), id, "bond references atom out of range");
    if (bond.i == bond.j)
      fail(line_no(li), id, "bond connects an atom to itself");
    if (type < 1 || type > 4)
      fail(line_no(li), id, "unsupported bond type " + std::to_string(type));
    bond.order = static_cast<BondOrder>(type);
    auto key = std::minmax(bond.i, bond.j);
    if (!seen_pairs.insert({ key.first, key.second }).second)
      fail(line_no(li), id, "duplicate bond between atoms "
           + std::to_string(bond.i + 1) + " and " + std::to_string(bond.j + 1));
    mol.bonds.push_back(bond);
  }

  // Property block: "M  CHG" supersedes all atom-block charge columns.
  for (size_t li = 4 + static_cast<size_t>(natoms) + static_cast<size_t>(nbonds);
       li < lines.size(); ++li) {
    auto line = strip(lines[li]);
    if (line == "M  END" || line == "M END")
      break;
    if (line.rfind("M  CHG", 0) != 0)
      continue;
    if (!saw_chg_property) {
      saw_chg_property = true;
      for (auto &atom : mol.atoms)
        atom.formal_charge = 0;
    }
    std::vector<std::string> toks;
    for (auto &t : split(line.substr(6), ' '))
      if (!strip(t).empty())
        toks.emplace_back(strip(t));
    if (toks.empty())
      fail(line_no(li), id, "malformed M  CHG line");
    int n = static_cast<int>(parse_int(toks[0], "CHG count"));
    if (static_cast<int>(toks.size()) != 1 + 2 * n)
      fail(line_no(li), id, "M  CHG count does not match entries");
    for (int k = 0; k < n; ++k) {
      int ai = static_cast<int>(parse_int(toks[1 + 2 * k], "CHG atom")) - 1;
      int cv = static_cast<int>(parse_int(toks[2 + 2 * k], "CHG value"));
      if (ai < 0 || ai >= natoms)
        fail(line_no(li), id, "M  CHG references atom out of range");
      mol.atoms[static_cast<size_t>(ai)].formal_charge = cv;
    }
  }

  // Explicit hydrogens: any heavy atom with under-filled valence and no
  // attached H means the file relies on implicit hydrogens.
  std::vector<double> valence(static_cast<size_t>(natoms), 0.0);
  std::vector<int> h_neighbors(static_cast<size_t>(natoms), 0);
  for (const auto &bond : mol.bonds) {
    double order = bond.order == BondOrder::kAromatic
                       ? 1.5
                       : static_cast<double>(static_cast<int>(bond.order));
    valence[static_cast<size_t>(bond.i)] += order;
    valence[static_cast<size_t>(bond.j)] += order;
    if (mol.atoms[static_cast<size_t>(bond.j)].element == "H")
      ++h_neighbors[static_cast<size_t>(bond.i)];
    if (mol.atoms[static_cast<size_t>(bond.i)].element == "H")
      ++h_neighbors[static_cast<size_t>(bond.j)];
  }
  for (int a = 0; a < natoms; ++a) {
    const Atom &atom = mol.atoms[static_cast<size_t>(a)];
    if (atom.element == "H")
      continue;
    // Formal charge shifts the expected valence (N+ carries 4 bonds, O- one).
    double expected = default_valence(atom.element);
    if (atom.element == "C")
      expected -= std::abs(atom.formal_charge);
    else
      expected += atom.formal_charge;
    if (valence[static_cast<size_t>(a)] < expected - 1e-9
        && h_neighbors[static_cast<size_t>(a)] == 0)
      fail(rec.first_line_no + 4 + static_cast<size_t>(a), id,
           "atom " + std::to_string(a + 1) + " (" + atom.element
               + ") has under-filled valence and no explicit hydrogens");
  }

  for (int a = 0; a < natoms; ++a)
    for (int b = a + 1; b < natoms; ++b)
      if (distance(mol.atoms[static_cast<size_t>(a)].position,
                   mol.atoms[static_cast<size_t>(b)].position)
          < kMinAtomSeparation)
        fail(rec.first_line_no, id, "degenerate geometry: atoms "
             + std::to_string(a + 1) + " and " + std::to_string(b + 1)
             + " are closer than 0.3 A");

  return mol;
}

}  // namespace

std::vector<Molecule> parse_sdf(std::string_view text) {
  std::vector<RecordLines> records;
  RecordLines current;
  current.first_line_no = 1;

  size_t line_no = 0;
  size_t start = 0;
  while (start <= text.size()) {
    size_t end = text.find('\n', start);
    std::string_view raw = end == std::string_view::npos
                               ? text.substr(start)
                               : text.substr(start, end - start);
    ++line_no;
    if (!raw.empty() && raw.back() == '\r')
      raw.remove_suffix(1);
    if (strip(raw) == "$$$$") {
      records.push_back(std::move(current));
      current = RecordLines{};
      current.first_line_no = line_no + 1;
    } else {
      current.lines.emplace_back(raw);
    }
    if (end == std::string_view::npos)
      break;
    start = end + 1;
  }
  // A trailing block without "$$$$" (bare .mol file) is still a record.
  bool tail_has_content = false;
  for (const auto &l : current.lines)
    if (!strip(l).empty())
      tail_has_content = true;
  if (tail_has_content)
    records.push_back(std::move(current));

  std::vector<Molecule> molecules;
  molecules.reserve(records.size());
  for (size_t r = 0; r < records.size(); ++r)
    molecules.push_back(parse_record(records[r], r));
  return molecules;
}

std::string write_sdf(const Molecule &mol) {
  std::string out;
  out += mol.id;
  out += "\n  c3net\n\n";

  char buf[128];
  std::snprintf(buf, sizeof(buf), "%3d%3d  0  0  0  0  0  0  0  0999 V2000\n",
                mol.atom_count(), mol.bond_count());
  out += buf;

  for (const auto &atom : mol.atoms) {
    std::snprintf(buf, sizeof(buf),
                  "%10.4f%10.4f%10.4f %-3s 0  0  0  0  0  0  0  0  0  0  0  0\n",
                  atom.position.x, atom.position.y, atom.position.z,
                  atom.element.c_str());
    out += buf;
  }
  for (const auto &bond : mol.bonds) {
    std::snprintf(buf, sizeof(buf), "%3d%3d%3d  0\n", bond.i + 1, bond.j + 1,
                  static_cast<int>(bond.order));
    out += buf;
  }

  std::vector<std::pair<int, int>> charges;
  for (int a = 0; a < mol.atom_count(); ++a)
    if (mol.atoms[static_cast<size_t>(a)].formal_charge != 0)
      charges.push_back({ a + 1, mol.atoms[static_cast<size_t>(a)].formal_charge });
  for (size_t k = 0; k < charges.size(); k += 8) {
    size_t n = std::min<size_t>(8, charges.size() - k);
    std::snprintf(buf, sizeof(buf), "M  CHG%3d", static_cast<int>(n));
    out += buf;
    for (size_t c = k; c < k + n; ++c) {
      std::snprintf(buf, sizeof(buf), "%4d%4d", charges[c].first,
                    charges[c].second);
      out += buf;
    }
    out += "\n";
  }
  out += "M  END\n$$$$\n";
  return out;
}

}  // namespace c3net
