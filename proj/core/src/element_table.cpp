//
// Project c3net - Copyright 2026 c3net developers.
// SPDX-License-Identifier: Apache-2.0
//
#include "c3net/element_table.hpp"

#include "c3net/checksum.hpp"
#include "c3net/errors.hpp"
#include "c3net/strings.hpp"

namespace c3net {

const char *const ElementTable::kSupported[10] = { "H",  "C", "N",  "O",  "F",
                                                   "P",  "S", "Cl", "Br", "I" };

ElementTable ElementTable::from_tsv(std::string_view text, uint64_t checksum) {
  ElementTable table;
  table.checksum_ = checksum;

  size_t line_no = 0;
  for (const auto &raw : split(text, '\n')) {
    ++line_no;
    auto line = strip(raw);
    if (line.empty() || line.front() == '#')
      continue;
    auto fields = split(line, '\t');
    if (fields.size() != 4)
      throw DataError("element table line " + std::to_string(line_no)
                      + ": expected 4 tab-separated fields");
    if (strip(fields[0]) == "symbol")
      continue;  // header
    ElementInfo info;
    info.vdw_radius = parse_double(fields[1], "vdw_radius_angstrom");
    info.atomic_number = static_cast<int>(parse_int(fields[2], "atomic_number"));
    info.default_valence = static_cast<int>(parse_int(fields[3], "default_valence"));
    if (info.vdw_radius <= 0)
      throw DataError("element table line " + std::to_string(line_no)
                      + ": radius must be positive");
    table.elements_.emplace(std::string(strip(fields[0])), info);
  }

  for (const char *symbol : kSupported)
    if (!table.elements_.count(symbol))
      throw DataError("element table is missing required element "
                      + std::string(symbol));
  return table;
}

ElementTable ElementTable::load(const std::string &path) {
  std::string text = read_file(path);
  return from_tsv(text, checksum_bytes(text));
}

bool ElementTable::supported(std::string_view element) const {
  return elements_.find(element) != elements_.end();
}

const ElementInfo &ElementTable::info(std::string_view element) const {
  auto it = elements_.find(element);
  if (it == elements_.end())
    throw DataError("unknown element: '" + std::string(element) + "'");
  return it->second;
}

double ElementTable::vdw_radius(std::string_view element) const {
  return info(element).vdw_radius;
}

}  // namespace c3net
