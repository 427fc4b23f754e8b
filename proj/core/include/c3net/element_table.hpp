//
// Project c3net - Copyright 2026 c3net developers.
// SPDX-License-Identifier: Apache-2.0
//
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>

namespace c3net {

struct ElementInfo {
  double vdw_radius = 0;  // angstrom
  int atomic_number = 0;
  int default_valence = 0;
};

/// Reference data for the ten supported elements. Loaded from a TSV data
/// file whose checksum is recorded in checkpoints: the radii shape the SAS
/// and are therefore part of the effective model.
class ElementTable {
public:
  /// Parses TSV with columns symbol, vdw_radius_angstrom, atomic_number,
  /// default_valence. Requires all ten supported elements and positive radii.
  static ElementTable from_tsv(std::string_view text, uint64_t checksum);
  static ElementTable load(const std::string &path);

  bool supported(std::string_view element) const;
  double vdw_radius(std::string_view element) const;
  const ElementInfo &info(std::string_view element) const;

  uint64_t checksum() const { return checksum_; }

  static const char *const kSupported[10];

private:
  std::map<std::string, ElementInfo, std::less<>> elements_;
  uint64_t checksum_ = 0;
};

}  // namespace c3net
