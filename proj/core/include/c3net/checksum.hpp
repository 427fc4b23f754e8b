//
// Project c3net - Copyright 2026 c3net developers.
// SPDX-License-Identifier: Apache-2.0
//
#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace c3net {

/// FNV-1a over a byte buffer. Used to fingerprint the data files (element
/// radii, Type2Vec corpus/table) whose content is part of the effective
/// model and therefore recorded in checkpoints.
uint64_t checksum_bytes(std::string_view bytes);

/// Checksum of a whole file. Throws DataError if the file cannot be read.
uint64_t checksum_file(const std::string &path);

/// Lower-case 16-digit hex rendering used in file headers.
std::string checksum_hex(uint64_t value);
uint64_t parse_checksum_hex(std::string_view hex);

}  // namespace c3net
