//
// Project c3net - Copyright 2026 c3net developers.
// SPDX-License-Identifier: Apache-2.0
//
#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace c3net {

std::string_view strip(std::string_view s);
std::vector<std::string> split(std::string_view s, char sep);

/// Shortest decimal form that round-trips the exact value (std::to_chars).
/// All text formats in the project print floats this way so that a
/// write/read cycle is bit-exact.
std::string format_float(float v);
std::string format_double(double v);

/// Strict numeric parsing: the whole field must be consumed.
double parse_double(std::string_view field, std::string_view what);
int64_t parse_int(std::string_view field, std::string_view what);

/// Reads an entire file into memory; throws DataError on failure.
std::string read_file(const std::string &path);
void write_file(const std::string &path, std::string_view content);

/// Little-endian IEEE-754 32-bit encoding used by the binary blobs in
/// Type2Vec tables and checkpoints.
void append_f32_le(std::string &out, float v);
float read_f32_le(const char *bytes);

}  // namespace c3net
