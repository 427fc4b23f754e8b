//
// Project c3net - Copyright 2026 c3net developers.
// SPDX-License-Identifier: Apache-2.0
//
#include "c3net/checksum.hpp"

#include <charconv>

#include "c3net/errors.hpp"
#include "c3net/strings.hpp"

namespace c3net {

uint64_t checksum_bytes(std::string_view bytes) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : bytes) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

uint64_t checksum_file(const std::string &path) {
  return checksum_bytes(read_file(path));
}

std::string checksum_hex(uint64_t value) {
  static const char digits[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<size_t>(i)] = digits[value & 0xf];
    value >>= 4;
  }
  return out;
}

uint64_t parse_checksum_hex(std::string_view hex) {
  auto h = strip(hex);
  uint64_t v = 0;
  auto res = std::from_chars(h.data(), h.data() + h.size(), v, 16);
  if (res.ec != std::errc() || res.ptr != h.data() + h.size())
    throw DataError("malformed checksum: '" + std::string(hex) + "'");
  return v;
}

}  // namespace c3net
