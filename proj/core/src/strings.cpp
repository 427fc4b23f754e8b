//
// Project c3net - Copyright 2026 c3net developers.
// SPDX-License-Identifier: Apache-2.0
//
#include "c3net/strings.hpp"

#include <charconv>
#include <cstring>
#include <fstream>
#include <sstream>

#include "c3net/errors.hpp"

namespace c3net {

std::string_view strip(std::string_view s) {
  size_t b = 0;
  size_t e = s.size();
  while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r' || s[b] == '\n'))
    ++b;
  while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r'
                   || s[e - 1] == '\n'))
    --e;
  return s.substr(b, e - b);
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  size_t start = 0;
  while (true) {
    size_t pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      out.emplace_back(s.substr(start));
      return out;
    }
    out.emplace_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

namespace {

template <class T>
std::string to_shortest(T v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace

std::string format_float(float v) { return to_shortest(v); }
std::string format_double(double v) { return to_shortest(v); }

double parse_double(std::string_view field, std::string_view what) {
  auto f = strip(field);
  double v = 0;
  auto res = std::from_chars(f.data(), f.data() + f.size(), v);
  if (res.ec != std::errc() || res.ptr != f.data() + f.size())
    throw DataError("cannot parse number for " + std::string(what) + ": '"
                    + std::string(field) + "'");
  return v;
}

int64_t parse_int(std::string_view field, std::string_view what) {
  auto f = strip(field);
  int64_t v = 0;
  auto res = std::from_chars(f.data(), f.data() + f.size(), v);
  if (res.ec != std::errc() || res.ptr != f.data() + f.size())
    throw DataError("cannot parse integer for " + std::string(what) + ": '"
                    + std::string(field) + "'");
  return v;
}

std::string read_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw DataError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return std::move(ss).str();
}

void write_file(const std::string &path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out)
    throw DataError("cannot open file for writing: " + path);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out)
    throw DataError("short write: " + path);
}

void append_f32_le(std::string &out, float v) {
  uint32_t bits;
  static_assert(sizeof(bits) == sizeof(v));
  std::memcpy(&bits, &v, sizeof(bits));
  out.push_back(static_cast<char>(bits & 0xff));
  out.push_back(static_cast<char>((bits >> 8) & 0xff));
  out.push_back(static_cast<char>((bits >> 16) & 0xff));
  out.push_back(static_cast<char>((bits >> 24) & 0xff));
}

float read_f32_le(const char *bytes) {
  uint32_t bits = static_cast<uint32_t>(static_cast<unsigned char>(bytes[0]))
                  | static_cast<uint32_t>(static_cast<unsigned char>(bytes[1])) << 8
                  | static_cast<uint32_t>(static_cast<unsigned char>(bytes[2])) << 16
                  | static_cast<uint32_t>(static_cast<unsigned char>(bytes[3])) << 24;
  float v;
  std::memcpy(&v, &bits, sizeof(v));
  return v;
}

}  // namespace c3net
