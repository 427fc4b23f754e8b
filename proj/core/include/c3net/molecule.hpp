//
// Project c3net - Copyright 2026 c3net developers.
// SPDX-License-Identifier: Apache-2.0
//
#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

namespace c3net {

struct Vec3 {
  double x = 0, y = 0, z = 0;

  Vec3 operator+(const Vec3 &o) const { return { x + o.x, y + o.y, z + o.z }; }
  Vec3 operator-(const Vec3 &o) const { return { x - o.x, y - o.y, z - o.z }; }
  Vec3 operator*(double s) const { return { x * s, y * s, z * s }; }

  double dot(const Vec3 &o) const { return x * o.x + y * o.y + z * o.z; }
  Vec3 cross(const Vec3 &o) const {
    return { y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x };
  }
  double norm() const { return std::sqrt(dot(*this)); }
  Vec3 normalized() const {
    double n = norm();
    return { x / n, y / n, z / n };
  }
};

inline double distance(const Vec3 &a, const Vec3 &b) { return (a - b).norm(); }

enum class BondOrder : uint8_t { kSingle = 1, kDouble = 2, kTriple = 3, kAromatic = 4 };

struct Atom {
  std::string element;
  Vec3 position;  // angstrom
  int formal_charge = 0;
};

struct Bond {
  int i = 0;
  int j = 0;
  BondOrder order = BondOrder::kSingle;
};

/// A solute: chemical graph plus 3D coordinates. Hydrogens are explicit.
struct Molecule {
  std::string id;
  std::string conformer_group;  // which measurement this conformer belongs to
  std::vector<Atom> atoms;
  std::vector<Bond> bonds;

  int atom_count() const { return static_cast<int>(atoms.size()); }
  int bond_count() const { return static_cast<int>(bonds.size()); }
};

}  // namespace c3net
