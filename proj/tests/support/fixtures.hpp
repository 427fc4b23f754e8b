//
// Project c3net - Copyright 2026 c3net developers.
// SPDX-License-Identifier: Apache-2.0
//
#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "c3net/molecule.hpp"
#include "c3net/rng.hpp"

namespace c3net::testing {

inline std::string data_dir() { return C3NET_TEST_DATA_DIR; }

// Hand-written V2000 records used across the suites.

inline const char *kMethaneSdf =
    "methane\n"
    "  test\n"
    "\n"
    "  5  4  0  0  0  0  0  0  0  0999 V2000\n"
    "    0.0000    0.0000    0.0000 C   0  0  0  0  0  0  0  0  0  0  0  0\n"
    "    0.6293    0.6293    0.6293 H   0  0  0  0  0  0  0  0  0  0  0  0\n"
    "    0.6293   -0.6293   -0.6293 H   0  0  0  0  0  0  0  0  0  0  0  0\n"
    "   -0.6293    0.6293   -0.6293 H   0  0  0  0  0  0  0  0  0  0  0  0\n"
    "   -0.6293   -0.6293    0.6293 H   0  0  0  0  0  0  0  0  0  0  0  0\n"
    "  1  2  1  0\n"
    "  1  3  1  0\n"
    "  1  4  1  0\n"
    "  1  5  1  0\n"
    "M  END\n"
    "$$$$\n";

inline const char *kEtheneSdf =
    "ethene\n"
    "  test\n"
    "\n"
    "  6  5  0  0  0  0  0  0  0  0999 V2000\n"
    "    0.0000    0.0000    0.0000 C   0  0  0  0  0  0  0  0  0  0  0  0\n"
    "    1.3400    0.0000    0.0000 C   0  0  0  0  0  0  0  0  0  0  0  0\n"
    "   -0.5600    0.9200    0.0000 H   0  0  0  0  0  0  0  0  0  0  0  0\n"
    "   -0.5600   -0.9200    0.0000 H   0  0  0  0  0  0  0  0  0  0  0  0\n"
    "    1.9000    0.9200    0.0000 H   0  0  0  0  0  0  0  0  0  0  0  0\n"
    "    1.9000   -0.9200    0.0000 H   0  0  0  0  0  0  0  0  0  0  0  0\n"
    "  1  2  2  0\n"
    "  1  3  1  0\n"
    "  1  4  1  0\n"
    "  2  5  1  0\n"
    "  2  6  1  0\n"
    "M  END\n"
    "$$$$\n";

/// Permutes atoms (perm[i] = new index of old atom i) and remaps bonds.
inline Molecule permute_molecule(const Molecule &mol, const std::vector<int> &perm) {
  Molecule out;
  out.id = mol.id;
  out.conformer_group = mol.conformer_group;
  out.atoms.resize(mol.atoms.size());
  for (size_t i = 0; i < mol.atoms.size(); ++i)
    out.atoms[static_cast<size_t>(perm[i])] = mol.atoms[i];
  for (const auto &b : mol.bonds)
    out.bonds.push_back({ perm[static_cast<size_t>(b.i)],
                          perm[static_cast<size_t>(b.j)], b.order });
  return out;
}

inline std::vector<int> random_permutation(int n, Rng &rng) {
  std::vector<int> perm(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i)
    perm[static_cast<size_t>(i)] = i;
  rng.shuffle(perm);
  return perm;
}

/// Random rotation matrix (Gram-Schmidt of random vectors) plus translation.
struct RigidMotion {
  double r[3][3];
  Vec3 t;

  Vec3 apply(const Vec3 &p) const {
    return { r[0][0] * p.x + r[0][1] * p.y + r[0][2] * p.z + t.x,
             r[1][0] * p.x + r[1][1] * p.y + r[1][2] * p.z + t.y,
             r[2][0] * p.x + r[2][1] * p.y + r[2][2] * p.z + t.z };
  }
};

inline RigidMotion random_rigid_motion(Rng &rng) {
  Vec3 a{ rng.normal(), rng.normal(), rng.normal() };
  Vec3 b{ rng.normal(), rng.normal(), rng.normal() };
  a = a.normalized();
  b = (b - a * b.dot(a)).normalized();
  Vec3 c = a.cross(b);
  RigidMotion m;
  m.r[0][0] = a.x; m.r[1][0] = a.y; m.r[2][0] = a.z;
  m.r[0][1] = b.x; m.r[1][1] = b.y; m.r[2][1] = b.z;
  m.r[0][2] = c.x; m.r[1][2] = c.y; m.r[2][2] = c.z;
  m.t = { rng.uniform(-5, 5), rng.uniform(-5, 5), rng.uniform(-5, 5) };
  return m;
}

inline Molecule transform_molecule(const Molecule &mol, const RigidMotion &motion) {
  Molecule out = mol;
  for (auto &atom : out.atoms)
    atom.position = motion.apply(atom.position);
  return out;
}

}  // namespace c3net::testing
