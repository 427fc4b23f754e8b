//
// Project c3net - Copyright 2026 c3net developers.
// SPDX-License-Identifier: Apache-2.0
//
#include "c3net/sas.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "c3net/errors.hpp"

namespace c3net {
namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kOcclusionSlack = 1e-9;

struct Frame {
  Vec3 e1{ 1, 0, 0 }, e2{ 0, 1, 0 }, e3{ 0, 0, 1 };
};

/// Orthonormal frame from the molecule's own geometry: axes point at the
/// nearest other atoms. Built from positions only, so the frame -- and with
/// it the whole lattice -- co-rotates under any rigid motion of the
/// molecule. Geometric sort keys are quantized to 1e-6 A: idealized
/// geometries carry mathematically equal distances that differ only in the
/// last float bits, and re-rounding under a rotation must not flip the
/// choice of reference atom. The final index tie-break is rotation-stable
/// (rotations do not renumber atoms) and only fires between candidates
/// whose quantized geometry is identical. For collinear or isolated atoms
/// the remaining axes fall back to canonical directions; only distances
/// reach the model, and those are insensitive to spin about the established
/// axis in such geometries.
Frame atom_frame(const Molecule &mol, int atom, const Vec3 &centroid) {
  const Vec3 &center = mol.atoms[static_cast<size_t>(atom)].position;

  auto quantize = [](double v) {
    return static_cast<int64_t>(std::llround(v * 1e6));
  };

  struct Candidate {
    int64_t dist_q;
    int64_t centroid_q;
    const std::string *element;
    int index;
    Vec3 dir;
  };
  std::vector<Candidate> candidates;
  for (int b = 0; b < mol.atom_count(); ++b) {
    if (b == atom)
      continue;
    Vec3 d = mol.atoms[static_cast<size_t>(b)].position - center;
    double dist = d.norm();
    if (dist < 1e-6)
      continue;
    candidates.push_back({ quantize(dist),
                           quantize(distance(
                               mol.atoms[static_cast<size_t>(b)].position,
                               centroid)),
                           &mol.atoms[static_cast<size_t>(b)].element, b,
                           d * (1.0 / dist) });
  }
  std::sort(candidates.begin(), candidates.end(),
            [](const Candidate &a, const Candidate &b) {
              if (a.dist_q != b.dist_q)
                return a.dist_q < b.dist_q;
              if (*a.element != *b.element)
                return *a.element < *b.element;
              if (a.centroid_q != b.centroid_q)
                return a.centroid_q < b.centroid_q;
              return a.index < b.index;
            });

  Frame frame;
  if (candidates.empty())
    return frame;
  frame.e1 = candidates[0].dir;

  bool have_e2 = false;
  for (size_t k = 1; k < candidates.size(); ++k) {
    Vec3 rej = candidates[k].dir - frame.e1 * candidates[k].dir.dot(frame.e1);
    if (rej.norm() > 1e-6) {
      frame.e2 = rej.normalized();
      have_e2 = true;
      break;
    }
  }
  if (!have_e2) {
    // Collinear neighborhood: any perpendicular will do; pick the canonical
    // axis least aligned with e1.
    Vec3 axis{ 1, 0, 0 };
    double ax = std::abs(frame.e1.x), ay = std::abs(frame.e1.y),
           az = std::abs(frame.e1.z);
    if (ay <= ax && ay <= az)
      axis = { 0, 1, 0 };
    else if (az <= ax && az <= ay)
      axis = { 0, 0, 1 };
    frame.e2 = (axis - frame.e1 * axis.dot(frame.e1)).normalized();
  }
  frame.e3 = frame.e1.cross(frame.e2);
  return frame;
}

/// Canonical Fibonacci lattice directions on the unit sphere.
std::vector<Vec3> fibonacci_directions(int n) {
  std::vector<Vec3> dirs;
  dirs.reserve(static_cast<size_t>(n));
  const double golden_angle = kPi * (3.0 - std::sqrt(5.0));
  for (int k = 0; k < n; ++k) {
    double z = 1.0 - (2.0 * k + 1.0) / n;
    double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    double phi = golden_angle * k;
    dirs.push_back({ r * std::cos(phi), r * std::sin(phi), z });
  }
  return dirs;
}

}  // namespace

SurfacePoints sas_points(const Molecule &mol, const ElementTable &elements,
                         double probe, int n_per_atom) {
  if (probe <= 0)
    throw UsageError("probe radius must be positive");
  if (n_per_atom < 4)
    throw UsageError("points per atom must be at least 4");

  const int n_atoms = mol.atom_count();
  SurfacePoints out;
  out.probe_radius = probe;
  out.points_per_atom = n_per_atom;

  std::vector<double> sas_radius(static_cast<size_t>(n_atoms));
  for (int a = 0; a < n_atoms; ++a)
    sas_radius[static_cast<size_t>(a)] =
        elements.vdw_radius(mol.atoms[static_cast<size_t>(a)].element) + probe;

  Vec3 centroid{};
  for (const auto &atom : mol.atoms)
    centroid = centroid + atom.position;
  if (n_atoms > 0)
    centroid = centroid * (1.0 / n_atoms);

  const std::vector<Vec3> lattice = fibonacci_directions(n_per_atom);

  double area = 0;
  for (int a = 0; a < n_atoms; ++a) {
    const Vec3 &center = mol.atoms[static_cast<size_t>(a)].position;
    const double radius = sas_radius[static_cast<size_t>(a)];
    const Frame frame = atom_frame(mol, a, centroid);

    int kept = 0;
    for (const Vec3 &u : lattice) {
      Vec3 dir = frame.e1 * u.x + frame.e2 * u.y + frame.e3 * u.z;
      Vec3 p = center + dir * radius;
      bool occluded = false;
      for (int b = 0; b < n_atoms; ++b) {
        if (b == a)
          continue;
        if (distance(p, mol.atoms[static_cast<size_t>(b)].position)
            < sas_radius[static_cast<size_t>(b)] - kOcclusionSlack) {
          occluded = true;
          break;
        }
      }
      if (!occluded) {
        out.positions.push_back(p);
        out.owner_atom.push_back(a);
        ++kept;
      }
    }
    area += 4.0 * kPi * radius * radius * kept / n_per_atom;
  }
  out.approx_area = area;

  if (out.positions.empty())
    throw DataError("empty surface: no sample point survives occlusion for '"
                    + mol.id + "'");
  return out;
}

std::string surface_dump(const SurfacePoints &points) {
  std::string out;
  char buf[128];
  for (size_t k = 0; k < points.positions.size(); ++k) {
    const Vec3 &p = points.positions[k];
    std::snprintf(buf, sizeof(buf), "%.6f %.6f %.6f %d\n", p.x, p.y, p.z,
                  points.owner_atom[k]);
    out += buf;
  }
  return out;
}

}  // namespace c3net
