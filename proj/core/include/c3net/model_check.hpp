//
// Project c3net - Copyright 2026 c3net developers.
// SPDX-License-Identifier: Apache-2.0
//
#pragma once

#include <cstdint>

#include "c3net/grad_check.hpp"
#include "c3net/molecule.hpp"
#include "c3net/sas.hpp"

namespace c3net {

/// The bundled 3-atom fixture (a water geometry) and its fixed 8-point
/// environment used by the full-model finite-difference suite.
Molecule grad_check_molecule();
SurfacePoints grad_check_surface();

/// Builds a compact model (fresh seeded parameters, one trainable Q) on the
/// bundled fixture and runs central finite differences against the tape
/// gradients for every learnable parameter, in 64-bit. The returned report
/// carries the maximum relative error and the parameter it occurred in.
GradCheckReport full_model_grad_check(uint64_t seed, double step = 1e-5);

}  // namespace c3net
