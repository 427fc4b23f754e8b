//
// Project c3net - Copyright 2026 c3net developers.
// SPDX-License-Identifier: Apache-2.0
//
#pragma once

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "c3net/errors.hpp"
#include "c3net/tensor.hpp"

namespace c3net {

struct GradCheckReport {
  double max_rel_err = 0;
  std::string worst_param;
  int64_t worst_coord = -1;
};

/// Central finite differences against analytic gradients, in 64-bit.
///
/// `params` are the tensors perturbed in place; `eval` recomputes the scalar
/// objective at the current parameter values; `analytic` returns one gradient
/// tensor per parameter (computed however the caller likes, typically one
/// tape backward). Relative error uses max(|analytic|, |numeric|, 1e-8) as
/// denominator.
template <class NamedParam>
GradCheckReport grad_check(std::vector<NamedParam> params,
                           const std::function<double()> &eval,
                           const std::function<std::vector<Tensor64>()> &analytic,
                           double h = 1e-5) {
  if (h < 1e-6 || h > 1e-4)
    throw UsageError("grad_check step must lie in [1e-6, 1e-4]");

  std::vector<Tensor64> grads = analytic();
  if (grads.size() != params.size())
    throw DataError("grad_check: analytic() returned " + std::to_string(grads.size())
                    + " gradients for " + std::to_string(params.size())
                    + " parameters");

  GradCheckReport report;
  for (size_t p = 0; p < params.size(); ++p) {
    Tensor64 &theta = *params[p].value;
    if (!grads[p].same_shape(theta))
      throw DataError("grad_check: gradient shape mismatch for '"
                      + params[p].name + "'");
    for (size_t k = 0; k < theta.data.size(); ++k) {
      const double saved = theta.data[k];
      theta.data[k] = saved + h;
      double f_plus = eval();
      theta.data[k] = saved - h;
      double f_minus = eval();
      theta.data[k] = saved;
      if (!std::isfinite(f_plus) || !std::isfinite(f_minus))
        throw NumericError("grad_check: non-finite objective while perturbing '"
                           + params[p].name + "'");
      double numeric = (f_plus - f_minus) / (2.0 * h);
      double exact = grads[p].data[k];
      double denom = std::max({ std::abs(exact), std::abs(numeric), 1e-8 });
      double rel = std::abs(exact - numeric) / denom;
      if (rel > report.max_rel_err) {
        report.max_rel_err = rel;
        report.worst_param = params[p].name;
        report.worst_coord = static_cast<int64_t>(k);
      }
    }
  }
  return report;
}

/// Named handle used by grad_check callers.
struct NamedTensor64 {
  std::string name;
  Tensor64 *value = nullptr;
};

}  // namespace c3net
