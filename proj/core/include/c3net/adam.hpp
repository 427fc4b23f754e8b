//
// Project c3net - Copyright 2026 c3net developers.
// SPDX-License-Identifier: Apache-2.0
//
#pragma once

#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "c3net/errors.hpp"
#include "c3net/tensor.hpp"

namespace c3net {

/// One named parameter the optimizer may update in place.
template <class S>
struct ParamUpdate {
  std::string name;
  Tensor<S> *value = nullptr;
  const Tensor<S> *grad = nullptr;
};

/// Adam with bias-corrected moments. Moment buffers are keyed by parameter
/// name so the set of parameters may be rebuilt every batch.
template <class S>
class Adam {
public:
  explicit Adam(double lr, double beta1 = 0.9, double beta2 = 0.999,
                double epsilon = 1e-8)
      : lr_(lr), beta1_(beta1), beta2_(beta2), epsilon_(epsilon) { }

  int64_t step_count() const { return t_; }
  double learning_rate() const { return lr_; }

  /// Applies one update to every listed parameter. Aborts (NumericError)
  /// before touching anything if any gradient is non-finite.
  void step(const std::vector<ParamUpdate<S>> &params) {
    for (const auto &p : params)
      if (!p.grad->all_finite())
        throw NumericError("non-finite gradient for parameter '" + p.name + "'");

    ++t_;
    const double bc1 = 1.0 - std::pow(beta1_, static_cast<double>(t_));
    const double bc2 = 1.0 - std::pow(beta2_, static_cast<double>(t_));
    for (const auto &p : params) {
      State &st = states_[p.name];
      if (st.m.data.empty()) {
        st.m = Tensor<S>::zeros(p.value->shape);
        st.v = Tensor<S>::zeros(p.value->shape);
      }
      if (!st.m.same_shape(*p.value))
        throw DataError("Adam state shape mismatch for parameter '" + p.name + "'");
      for (size_t k = 0; k < p.value->data.size(); ++k) {
        double g = static_cast<double>(p.grad->data[k]);
        double m = beta1_ * static_cast<double>(st.m.data[k]) + (1.0 - beta1_) * g;
        double v = beta2_ * static_cast<double>(st.v.data[k]) + (1.0 - beta2_) * g * g;
        st.m.data[k] = static_cast<S>(m);
        st.v.data[k] = static_cast<S>(v);
        double update = lr_ * (m / bc1) / (std::sqrt(v / bc2) + epsilon_);
        p.value->data[k] = static_cast<S>(static_cast<double>(p.value->data[k])
                                          - update);
      }
      if (!p.value->all_finite())
        throw NumericError("parameter '" + p.name + "' became non-finite");
    }
  }

private:
  struct State {
    Tensor<S> m;
    Tensor<S> v;
  };

  double lr_;
  double beta1_;
  double beta2_;
  double epsilon_;
  int64_t t_ = 0;
  std::map<std::string, State> states_;
};

}  // namespace c3net
