//
// Project c3net - Copyright 2026 c3net developers.
// SPDX-License-Identifier: Apache-2.0
//
#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

namespace c3net {

/// Dense row-major tensor. float instantiation is the storage/training
/// precision, double the gradient-checking precision.
template <class S>
struct Tensor {
  std::vector<int64_t> shape;
  std::vector<S> data;

  Tensor() = default;
  Tensor(std::vector<int64_t> shp, std::vector<S> values)
      : shape(std::move(shp)), data(std::move(values)) { }

  static int64_t numel_of(const std::vector<int64_t> &shape) {
    int64_t n = 1;
    for (int64_t e : shape)
      n *= e;
    return n;
  }

  static Tensor zeros(std::vector<int64_t> shape) {
    Tensor t;
    t.data.assign(static_cast<size_t>(numel_of(shape)), S(0));
    t.shape = std::move(shape);
    return t;
  }

  static Tensor full(std::vector<int64_t> shape, S value) {
    Tensor t;
    t.data.assign(static_cast<size_t>(numel_of(shape)), value);
    t.shape = std::move(shape);
    return t;
  }

  static Tensor scalar(S value) { return Tensor({ 1 }, { value }); }

  int64_t numel() const { return static_cast<int64_t>(data.size()); }
  int64_t rows() const { return shape.empty() ? 1 : shape[0]; }
  int64_t cols() const { return shape.size() < 2 ? 1 : shape[1]; }

  S &at(int64_t r, int64_t c) {
    return data[static_cast<size_t>(r * cols() + c)];
  }
  S at(int64_t r, int64_t c) const {
    return data[static_cast<size_t>(r * cols() + c)];
  }

  bool all_finite() const {
    for (S v : data)
      if (!std::isfinite(static_cast<double>(v)))
        return false;
    return true;
  }

  bool same_shape(const Tensor &other) const { return shape == other.shape; }

  template <class T>
  Tensor<T> cast() const {
    Tensor<T> out;
    out.shape = shape;
    out.data.reserve(data.size());
    for (S v : data)
      out.data.push_back(static_cast<T>(v));
    return out;
  }
};

template <class S>
std::string shape_string(const Tensor<S> &t) {
  std::string out = "[";
  for (size_t i = 0; i < t.shape.size(); ++i) {
    if (i)
      out += ", ";
    out += std::to_string(t.shape[i]);
  }
  return out + "]";
}

using Tensor32 = Tensor<float>;
using Tensor64 = Tensor<double>;

}  // namespace c3net
