//
// Project c3net - Copyright 2026 c3net developers.
// SPDX-License-Identifier: Apache-2.0
//
#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <string>
#include <tuple>
#include <vector>

#include "c3net/errors.hpp"
#include "c3net/tensor.hpp"

#ifndef C3NET_RBF_TEXTBOOK_FORM
#define C3NET_RBF_TEXTBOOK_FORM 0
#endif

namespace c3net {

/// Selected at compile time; the default squares the sigma-normalized
/// deviation, the alternate is the conventional Gaussian for ablation.
inline constexpr bool kRbfTextbookForm = C3NET_RBF_TEXTBOOK_FORM != 0;

inline double shifted_softplus_value(double x) {
  // ln(0.5 e^x + 0.5). Near zero the naive log1p(exp(x)) - ln2 cancels two
  // ~0.69 terms and leaves an absolute error floor of ~eps*ln2; rewriting
  // as x/2 + ln(cosh(x/2)) with cosh(u)-1 = 2 sinh^2(u/2) keeps the result
  // relatively accurate however small it is.
  if (x > 1.0)
    return x + std::log1p(std::exp(-x)) - 0.6931471805599453;
  if (x < -1.0)
    return std::log1p(std::exp(x)) - 0.6931471805599453;
  double s = std::sinh(0.25 * x);
  return 0.5 * x + std::log1p(2.0 * s * s);
}

inline double sigmoid_value(double x) {
  if (x >= 0)
    return 1.0 / (1.0 + std::exp(-x));
  double e = std::exp(x);
  return e / (1.0 + e);
}

/// Reverse-mode autodiff tape over dense tensors. A tape is rebuilt for
/// every forward pass (molecule sizes vary); ops only reference earlier
/// slots, so creation order is a topological order and backward() is a
/// single reverse sweep that touches each op exactly once.
///
/// Broadcasting is restricted to one case: a right operand whose shape
/// equals the left operand's shape minus the leading axis. Everything else
/// is a hard shape error.
template <class S>
class Tape {
public:
  using Id = int32_t;

  Id leaf(Tensor<S> value, bool requires_grad = false, std::string name = {}) {
    return push(std::move(value), requires_grad, OpKind::kLeaf, -1, -1,
                std::move(name));
  }

  Id constant(Tensor<S> value) { return leaf(std::move(value), false); }

  Id add(Id a, Id b) { return binary_elementwise(OpKind::kAdd, a, b); }
  Id sub(Id a, Id b) { return binary_elementwise(OpKind::kSub, a, b); }
  Id mul(Id a, Id b) { return binary_elementwise(OpKind::kMul, a, b); }

  Id matmul(Id a, Id b) {
    const Tensor<S> &va = value(a);
    const Tensor<S> &vb = value(b);
    if (va.shape.size() != 2 || vb.shape.size() != 2 || va.shape[1] != vb.shape[0])
      throw DataError("matmul shape mismatch: " + shape_string(va) + " x "
                      + shape_string(vb));
    const int64_t r = va.shape[0], m = va.shape[1], c = vb.shape[1];
    Tensor<S> out = Tensor<S>::zeros({ r, c });
    for (int64_t i = 0; i < r; ++i)
      for (int64_t k = 0; k < m; ++k) {
        S aik = va.at(i, k);
        for (int64_t j = 0; j < c; ++j)
          out.at(i, j) += aik * vb.at(k, j);
      }
    return push(std::move(out), requires_grad(a) || requires_grad(b), OpKind::kMatmul, a, b);
  }

  /// Sums along one axis; removing the axis of a rank-1 tensor yields a
  /// scalar of shape [1]. Accumulation runs in index order.
  Id sum_axis(Id a, int axis) {
    const Tensor<S> &va = value(a);
    const int rank = static_cast<int>(va.shape.size());
    if (axis < 0 || axis >= rank)
      throw DataError("sum_axis: axis " + std::to_string(axis)
                      + " out of range for " + shape_string(va));
    std::vector<int64_t> out_shape;
    for (int d = 0; d < rank; ++d)
      if (d != axis)
        out_shape.push_back(va.shape[d]);
    if (out_shape.empty())
      out_shape.push_back(1);
    Tensor<S> out = Tensor<S>::zeros(out_shape);

    auto [outer, extent, inner] = axis_strides(va.shape, axis);
    for (int64_t o = 0; o < outer; ++o)
      for (int64_t k = 0; k < extent; ++k)
        for (int64_t i = 0; i < inner; ++i)
          out.data[static_cast<size_t>(o * inner + i)] +=
              va.data[static_cast<size_t>((o * extent + k) * inner + i)];
    Id id = push(std::move(out), requires_grad(a), OpKind::kSumAxis, a, -1);
    ops_.back().axis = axis;
    return id;
  }

  Id exp(Id a) {
    Tensor<S> out = value(a);
    for (S &v : out.data)
      v = static_cast<S>(std::exp(static_cast<double>(v)));
    return push(std::move(out), requires_grad(a), OpKind::kExp, a, -1);
  }

  Id square(Id a) {
    Tensor<S> out = value(a);
    for (S &v : out.data)
      v = v * v;
    return push(std::move(out), requires_grad(a), OpKind::kSquare, a, -1);
  }

  Id scalar_mul(Id a, S c) {
    Tensor<S> out = value(a);
    for (S &v : out.data)
      v *= c;
    Id id = push(std::move(out), requires_grad(a), OpKind::kScalarMul, a, -1);
    ops_.back().scalar = c;
    return id;
  }

  Id shifted_softplus(Id a) {
    Tensor<S> out = value(a);
    for (S &v : out.data)
      v = static_cast<S>(shifted_softplus_value(static_cast<double>(v)));
    return push(std::move(out), requires_grad(a), OpKind::kShiftedSoftplus, a, -1);
  }

  /// Rows of a 2-D tensor selected by index; backward scatter-adds.
  Id gather_rows(Id a, std::vector<int32_t> idx) {
    const Tensor<S> &va = value(a);
    if (va.shape.size() != 2)
      throw DataError("gather_rows expects a 2-D tensor, got " + shape_string(va));
    const int64_t cols = va.shape[1];
    Tensor<S> out = Tensor<S>::zeros({ static_cast<int64_t>(idx.size()), cols });
    for (size_t k = 0; k < idx.size(); ++k) {
      if (idx[k] < 0 || idx[k] >= va.shape[0])
        throw DataError("gather_rows: index " + std::to_string(idx[k])
                        + " out of range for " + shape_string(va));
      for (int64_t c = 0; c < cols; ++c)
        out.at(static_cast<int64_t>(k), c) = va.at(idx[k], c);
    }
    Id id = push(std::move(out), requires_grad(a), OpKind::kGatherRows, a, -1);
    ops_.back().indices = std::move(idx);
    return id;
  }

  /// out[idx[k]] += a[k], accumulated in row order; backward gathers.
  Id scatter_add_rows(Id a, std::vector<int32_t> idx, int64_t out_rows) {
    const Tensor<S> &va = value(a);
    if (va.shape.size() != 2)
      throw DataError("scatter_add_rows expects a 2-D tensor, got "
                      + shape_string(va));
    if (static_cast<int64_t>(idx.size()) != va.shape[0])
      throw DataError("scatter_add_rows: " + std::to_string(idx.size())
                      + " indices for " + std::to_string(va.shape[0]) + " rows");
    const int64_t cols = va.shape[1];
    Tensor<S> out = Tensor<S>::zeros({ out_rows, cols });
    for (size_t k = 0; k < idx.size(); ++k) {
      if (idx[k] < 0 || idx[k] >= out_rows)
        throw DataError("scatter_add_rows: index " + std::to_string(idx[k])
                        + " out of range for " + std::to_string(out_rows) + " rows");
      for (int64_t c = 0; c < cols; ++c)
        out.at(idx[k], c) += va.at(static_cast<int64_t>(k), c);
    }
    Id id = push(std::move(out), requires_grad(a), OpKind::kScatterAddRows, a, -1);
    ops_.back().indices = std::move(idx);
    return id;
  }

  /// Repeats a rank-1 tensor as identical rows; backward sums over rows.
  Id broadcast_rows(Id a, int64_t rows) {
    const Tensor<S> &va = value(a);
    if (va.shape.size() != 1)
      throw DataError("broadcast_rows expects a rank-1 tensor, got "
                      + shape_string(va));
    const int64_t cols = va.shape[0];
    Tensor<S> out = Tensor<S>::zeros({ rows, cols });
    for (int64_t r = 0; r < rows; ++r)
      for (int64_t c = 0; c < cols; ++c)
        out.at(r, c) = va.data[static_cast<size_t>(c)];
    return push(std::move(out), requires_grad(a), OpKind::kBroadcastRows, a, -1);
  }

  Id reshape(Id a, std::vector<int64_t> shape) {
    const Tensor<S> &va = value(a);
    if (Tensor<S>::numel_of(shape) != va.numel())
      throw DataError("reshape: cannot view " + shape_string(va) + " as "
                      + std::to_string(Tensor<S>::numel_of(shape)) + " elements");
    Tensor<S> out = va;
    out.shape = std::move(shape);
    return push(std::move(out), requires_grad(a), OpKind::kReshape, a, -1);
  }

  /// Mean of elementwise squared differences; the scalar the trainer feeds
  /// to backward().
  Id mse(Id pred, Id target) {
    const Tensor<S> &vp = value(pred);
    const Tensor<S> &vt = value(target);
    if (!vp.same_shape(vt))
      throw DataError("mse shape mismatch: " + shape_string(vp) + " vs "
                      + shape_string(vt));
    double acc = 0;
    for (size_t k = 0; k < vp.data.size(); ++k) {
      double d = static_cast<double>(vp.data[k]) - static_cast<double>(vt.data[k]);
      acc += d * d;
    }
    Tensor<S> out = Tensor<S>::scalar(
        static_cast<S>(acc / static_cast<double>(vp.numel())));
    return push(std::move(out), requires_grad(pred) || requires_grad(target), OpKind::kMse,
                pred, target);
  }

  /// Continuous-filter convolution of per-point environment rows against
  /// Gaussian radial filters:
  ///
  ///   out[i,f] = sum_j s_rows[j,f] * w(dist[i,j]; mu[f], sigma[f])
  ///
  /// with w = exp(-((d-mu)/(2 sigma))^2) (or the conventional Gaussian under
  /// C3NET_RBF_TEXTBOOK_FORM). Fused so the (n x s x F) filter block is never
  /// materialized; backward recomputes the exponentials. cutoff <= 0 means
  /// every atom-point pair participates.
  Id rbf_conv(Id s_rows, std::shared_ptr<const Tensor<S>> dist, Id mu, Id sigma,
              S cutoff = S(0)) {
    const Tensor<S> &vs = value(s_rows);
    const Tensor<S> &vmu = value(mu);
    const Tensor<S> &vsig = value(sigma);
    if (vs.shape.size() != 2 || dist->shape.size() != 2
        || vs.shape[0] != dist->shape[1])
      throw DataError("rbf_conv shape mismatch: env rows " + shape_string(vs)
                      + " vs distances " + shape_string(*dist));
    const int64_t f_dim = vs.shape[1];
    if (vmu.shape != std::vector<int64_t>{ f_dim }
        || vsig.shape != std::vector<int64_t>{ f_dim })
      throw DataError("rbf_conv: mu/sigma must be rank-1 of length "
                      + std::to_string(f_dim));

    const int64_t n = dist->shape[0], s = dist->shape[1];
    Tensor<S> out = Tensor<S>::zeros({ n, f_dim });
    for (int64_t i = 0; i < n; ++i)
      for (int64_t j = 0; j < s; ++j) {
        S d = dist->at(i, j);
        if (cutoff > S(0) && d > cutoff)
          continue;
        for (int64_t f = 0; f < f_dim; ++f)
          out.at(i, f) += vs.at(j, f)
                          * filter_value(d, vmu.data[static_cast<size_t>(f)],
                                         vsig.data[static_cast<size_t>(f)]);
      }
    Id id = push(std::move(out), requires_grad(s_rows) || requires_grad(mu) || requires_grad(sigma),
                 OpKind::kRbfConv, s_rows, mu);
    ops_.back().c = sigma;
    ops_.back().dist = std::move(dist);
    ops_.back().scalar = cutoff;
    return id;
  }

  static S filter_value(S d, S mu, S sigma) {
    if (kRbfTextbookForm) {
      S u = d - mu;
      return static_cast<S>(
          std::exp(-static_cast<double>(u * u) / (2.0 * sigma * sigma)));
    }
    S z = (d - mu) / (S(2) * sigma);
    return static_cast<S>(std::exp(-static_cast<double>(z * z)));
  }

  /// Seeds d(root)/d(root) = 1 and sweeps the ops in reverse creation
  /// order, accumulating into every slot that requires grad.
  void backward(Id root) {
    const Tensor<S> &vroot = value(root);
    if (vroot.numel() != 1)
      throw DataError("backward root must be scalar, got " + shape_string(vroot));
    for (auto &slot : slots_)
      if (slot.requires_grad)
        slot.grad = Tensor<S>::zeros(slot.value.shape);
    if (!slot(root).requires_grad)
      return;  // no parameter feeds the root
    slot(root).grad.data[0] = S(1);

    for (size_t k = ops_.size(); k-- > 0;) {
      const OpRecord &op = ops_[k];
      if (!slot(op.out).requires_grad || op.kind == OpKind::kLeaf)
        continue;
      propagate(op);
    }
  }

  const Tensor<S> &value(Id id) const { return slots_[check(id)].value; }
  const Tensor<S> &grad(Id id) const {
    const Slot &s = slots_[check(id)];
    if (!s.requires_grad)
      throw DataError("slot does not track gradients"
                      + (s.name.empty() ? std::string() : ": " + s.name));
    return s.grad;
  }
  bool requires_grad(Id id) const { return slots_[check(id)].requires_grad; }
  size_t size() const { return slots_.size(); }

private:
  enum class OpKind {
    kLeaf,
    kAdd,
    kSub,
    kMul,
    kMatmul,
    kSumAxis,
    kExp,
    kSquare,
    kScalarMul,
    kShiftedSoftplus,
    kGatherRows,
    kScatterAddRows,
    kBroadcastRows,
    kReshape,
    kMse,
    kRbfConv,
  };

  struct Slot {
    Tensor<S> value;
    Tensor<S> grad;
    bool requires_grad = false;
    std::string name;
  };

  struct OpRecord {
    OpKind kind = OpKind::kLeaf;
    Id a = -1;
    Id b = -1;
    Id c = -1;  // third input (rbf_conv sigma)
    Id out = -1;
    int axis = 0;
    S scalar = S(0);
    bool broadcast_b = false;
    std::vector<int32_t> indices;
    std::shared_ptr<const Tensor<S>> dist;
  };

  size_t check(Id id) const {
    if (id < 0 || static_cast<size_t>(id) >= slots_.size())
      throw DataError("invalid tape slot id " + std::to_string(id));
    return static_cast<size_t>(id);
  }

  Slot &slot(Id id) { return slots_[check(id)]; }

  Id push(Tensor<S> value, bool requires_grad, OpKind kind, Id a, Id b,
          std::string name = {}) {
    Id id = static_cast<Id>(slots_.size());
    slots_.push_back(Slot{ std::move(value), {}, requires_grad, std::move(name) });
    OpRecord op;
    op.kind = kind;
    op.a = a;
    op.b = b;
    op.out = id;
    ops_.push_back(std::move(op));
    return id;
  }

  /// Equal shapes, or b's shape equals a's shape without the leading axis.
  Id binary_elementwise(OpKind kind, Id a, Id b) {
    const Tensor<S> &va = value(a);
    const Tensor<S> &vb = value(b);
    bool broadcast = false;
    if (!va.same_shape(vb)) {
      bool tail_match = va.shape.size() == vb.shape.size() + 1
                        && std::equal(vb.shape.begin(), vb.shape.end(),
                                      va.shape.begin() + 1);
      if (!tail_match)
        throw DataError(std::string(kind == OpKind::kAdd   ? "add"
                                    : kind == OpKind::kSub ? "sub"
                                                           : "mul")
                        + " shape mismatch: " + shape_string(va) + " vs "
                        + shape_string(vb));
      broadcast = true;
    }
    const int64_t inner = vb.numel();
    Tensor<S> out = va;
    for (int64_t k = 0; k < out.numel(); ++k) {
      S rhs = vb.data[static_cast<size_t>(broadcast ? k % inner : k)];
      S &v = out.data[static_cast<size_t>(k)];
      if (kind == OpKind::kAdd)
        v += rhs;
      else if (kind == OpKind::kSub)
        v -= rhs;
      else
        v *= rhs;
    }
    Id id = push(std::move(out), requires_grad(a) || requires_grad(b), kind, a, b);
    ops_.back().broadcast_b = broadcast;
    return id;
  }

  void accumulate(Id target, const Tensor<S> &delta) {
    Slot &s = slot(target);
    if (!s.requires_grad)
      return;
    for (size_t k = 0; k < s.grad.data.size(); ++k)
      s.grad.data[k] += delta.data[k];
  }

  void propagate(const OpRecord &op) {
    Slot &out = slot(op.out);
    const Tensor<S> &g = out.grad;
    switch (op.kind) {
    case OpKind::kLeaf:
      break;
    case OpKind::kAdd:
    case OpKind::kSub:
    case OpKind::kMul: {
      const Tensor<S> &va = value(op.a);
      const Tensor<S> &vb = value(op.b);
      const int64_t inner = vb.numel();
      if (requires_grad(op.a)) {
        Slot &sa = slot(op.a);
        for (int64_t k = 0; k < va.numel(); ++k) {
          S gk = g.data[static_cast<size_t>(k)];
          if (op.kind == OpKind::kMul)
            gk *= vb.data[static_cast<size_t>(op.broadcast_b ? k % inner : k)];
          sa.grad.data[static_cast<size_t>(k)] += gk;
        }
      }
      if (requires_grad(op.b)) {
        Slot &sb = slot(op.b);
        for (int64_t k = 0; k < va.numel(); ++k) {
          S gk = g.data[static_cast<size_t>(k)];
          if (op.kind == OpKind::kSub)
            gk = -gk;
          else if (op.kind == OpKind::kMul)
            gk *= va.data[static_cast<size_t>(k)];
          sb.grad.data[static_cast<size_t>(op.broadcast_b ? k % inner : k)] += gk;
        }
      }
      break;
    }
    case OpKind::kMatmul: {
      const Tensor<S> &va = value(op.a);
      const Tensor<S> &vb = value(op.b);
      const int64_t r = va.shape[0], m = va.shape[1], c = vb.shape[1];
      if (requires_grad(op.a)) {
        Slot &sa = slot(op.a);
        for (int64_t i = 0; i < r; ++i)
          for (int64_t k = 0; k < m; ++k) {
            S acc = 0;
            for (int64_t j = 0; j < c; ++j)
              acc += g.at(i, j) * vb.at(k, j);
            sa.grad.at(i, k) += acc;
          }
      }
      if (requires_grad(op.b)) {
        Slot &sb = slot(op.b);
        for (int64_t k = 0; k < m; ++k)
          for (int64_t j = 0; j < c; ++j) {
            S acc = 0;
            for (int64_t i = 0; i < r; ++i)
              acc += va.at(i, k) * g.at(i, j);
            sb.grad.at(k, j) += acc;
          }
      }
      break;
    }
    case OpKind::kSumAxis: {
      if (!requires_grad(op.a))
        break;
      Slot &sa = slot(op.a);
      auto [outer, extent, inner] = axis_strides(value(op.a).shape, op.axis);
      for (int64_t o = 0; o < outer; ++o)
        for (int64_t k = 0; k < extent; ++k)
          for (int64_t i = 0; i < inner; ++i)
            sa.grad.data[static_cast<size_t>((o * extent + k) * inner + i)] +=
                g.data[static_cast<size_t>(o * inner + i)];
      break;
    }
    case OpKind::kExp: {
      if (!requires_grad(op.a))
        break;
      Slot &sa = slot(op.a);
      for (size_t k = 0; k < sa.grad.data.size(); ++k)
        sa.grad.data[k] += g.data[k] * out.value.data[k];
      break;
    }
    case OpKind::kSquare: {
      if (!requires_grad(op.a))
        break;
      Slot &sa = slot(op.a);
      const Tensor<S> &va = value(op.a);
      for (size_t k = 0; k < sa.grad.data.size(); ++k)
        sa.grad.data[k] += g.data[k] * S(2) * va.data[k];
      break;
    }
    case OpKind::kScalarMul: {
      if (!requires_grad(op.a))
        break;
      Slot &sa = slot(op.a);
      for (size_t k = 0; k < sa.grad.data.size(); ++k)
        sa.grad.data[k] += g.data[k] * op.scalar;
      break;
    }
    case OpKind::kShiftedSoftplus: {
      if (!requires_grad(op.a))
        break;
      Slot &sa = slot(op.a);
      const Tensor<S> &va = value(op.a);
      for (size_t k = 0; k < sa.grad.data.size(); ++k)
        sa.grad.data[k] += g.data[k]
                           * static_cast<S>(sigmoid_value(
                               static_cast<double>(va.data[k])));
      break;
    }
    case OpKind::kGatherRows: {
      if (!requires_grad(op.a))
        break;
      Slot &sa = slot(op.a);
      const int64_t cols = sa.grad.cols();
      for (size_t k = 0; k < op.indices.size(); ++k)
        for (int64_t c = 0; c < cols; ++c)
          sa.grad.at(op.indices[k], c) += g.at(static_cast<int64_t>(k), c);
      break;
    }
    case OpKind::kScatterAddRows: {
      if (!requires_grad(op.a))
        break;
      Slot &sa = slot(op.a);
      const int64_t cols = sa.grad.cols();
      for (size_t k = 0; k < op.indices.size(); ++k)
        for (int64_t c = 0; c < cols; ++c)
          sa.grad.at(static_cast<int64_t>(k), c) += g.at(op.indices[k], c);
      break;
    }
    case OpKind::kBroadcastRows: {
      if (!requires_grad(op.a))
        break;
      Slot &sa = slot(op.a);
      const int64_t rows = out.value.shape[0];
      const int64_t cols = out.value.shape[1];
      for (int64_t r = 0; r < rows; ++r)
        for (int64_t c = 0; c < cols; ++c)
          sa.grad.data[static_cast<size_t>(c)] += g.at(r, c);
      break;
    }
    case OpKind::kReshape: {
      if (!requires_grad(op.a))
        break;
      Slot &sa = slot(op.a);
      for (size_t k = 0; k < sa.grad.data.size(); ++k)
        sa.grad.data[k] += g.data[k];
      break;
    }
    case OpKind::kMse: {
      const Tensor<S> &vp = value(op.a);
      const Tensor<S> &vt = value(op.b);
      const S scale = g.data[0] * S(2) / static_cast<S>(vp.numel());
      if (requires_grad(op.a)) {
        Slot &sa = slot(op.a);
        for (size_t k = 0; k < sa.grad.data.size(); ++k)
          sa.grad.data[k] += scale * (vp.data[k] - vt.data[k]);
      }
      if (requires_grad(op.b)) {
        Slot &sb = slot(op.b);
        for (size_t k = 0; k < sb.grad.data.size(); ++k)
          sb.grad.data[k] -= scale * (vp.data[k] - vt.data[k]);
      }
      break;
    }
    case OpKind::kRbfConv: {
      const Tensor<S> &vs = value(op.a);
      const Tensor<S> &vmu = value(op.b);
      const Tensor<S> &vsig = value(op.c);
      const Tensor<S> &dist = *op.dist;
      const int64_t n = dist.shape[0], s = dist.shape[1], f_dim = vs.shape[1];
      const bool need_s = requires_grad(op.a), need_mu = requires_grad(op.b),
                 need_sig = requires_grad(op.c);
      Tensor<S> *gs = need_s ? &slot(op.a).grad : nullptr;
      Tensor<S> *gmu = need_mu ? &slot(op.b).grad : nullptr;
      Tensor<S> *gsig = need_sig ? &slot(op.c).grad : nullptr;
      for (int64_t i = 0; i < n; ++i)
        for (int64_t j = 0; j < s; ++j) {
          S d = dist.at(i, j);
          if (op.scalar > S(0) && d > op.scalar)
            continue;
          for (int64_t f = 0; f < f_dim; ++f) {
            S mu = vmu.data[static_cast<size_t>(f)];
            S sigma = vsig.data[static_cast<size_t>(f)];
            S w = filter_value(d, mu, sigma);
            S gout = g.at(i, f);
            if (need_s)
              gs->at(j, f) += gout * w;
            S sval = vs.at(j, f);
            if (kRbfTextbookForm) {
              S u = d - mu;
              if (need_mu)
                gmu->data[static_cast<size_t>(f)] +=
                    gout * sval * w * u / (sigma * sigma);
              if (need_sig)
                gsig->data[static_cast<size_t>(f)] +=
                    gout * sval * w * u * u / (sigma * sigma * sigma);
            } else {
              S z = (d - mu) / (S(2) * sigma);
              if (need_mu)
                gmu->data[static_cast<size_t>(f)] += gout * sval * w * z / sigma;
              if (need_sig)
                gsig->data[static_cast<size_t>(f)] +=
                    gout * sval * w * S(2) * z * z / sigma;
            }
          }
        }
      break;
    }
    }
  }

  static std::tuple<int64_t, int64_t, int64_t> axis_strides(
      const std::vector<int64_t> &shape, int axis) {
    int64_t outer = 1, inner = 1;
    for (int d = 0; d < axis; ++d)
      outer *= shape[static_cast<size_t>(d)];
    for (int d = axis + 1; d < static_cast<int>(shape.size()); ++d)
      inner *= shape[static_cast<size_t>(d)];
    return { outer, shape[static_cast<size_t>(axis)], inner };
  }

  std::vector<Slot> slots_;
  std::vector<OpRecord> ops_;
};

using Tape32 = Tape<float>;
using Tape64 = Tape<double>;

}  // namespace c3net
