//
// Project c3net - Copyright 2026 c3net developers.
// SPDX-License-Identifier: Apache-2.0
//
#pragma once

#include <string>

#include "c3net/element_table.hpp"
#include "c3net/net.hpp"

namespace c3net {

inline constexpr int kCheckpointFormatVersion = 1;

/// Checkpoint layout: a versioned key-value text header carrying the
/// hyperparameter ledger (F, K, L, H, probe, point density, temperature,
/// RBF init range, cutoff, data file checksums), the atom/bond vocabularies
/// and the environment list, followed by one little-endian IEEE-754 32-bit
/// blob holding every parameter tensor in a fixed order:
///
///   type_embedding, bond_embedding, env_weight, env_bias,
///   rbf_mu[0..K-1], rbf_sigma[0..K-1],
///   pred_w1, pred_b1, pred_w2, pred_b2,
///   environment Q rows in list order.
///
/// Save -> load -> save is byte-identical; load validates the header against
/// the blob size, so editing any dimension is rejected.
std::string serialize_checkpoint(const NetParams<float> &params);
NetParams<float> deserialize_checkpoint(std::string_view bytes);

void save_checkpoint(const NetParams<float> &params, const std::string &path);
NetParams<float> load_checkpoint(const std::string &path);

/// Refuses to pair a checkpoint with an element table other than the one it
/// was trained with: the radii shape the SAS, which is part of the model.
void validate_radii(const NetParams<float> &params, const ElementTable &elements);

}  // namespace c3net
