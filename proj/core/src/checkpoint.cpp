//
// Project c3net - Copyright 2026 c3net developers.
// SPDX-License-Identifier: Apache-2.0
//
#include "c3net/checkpoint.hpp"

#include <cmath>

#include "c3net/checksum.hpp"
#include "c3net/strings.hpp"

namespace c3net {
namespace {

void append_tensor(std::string &blob, const Tensor32 &t) {
  for (float v : t.data)
    append_f32_le(blob, v);
}

void read_tensor(std::string_view blob, size_t &offset, Tensor32 &t) {
  if (offset + t.data.size() * 4 > blob.size())
    throw DataError("checkpoint: truncated parameter blob");
  for (auto &v : t.data) {
    v = read_f32_le(blob.data() + offset);
    offset += 4;
  }
}

}  // namespace

std::string serialize_checkpoint(const NetParams<float> &params) {
  if (!params.all_finite())
    throw NumericError("refusing to save checkpoint with non-finite parameters");

  const Hyperparams &h = params.hyper;
  std::string out = "c3net-checkpoint " + std::to_string(kCheckpointFormatVersion)
                    + "\n";
  out += "feature_dim " + std::to_string(h.feature_dim) + "\n";
  out += "n_interactions " + std::to_string(h.n_interactions) + "\n";
  out += "bond_iterations " + std::to_string(h.bond_iterations) + "\n";
  out += "hidden_dim " + std::to_string(h.hidden_dim) + "\n";
  out += "probe_radius " + format_double(h.probe_radius) + "\n";
  out += "points_per_atom " + std::to_string(h.points_per_atom) + "\n";
  out += "temperature " + format_double(h.temperature) + "\n";
  out += "rbf_mu_max " + format_double(h.rbf_mu_max) + "\n";
  out += "sigma_init " + format_double(h.sigma_init) + "\n";
  out += "cutoff " + format_double(h.cutoff) + "\n";
  out += "finetune_embeddings " + std::to_string(h.finetune_embeddings ? 1 : 0)
         + "\n";
  out += "radii_checksum " + checksum_hex(params.radii_checksum) + "\n";
  out += "type2vec_checksum " + checksum_hex(params.type2vec_checksum) + "\n";

  out += "atom_vocab " + std::to_string(params.atom_vocab.size()) + "\n";
  for (int i = 0; i < params.atom_vocab.size(); ++i)
    out += params.atom_vocab.code(i) + "\t" + std::to_string(i) + "\n";
  out += "bond_vocab " + std::to_string(params.bond_vocab.size()) + "\n";
  for (int i = 0; i < params.bond_vocab.size(); ++i)
    out += params.bond_vocab.code(i) + "\t" + std::to_string(i) + "\n";

  out += "environments " + std::to_string(params.environments.size()) + "\n";
  for (const auto &env : params.environments)
    out += env.system_id + "\t" + std::string(task_name(env.task)) + "\t"
           + (env.trainable ? "1" : "0") + "\n";

  std::string blob;
  append_tensor(blob, params.type_embedding);
  append_tensor(blob, params.bond_embedding);
  append_tensor(blob, params.env_weight);
  append_tensor(blob, params.env_bias);
  for (const auto &t : params.rbf_mu)
    append_tensor(blob, t);
  for (const auto &t : params.rbf_sigma)
    append_tensor(blob, t);
  append_tensor(blob, params.pred_w1);
  append_tensor(blob, params.pred_b1);
  append_tensor(blob, params.pred_w2);
  append_tensor(blob, params.pred_b2);
  for (const auto &env : params.environments)
    append_tensor(blob, env.q);

  out += "blob " + std::to_string(blob.size()) + "\n";
  out += blob;
  return out;
}

NetParams<float> deserialize_checkpoint(std::string_view bytes) {
  size_t pos = 0;
  auto next_line = [&]() -> std::string_view {
    size_t end = bytes.find('\n', pos);
    if (end == std::string_view::npos)
      throw DataError("checkpoint: truncated header");
    std::string_view line = bytes.substr(pos, end - pos);
    pos = end + 1;
    return line;
  };

  {
    auto magic = split(next_line(), ' ');
    if (magic.size() != 2 || magic[0] != "c3net-checkpoint")
      throw DataError("checkpoint: unrecognized file magic");
    int version = static_cast<int>(parse_int(magic[1], "format version"));
    if (version != kCheckpointFormatVersion)
      throw DataError("checkpoint: format version " + std::to_string(version)
                      + " not supported (this build reads version "
                      + std::to_string(kCheckpointFormatVersion) + ")");
  }

  NetParams<float> params;
  Hyperparams &h = params.hyper;
  bool have_radii_checksum = false, have_t2v_checksum = false;
  std::string atom_vocab_tsv, bond_vocab_tsv;
  struct EnvLine {
    std::string system_id;
    Task task;
    bool trainable;
  };
  std::vector<EnvLine> env_lines;
  size_t blob_size = 0;

  while (true) {
    std::string_view line = next_line();
    auto fields = split(line, ' ');
    if (fields.size() != 2)
      throw DataError("checkpoint: malformed header line '" + std::string(line)
                      + "'");
    const std::string &key = fields[0];
    const std::string &val = fields[1];
    if (key == "feature_dim")
      h.feature_dim = static_cast<int>(parse_int(val, key));
    else if (key == "n_interactions")
      h.n_interactions = static_cast<int>(parse_int(val, key));
    else if (key == "bond_iterations")
      h.bond_iterations = static_cast<int>(parse_int(val, key));
    else if (key == "hidden_dim")
      h.hidden_dim = static_cast<int>(parse_int(val, key));
    else if (key == "probe_radius")
      h.probe_radius = parse_double(val, key);
    else if (key == "points_per_atom")
      h.points_per_atom = static_cast<int>(parse_int(val, key));
    else if (key == "temperature")
      h.temperature = parse_double(val, key);
    else if (key == "rbf_mu_max")
      h.rbf_mu_max = parse_double(val, key);
    else if (key == "sigma_init")
      h.sigma_init = parse_double(val, key);
    else if (key == "cutoff")
      h.cutoff = parse_double(val, key);
    else if (key == "finetune_embeddings")
      h.finetune_embeddings = parse_int(val, key) != 0;
    else if (key == "radii_checksum") {
      params.radii_checksum = parse_checksum_hex(val);
      have_radii_checksum = true;
    } else if (key == "type2vec_checksum") {
      params.type2vec_checksum = parse_checksum_hex(val);
      have_t2v_checksum = true;
    } else if (key == "atom_vocab" || key == "bond_vocab") {
      int count = static_cast<int>(parse_int(val, key));
      std::string &tsv = key == "atom_vocab" ? atom_vocab_tsv : bond_vocab_tsv;
      for (int i = 0; i < count; ++i) {
        tsv += next_line();
        tsv += '\n';
      }
    } else if (key == "environments") {
      int count = static_cast<int>(parse_int(val, key));
      for (int i = 0; i < count; ++i) {
        auto env_fields = split(next_line(), '\t');
        if (env_fields.size() != 3)
          throw DataError("checkpoint: malformed environment line");
        env_lines.push_back({ env_fields[0], parse_task(env_fields[1]),
                              parse_int(env_fields[2], "trainable") != 0 });
      }
    } else if (key == "blob") {
      blob_size = static_cast<size_t>(parse_int(val, key));
      break;
    } else {
      throw DataError("checkpoint: unknown header key '" + key + "'");
    }
  }

  if (!have_radii_checksum)
    throw DataError("checkpoint: missing radii_checksum; refusing to load a "
                    "checkpoint without its element-table fingerprint");
  if (!have_t2v_checksum)
    throw DataError("checkpoint: missing type2vec_checksum");
  try {
    h.validate();
  } catch (const UsageError &e) {
    throw DataError("checkpoint: invalid hyperparameter ledger: "
                    + std::string(e.what()));
  }
  params.atom_vocab = Vocabulary::from_tsv(atom_vocab_tsv);
  params.bond_vocab = Vocabulary::from_tsv(bond_vocab_tsv);

  const int64_t f_dim = h.feature_dim, h_dim = h.hidden_dim;
  params.type_embedding = Tensor32::zeros({ params.atom_vocab.size(), f_dim });
  params.bond_embedding = Tensor32::zeros({ params.bond_vocab.size(), f_dim });
  params.env_weight = Tensor32::zeros({ f_dim, 5 });
  params.env_bias = Tensor32::zeros({ f_dim });
  for (int k = 0; k < h.n_interactions; ++k) {
    params.rbf_mu.push_back(Tensor32::zeros({ f_dim }));
    params.rbf_sigma.push_back(Tensor32::zeros({ f_dim }));
  }
  params.pred_w1 = Tensor32::zeros({ f_dim, h_dim });
  params.pred_b1 = Tensor32::zeros({ h_dim });
  params.pred_w2 = Tensor32::zeros({ h_dim, 1 });
  params.pred_b2 = Tensor32::zeros({ 1 });
  for (const auto &line : env_lines)
    params.environments.push_back(
        { line.system_id, line.task, line.trainable, Tensor32::zeros({ 5 }) });

  size_t expected = 0;
  auto count_tensor = [&expected](const Tensor32 &t) {
    expected += t.data.size() * 4;
  };
  count_tensor(params.type_embedding);
  count_tensor(params.bond_embedding);
  count_tensor(params.env_weight);
  count_tensor(params.env_bias);
  for (const auto &t : params.rbf_mu)
    count_tensor(t);
  for (const auto &t : params.rbf_sigma)
    count_tensor(t);
  count_tensor(params.pred_w1);
  count_tensor(params.pred_b1);
  count_tensor(params.pred_w2);
  count_tensor(params.pred_b2);
  for (const auto &env : params.environments)
    count_tensor(env.q);

  if (blob_size != expected)
    throw DataError("checkpoint: dimension mismatch between header and blob "
                    "(header implies " + std::to_string(expected)
                    + " bytes, blob records " + std::to_string(blob_size) + ")");
  if (bytes.size() - pos < blob_size)
    throw DataError("checkpoint: truncated parameter blob");

  std::string_view blob = bytes.substr(pos, blob_size);
  size_t offset = 0;
  read_tensor(blob, offset, params.type_embedding);
  read_tensor(blob, offset, params.bond_embedding);
  read_tensor(blob, offset, params.env_weight);
  read_tensor(blob, offset, params.env_bias);
  for (auto &t : params.rbf_mu)
    read_tensor(blob, offset, t);
  for (auto &t : params.rbf_sigma)
    read_tensor(blob, offset, t);
  read_tensor(blob, offset, params.pred_w1);
  read_tensor(blob, offset, params.pred_b1);
  read_tensor(blob, offset, params.pred_w2);
  read_tensor(blob, offset, params.pred_b2);
  for (auto &env : params.environments)
    read_tensor(blob, offset, env.q);

  if (!params.all_finite())
    throw DataError("checkpoint: blob contains non-finite parameters");
  return params;
}

void save_checkpoint(const NetParams<float> &params, const std::string &path) {
  write_file(path, serialize_checkpoint(params));
}

NetParams<float> load_checkpoint(const std::string &path) {
  return deserialize_checkpoint(read_file(path));
}

void validate_radii(const NetParams<float> &params, const ElementTable &elements) {
  if (params.radii_checksum != elements.checksum())
    throw DataError(
        "element table checksum " + checksum_hex(elements.checksum())
        + " does not match the checkpoint's " + checksum_hex(params.radii_checksum)
        + "; the SAS geometry would differ from training");
}

}  // namespace c3net
