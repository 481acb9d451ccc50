#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "tubal/discovery.hpp"
#include "tubal/tensor.hpp"

namespace tubal {

// Tensor file layout (all integers little-endian):
//   "TNS3" | u32 version = 1 | u64 m | u64 p | u64 n | m*p*n binary64 values
// Values are slice-major, row-major within each frontal slice, which is the
// in-memory order of Tensor3.
inline constexpr char kTensorMagic[4] = {'T', 'N', 'S', '3'};
inline constexpr std::uint32_t kTensorVersion = 1;
inline constexpr std::size_t kTensorHeaderBytes = 4 + 4 + 3 * 8;

std::vector<std::uint8_t> encode_tensor(const Tensor3& a);
/// Throws Parse on bad magic, unknown version, or a payload of the wrong length.
Tensor3 decode_tensor(std::span<const std::uint8_t> bytes);

void write_tensor_file(const std::string& path, const Tensor3& a);
Tensor3 read_tensor_file(const std::string& path);

/// {"n": n, "rows": [[[re, im], ...], ...]}, row-major.
nlohmann::json transform_to_json(const ComplexMatrix& m);
/// Parses then validates.
TransformSpec transform_from_json(const nlohmann::json& j);
void write_transform_file(const std::string& path, const ComplexMatrix& m);
TransformSpec read_transform_file(const std::string& path);

/// Sampled evaluations of an op for use across processes:
/// {"n": n, "probes": [[a, b, result], ...]} with each tube a list of numbers.
struct OpTable {
  Index n = 0;
  std::vector<OpProbe> probes;
};

nlohmann::json op_table_to_json(const OpTable& table);
OpTable op_table_from_json(const nlohmann::json& j);
void write_op_table(const std::string& path, const OpTable& table);
OpTable read_op_table(const std::string& path);

/// Evaluates op on the n^2 basis pairs followed by `random_probes` random pairs.
OpTable sample_op_table(const BlackBoxOp& op, int random_probes, std::uint64_t seed);

nlohmann::json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace tubal
