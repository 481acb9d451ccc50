#include "tubal/io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>
#include <limits>
#include <random>
#include <sstream>

namespace tubal {

namespace {

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void put_u64(std::vector<std::uint8_t>& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

std::uint64_t get_le(std::span<const std::uint8_t> bytes, std::size_t at, int width) {
  std::uint64_t v = 0;
  for (int i = 0; i < width; ++i) v |= std::uint64_t{bytes[at + i]} << (8 * i);
  return v;
}

[[noreturn]] void parse_error(const std::string& what) { throw Error(ErrorCode::Parse, what); }

std::vector<std::uint8_t> read_bytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open '" + path + "' for reading");
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw Error(ErrorCode::Io, "failed reading '" + path + "'");
  return bytes;
}

void write_bytes(const std::string& path, const char* data, std::size_t len) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::Io, "cannot open '" + path + "' for writing");
  out.write(data, static_cast<std::streamsize>(len));
  if (!out) throw Error(ErrorCode::Io, "failed writing '" + path + "'");
}

nlohmann::json tube_to_json(const Tube& t) {
  auto arr = nlohmann::json::array();
  for (Index i = 0; i < t.size(); ++i) arr.push_back(t[i]);
  return arr;
}

Tube tube_from_json(const nlohmann::json& j, Index n) {
  if (!j.is_array() || static_cast<Index>(j.size()) != n) {
    parse_error("expected a list of " + std::to_string(n) + " numbers");
  }
  RealVector v(n);
  for (Index i = 0; i < n; ++i) {
    if (!j[i].is_number()) parse_error("tube entries must be numbers");
    v[i] = j[i].get<double>();
  }
  return Tube(std::move(v));
}

Index dimension_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("n") || !j["n"].is_number_integer()) {
    parse_error("missing integer field 'n'");
  }
  const auto n = j["n"].get<long long>();
  if (n < 1) parse_error("'n' must be positive");
  return static_cast<Index>(n);
}

}  // namespace

// ---------------------------------------------------------------------------
// Tensor files

std::vector<std::uint8_t> encode_tensor(const Tensor3& a) {
  std::vector<std::uint8_t> out;
  out.reserve(kTensorHeaderBytes + 8 * static_cast<std::size_t>(a.size()));
  out.insert(out.end(), std::begin(kTensorMagic), std::end(kTensorMagic));
  put_u32(out, kTensorVersion);
  put_u64(out, static_cast<std::uint64_t>(a.rows()));
  put_u64(out, static_cast<std::uint64_t>(a.cols()));
  put_u64(out, static_cast<std::uint64_t>(a.tube_size()));
  for (double v : a.data()) put_u64(out, std::bit_cast<std::uint64_t>(v));
  return out;
}

Tensor3 decode_tensor(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kTensorHeaderBytes) parse_error("tensor file shorter than its header");
  if (std::memcmp(bytes.data(), kTensorMagic, 4) != 0) parse_error("bad magic, expected TNS3");
  const auto version = static_cast<std::uint32_t>(get_le(bytes, 4, 4));
  if (version != kTensorVersion) parse_error("unsupported tensor file version " + std::to_string(version));
  const std::uint64_t m = get_le(bytes, 8, 8), p = get_le(bytes, 16, 8), n = get_le(bytes, 24, 8);
  if (n == 0) parse_error("tube length must be positive");
  constexpr auto limit = static_cast<std::uint64_t>(std::numeric_limits<Index>::max() / 8);
  if (m > limit || p > limit || n > limit || (m != 0 && p > limit / m) ||
      (m * p != 0 && n > limit / (m * p))) {
    parse_error("tensor dimensions overflow");
  }
  const std::uint64_t count = m * p * n;
  const std::uint64_t payload = bytes.size() - kTensorHeaderBytes;
  if (payload != 8 * count) {
    std::ostringstream os;
    os << "payload has " << payload << " bytes, expected " << 8 * count;
    parse_error(os.str());
  }
  std::vector<double> data(static_cast<std::size_t>(count));
  for (std::size_t i = 0; i < data.size(); ++i) {
    data[i] = std::bit_cast<double>(get_le(bytes, kTensorHeaderBytes + 8 * i, 8));
  }
  try {
    return Tensor3(static_cast<Index>(m), static_cast<Index>(p), static_cast<Index>(n), std::move(data));
  } catch (const Error& e) {
    parse_error(e.what());
  }
}

void write_tensor_file(const std::string& path, const Tensor3& a) {
  const auto bytes = encode_tensor(a);
  write_bytes(path, reinterpret_cast<const char*>(bytes.data()), bytes.size());
}

Tensor3 read_tensor_file(const std::string& path) { return decode_tensor(read_bytes(path)); }

// ---------------------------------------------------------------------------
// Transform files

nlohmann::json transform_to_json(const ComplexMatrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Index k = 0; k < m.cols(); ++k) row.push_back({m(i, k).real(), m(i, k).imag()});
    rows.push_back(std::move(row));
  }
  return {{"n", m.rows()}, {"rows", std::move(rows)}};
}

TransformSpec transform_from_json(const nlohmann::json& j) {
  const Index n = dimension_from_json(j);
  if (!j.contains("rows") || !j["rows"].is_array() || static_cast<Index>(j["rows"].size()) != n) {
    parse_error("'rows' must list n rows");
  }
  ComplexMatrix m(n, n);
  for (Index i = 0; i < n; ++i) {
    const auto& row = j["rows"][i];
    if (!row.is_array() || static_cast<Index>(row.size()) != n) parse_error("each row needs n entries");
    for (Index k = 0; k < n; ++k) {
      const auto& z = row[k];
      if (!z.is_array() || z.size() != 2 || !z[0].is_number() || !z[1].is_number()) {
        parse_error("matrix entries must be [re, im] pairs");
      }
      m(i, k) = cdouble(z[0].get<double>(), z[1].get<double>());
    }
  }
  return validate_transform(std::move(m));
}

void write_transform_file(const std::string& path, const ComplexMatrix& m) {
  write_text_file(path, transform_to_json(m).dump(2) + "\n");
}

TransformSpec read_transform_file(const std::string& path) {
  return transform_from_json(read_json_file(path));
}

// ---------------------------------------------------------------------------
// Op tables

nlohmann::json op_table_to_json(const OpTable& table) {
  nlohmann::json probes = nlohmann::json::array();
  for (const OpProbe& p : table.probes) {
    probes.push_back({tube_to_json(p.a), tube_to_json(p.b), tube_to_json(p.result)});
  }
  return {{"n", table.n}, {"probes", std::move(probes)}};
}

OpTable op_table_from_json(const nlohmann::json& j) {
  OpTable table;
  table.n = dimension_from_json(j);
  if (!j.contains("probes") || !j["probes"].is_array()) parse_error("missing list 'probes'");
  for (const auto& probe : j["probes"]) {
    if (!probe.is_array() || probe.size() != 3) parse_error("each probe must be [a, b, result]");
    table.probes.push_back({tube_from_json(probe[0], table.n), tube_from_json(probe[1], table.n),
                            tube_from_json(probe[2], table.n)});
  }
  return table;
}

void write_op_table(const std::string& path, const OpTable& table) {
  write_text_file(path, op_table_to_json(table).dump() + "\n");
}

OpTable read_op_table(const std::string& path) { return op_table_from_json(read_json_file(path)); }

OpTable sample_op_table(const BlackBoxOp& op, int random_probes, std::uint64_t seed) {
  OpTable table{op.n, {}};
  for (Index i = 0; i < op.n; ++i) {
    for (Index j = 0; j < op.n; ++j) {
      Tube a = Tube::basis(op.n, i), b = Tube::basis(op.n, j);
      Tube r = op(a, b);
      table.probes.push_back({std::move(a), std::move(b), std::move(r)});
    }
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> dist(0.0, 1.0);
  for (int t = 0; t < random_probes; ++t) {
    RealVector a(op.n), b(op.n);
    for (Index i = 0; i < op.n; ++i) {
      a[i] = dist(rng);
      b[i] = dist(rng);
    }
    Tube ta(std::move(a)), tb(std::move(b));
    Tube r = op(ta, tb);
    table.probes.push_back({std::move(ta), std::move(tb), std::move(r)});
  }
  return table;
}

// ---------------------------------------------------------------------------

nlohmann::json read_json_file(const std::string& path) {
  const auto bytes = read_bytes(path);
  try {
    return nlohmann::json::parse(bytes.begin(), bytes.end());
  } catch (const nlohmann::json::exception& e) {
    parse_error("'" + path + "' is not valid JSON: " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  write_bytes(path, text.data(), text.size());
}

}  // namespace tubal
