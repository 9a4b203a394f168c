#include "swivel/instance_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "swivel/error.hpp"

namespace swivel {

namespace {

using nlohmann::json;

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(json::array({m(i, j).real(), m(i, j).imag()}));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const json& j, const char* what) {
  if (!j.is_array() || j.empty()) fail(ErrorKind::IoError, std::string(what) + ": expected a non-empty matrix");
  const std::size_t rows = j.size();
  const std::size_t cols = j[0].size();
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols) fail(ErrorKind::IoError, std::string(what) + ": ragged matrix");
    for (std::size_t k = 0; k < cols; ++k) {
      const json& z = j[i][k];
      if (!z.is_array() || z.size() != 2 || !z[0].is_number() || !z[1].is_number()) {
        fail(ErrorKind::IoError, std::string(what) + ": entries must be [re, im] pairs");
      }
      m(i, k) = Complex(z[0].get<double>(), z[1].get<double>());
    }
  }
  return m;
}

}  // namespace

std::string to_json(const InstanceRecord& record) {
  json j;
  j["dims"] = record.dims;
  j["labels"] = record.labels;
  j["rho"] = matrix_to_json(record.rho);
  j["sigma"] = matrix_to_json(record.sigma);
  json kraus = json::array();
  for (const Matrix& k : record.kraus) kraus.push_back(matrix_to_json(k));
  j["kraus"] = std::move(kraus);
  j["seed"] = record.seed;
  if (!record.tool_version.empty()) j["tool_version"] = record.tool_version;
  if (!record.input_digest.empty()) j["input_digest"] = record.input_digest;
  return j.dump(1) + "\n";
}

InstanceRecord instance_from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    fail(ErrorKind::IoError, std::string("instance JSON: ") + e.what());
  }
  InstanceRecord r;
  try {
    r.dims = j.at("dims").get<std::vector<int>>();
    if (j.contains("labels")) r.labels = j.at("labels").get<std::vector<std::string>>();
    r.rho = matrix_from_json(j.at("rho"), "rho");
    r.sigma = matrix_from_json(j.at("sigma"), "sigma");
    for (const json& k : j.at("kraus")) r.kraus.push_back(matrix_from_json(k, "kraus"));
    if (j.contains("seed")) r.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("tool_version")) r.tool_version = j.at("tool_version").get<std::string>();
    if (j.contains("input_digest")) r.input_digest = j.at("input_digest").get<std::string>();
  } catch (const json::exception& e) {
    fail(ErrorKind::IoError, std::string("instance JSON: ") + e.what());
  }
  return r;
}

InstanceRecord load_instance_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::IoError, "cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return instance_from_json(buf.str());
}

void save_instance_file(const InstanceRecord& record, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorKind::IoError, "cannot write " + path);
  out << to_json(record);
  if (!out) fail(ErrorKind::IoError, "write failed for " + path);
}

Instance to_instance(const InstanceRecord& record) {
  return Instance(DensityOperator(record.rho), PositiveOperator(record.sigma), QuantumChannel(record.kraus));
}

std::string digest_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char out[17];
  std::snprintf(out, sizeof out, "%016llx", static_cast<unsigned long long>(h));
  return out;
}

}  // namespace swivel
