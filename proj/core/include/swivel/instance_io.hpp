#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "swivel/matlib.hpp"
#include "swivel/qstate.hpp"

namespace swivel {

/// On-disk form of an instance. `labels` name the entries of `dims`:
/// {"in","out"} for a channel instance, {"A","B"} for a Tr_A instance on AB
/// and {"A","B","C"} for a tripartite (CMI) instance.
struct InstanceRecord {
  std::vector<int> dims;
  std::vector<std::string> labels;
  Matrix rho;
  Matrix sigma;
  std::vector<Matrix> kraus;
  std::uint64_t seed = 0;
  std::string tool_version;
  std::string input_digest;
};

/// JSON text. Doubles are written in shortest round-trip form, so parsing the
/// output reproduces every matrix entry bit for bit.
std::string to_json(const InstanceRecord& record);
InstanceRecord instance_from_json(std::string_view text);

InstanceRecord load_instance_file(const std::string& path);
void save_instance_file(const InstanceRecord& record, const std::string& path);

Instance to_instance(const InstanceRecord& record);

/// FNV-1a 64-bit digest, rendered as 16 hex digits.
std::string digest_hex(std::string_view bytes);

}  // namespace swivel
