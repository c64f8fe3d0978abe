#pragma once

#include <cstdint>
#include <string>

namespace rswlu {

/// SHA-256 of a byte string, lowercase hex.
std::string sha256_hex(const std::string& bytes);

/// SHA-256 of a file's contents, lowercase hex.
std::string sha256_file_hex(const std::string& path);

/// Documented member-seed rule: splitmix64 mix of (base_seed, member_index),
/// so member streams are independent and order-free.
uint64_t member_seed(uint64_t base_seed, uint64_t member_index);

} // namespace rswlu
