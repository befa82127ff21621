#pragma once
#include <string>

namespace sba {

// Lowercase hex SHA-256 of the byte string.
std::string sha256_hex(const std::string& data);

}  // namespace sba
