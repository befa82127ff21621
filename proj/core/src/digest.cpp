#include "sba/digest.hpp"

#include <openssl/evp.h>

#include "sba/errors.hpp"

namespace sba {

std::string sha256_hex(const std::string& data) {
  unsigned char out[EVP_MAX_MD_SIZE];
  unsigned int out_len = 0;
  if (!EVP_Digest(data.data(), data.size(), out, &out_len, EVP_sha256(), nullptr))
    throw InternalError("SHA-256 digest failed");
  static const char* hex = "0123456789abcdef";
  std::string s;
  s.reserve(2 * out_len);
  for (unsigned int i = 0; i < out_len; ++i) {
    s += hex[out[i] >> 4];
    s += hex[out[i] & 0xF];
  }
  return s;
}

}  // namespace sba
