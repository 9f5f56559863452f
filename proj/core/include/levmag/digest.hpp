#pragma once

#include <string>
#include <string_view>

namespace levmag {

/// Lower-case hex SHA-256.
std::string sha256_hex(std::string_view data);

/// Digest of the canonical serialised configuration.
struct SystemParams;
std::string params_hash(const SystemParams& p);

}  // namespace levmag
