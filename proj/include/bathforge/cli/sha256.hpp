// sha256.hpp: SHA-256 digests for artifact manifests

#pragma once

#include <string>

namespace bathforge::cli {

std::string sha256_hex(const std::string& data);
std::string sha256_file(const std::string& path);

} // namespace bathforge::cli
