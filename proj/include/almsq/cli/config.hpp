#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace almsq::cli {

using Json = nlohmann::json;

enum class KeyType { real, integer, text };

struct ConfigKey {
  std::string name;
  KeyType type;
  std::string help;
};

/// Every key a config file (or command-line flag) may set.
const std::vector<ConfigKey>& config_keys();

/// eps = 0.1, seed = 0, samples = 1000 plus the remaining defaults.
Json default_config();

/// Applies defaults, checks key names, types and ranges, and normalizes
/// numbers (real keys become doubles, integer keys unsigned). Throws
/// Error(invalid_input) naming the offending key.
Json canonicalize(const Json& raw);

/// Reads a JSON object from `path` and canonicalizes it.
Json load_config(const std::string& path);

/// Sorted keys, no whitespace, reals printed with 17 significant digits.
std::string canonical_dump(const Json& value);

std::string sha256_hex(std::string_view bytes);

/// SHA-256 of "<command>\n<canonical config>".
std::string config_digest(std::string_view command, const Json& config);

}  // namespace almsq::cli
