#include "almsq/cli/config.hpp"

#include <openssl/evp.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "almsq/analytic.hpp"
#include "almsq/core.hpp"
#include "almsq/error.hpp"
#include "almsq/oracles.hpp"
#include "almsq/scanner.hpp"

namespace almsq::cli {

namespace {

[[noreturn]] void reject(const std::string& key, const std::string& why) {
  throw Error(ErrorKind::invalid_input, "config key '" + key + "': " + why);
}

const ConfigKey* find_key(std::string_view name) {
  for (const auto& k : config_keys())
    if (k.name == name) return &k;
  return nullptr;
}

void write_real(std::string& out, double v) {
  if (!std::isfinite(v)) {
    out += "null";
    return;
  }
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  std::string s = buf;
  // keep reals reals after a round trip
  if (s.find_first_of(".e") == std::string::npos) s += ".0";
  out += s;
}

void write(std::string& out, const Json& v) {
  switch (v.type()) {
    case Json::value_t::object: {
      out += '{';
      bool first = true;
      for (const auto& [key, item] : v.items()) {
        if (!first) out += ',';
        first = false;
        out += Json(key).dump();
        out += ':';
        write(out, item);
      }
      out += '}';
      break;
    }
    case Json::value_t::array: {
      out += '[';
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ',';
        write(out, v[i]);
      }
      out += ']';
      break;
    }
    case Json::value_t::number_float:
      write_real(out, v.get<double>());
      break;
    default:
      out += v.dump();
  }
}

void check_choice(const std::string& key, const std::string& value) {
  bool ok = true;
  if (key == "spec") ok = parse_interval_preset(value).has_value();
  if (key == "mode") ok = parse_scan_mode(value).has_value();
  if (key == "quadrature") ok = parse_quadrature_mode(value).has_value();
  if (key == "lemma") ok = parse_lemma(value).has_value();
  if (key == "function") ok = value == "em" || value == "afe" || value == "chi" || value == "convexity";
  if (key == "method") ok = value == "sieve" || value == "oracle";
  if (!ok) reject(key, "unrecognized value '" + value + "'");
}

}  // namespace

const std::vector<ConfigKey>& config_keys() {
  static const std::vector<ConfigKey> keys = {
      {"theta", KeyType::real, "window exponent, 0 <= theta <= 1/2"},
      {"C", KeyType::real, "window coefficient, > 0"},
      {"eps", KeyType::real, "epsilon in interval presets and parameter choice"},
      {"seed", KeyType::integer, "sampling seed (0 = evenly spaced)"},
      {"samples", KeyType::integer, "sample count"},
      {"chunk_size", KeyType::integer, "integers per sieve segment (auto when absent)"},
      {"n", KeyType::integer, "integer to certify"},
      {"lo", KeyType::integer, "range start"},
      {"hi", KeyType::integer, "range end (inclusive)"},
      {"method", KeyType::text, "enumerate method: sieve | oracle"},
      {"X", KeyType::real, "scale X"},
      {"span", KeyType::real, "sampled x range length (default X)"},
      {"spec", KeyType::text, "interval preset: theorem | corollary | conjecture | custom"},
      {"A", KeyType::real, "custom interval coefficient"},
      {"gamma", KeyType::real, "custom interval power"},
      {"delta", KeyType::real, "custom interval log power"},
      {"mode", KeyType::text, "scan mode: theorem | corollary"},
      {"function", KeyType::text, "zeta evaluator: em | afe | chi | convexity"},
      {"sigma", KeyType::real, "real part"},
      {"t", KeyType::real, "imaginary part"},
      {"terms", KeyType::integer, "Euler-Maclaurin direct terms"},
      {"y", KeyType::real, "Phi argument"},
      {"U", KeyType::real, "window centre"},
      {"L", KeyType::real, "window half-width"},
      {"V", KeyType::real, "Phi resolution"},
      {"Y", KeyType::real, "averaging length"},
      {"quadrature", KeyType::text, "discrepancy quadrature: midpoint | exact"},
      {"lemma", KeyType::text, "1 | 2 | 3 | 4 | mv"},
      {"grid", KeyType::text, "'default' or path to a grid JSON file"},
      {"step", KeyType::real, "quadrature step (0 = automatic)"},
  };
  return keys;
}

Json default_config() {
  return Json{{"theta", 0.5},       {"C", 1.0},           {"eps", 0.1},       {"seed", 0u},
              {"samples", 1000u},   {"method", "sieve"},  {"X", 1e6},         {"spec", "theorem"},
              {"mode", "theorem"},  {"function", "em"},   {"V", 2.0},         {"quadrature", "midpoint"},
              {"grid", "default"},  {"step", 0.0}};
}

Json canonicalize(const Json& raw) {
  if (!raw.is_object()) throw Error(ErrorKind::invalid_input, "config must be a JSON object");
  Json cfg = default_config();
  for (const auto& [key, value] : raw.items()) {
    const ConfigKey* k = find_key(key);
    if (!k) reject(key, "unknown key");
    switch (k->type) {
      case KeyType::real:
        if (!value.is_number()) reject(key, "expected a number");
        cfg[key] = value.get<double>();
        break;
      case KeyType::integer:
        if (value.is_number_unsigned()) {
          cfg[key] = value.get<std::uint64_t>();
        } else if (value.is_number_float() && value.get<double>() >= 0.0 &&
                   value.get<double>() < 0x1p64 &&
                   std::floor(value.get<double>()) == value.get<double>()) {
          cfg[key] = static_cast<std::uint64_t>(value.get<double>());
        } else if (value.is_number_integer() && value.get<std::int64_t>() >= 0) {
          cfg[key] = static_cast<std::uint64_t>(value.get<std::int64_t>());
        } else {
          reject(key, "expected a non-negative integer");
        }
        break;
      case KeyType::text:
        if (!value.is_string()) reject(key, "expected a string");
        check_choice(key, value.get<std::string>());
        cfg[key] = value;
        break;
    }
  }
  for (const auto& [key, value] : cfg.items())
    if (value.is_number_float() && !std::isfinite(value.get<double>())) reject(key, "must be finite");
  const double theta = cfg["theta"].get<double>();
  if (!(theta >= 0.0 && theta <= 0.5)) reject("theta", "out of [0, 1/2]");
  if (!(cfg["C"].get<double>() > 0.0)) reject("C", "must be > 0");
  if (!(cfg["eps"].get<double>() >= 0.0)) reject("eps", "must be >= 0");
  if (cfg["samples"].get<std::uint64_t>() == 0) reject("samples", "must be >= 1");
  if (cfg.contains("chunk_size") && cfg["chunk_size"].get<std::uint64_t>() == 0)
    reject("chunk_size", "must be >= 1");
  if (cfg["step"].get<double>() < 0.0) reject("step", "must be >= 0");
  return cfg;
}

Json load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::invalid_input, "cannot open config file " + path);
  Json raw;
  try {
    raw = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorKind::invalid_input, "config parse error: " + std::string(e.what()));
  }
  return canonicalize(raw);
}

std::string canonical_dump(const Json& value) {
  std::string out;
  write(out, value);
  return out;
}

std::string sha256_hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw Error(ErrorKind::precision, "SHA-256 failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 15];
  }
  return out;
}

std::string config_digest(std::string_view command, const Json& config) {
  return sha256_hex(std::string(command) + "\n" + canonical_dump(config));
}

}  // namespace almsq::cli
