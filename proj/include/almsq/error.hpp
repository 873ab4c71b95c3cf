#pragma once

#include <stdexcept>
#include <string>

namespace almsq {

enum class ErrorKind {
  invalid_input,  // domain violations, bad configs, poles
  range,          // value not representable
  infeasible,     // problem too large / too small for the requested scale
  precision,      // exact decision could not be certified
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// Process exit code for an error category (0 is reserved for success).
inline int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_input:
    case ErrorKind::range:
      return 2;
    case ErrorKind::infeasible:
      return 3;
    case ErrorKind::precision:
      return 4;
  }
  return 1;
}

}  // namespace almsq
