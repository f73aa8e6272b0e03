#pragma once

#include <stdexcept>
#include <string>

namespace frostnet {

// Bad parameters or inconsistent configuration. Raised before any work is done.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A numerical guarantee could not be established (tail bound, support check).
class CertificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace frostnet
