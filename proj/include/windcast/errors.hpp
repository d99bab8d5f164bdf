#pragma once

#include <stdexcept>
#include <string>

namespace windcast {

// Error families aligned with the CLI exit codes: configuration problems,
// data problems, estimation convergence failures. Anything else surfaces as a
// plain std::exception and is treated as internal.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

struct DataError : std::runtime_error {
  explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

struct ConvergenceError : std::runtime_error {
  explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace windcast
