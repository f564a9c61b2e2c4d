#pragma once

#include <stdexcept>
#include <string>

namespace hras {

// Error taxonomy mirrored by the CLI exit codes: config 2, solver 3, io 4.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& m) : std::runtime_error(m) {}
};
struct SolverError : std::runtime_error {
  explicit SolverError(const std::string& m) : std::runtime_error(m) {}
};
struct IoError : std::runtime_error {
  explicit IoError(const std::string& m) : std::runtime_error(m) {}
};

}  // namespace hras
