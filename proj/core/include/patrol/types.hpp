#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace patrol {

using NodeId = std::uint32_t;
using RobotId = std::uint32_t;

/// Base class for every error the library reports to callers.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class GraphError : public Error {
 public:
  using Error::Error;
};

/// Map-file syntax or validation failure; `line()` is 1-based, 0 when the
/// problem is not attributable to a single line (e.g. disconnected graph).
class MapError : public GraphError {
 public:
  MapError(std::size_t line, const std::string& what)
      : GraphError(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace patrol
