#pragma once

#include <stdexcept>
#include <string>

namespace eitdicke {

/// Requested Monte-Carlo work exceeds the configured budget.
class ResourceLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Data carries no line to fit (e.g. all samples equal).
class DegenerateDataError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Model-free width extraction failed: peak at the grid edge, several peaks.
class PeakShapeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad configuration or command-line input.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// File could not be read or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace eitdicke
