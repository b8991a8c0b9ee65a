#pragma once

#include <stdexcept>
#include <string>

namespace greenlaunch {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Dataset / checkpoint container errors. Kept distinct so callers can tell
// a stale file from a corrupt one.
struct FormatError : IoError {
  using IoError::IoError;
};

struct VersionError : IoError {
  using IoError::IoError;
};

struct TruncationError : IoError {
  using IoError::IoError;
};

struct ShapeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace greenlaunch
