#pragma once

#include <stdexcept>
#include <string>

namespace dpo {

// A caller violated a documented precondition (empty sample, bad parameter range, ...).
struct PreconditionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// The predict/update (or game) protocol was driven out of order or past its horizon.
struct ProtocolError : std::logic_error {
  using std::logic_error::logic_error;
};

// The requested expert pool would exceed the configured size ceiling.
struct InfeasiblePoolError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Sample-complexity calibration exhausted its search ceiling without passing.
struct CalibrationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed experiment configuration (unknown key, bad value, inconsistent flags).
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed serialized data (transcript CSV, loss-matrix CSV, summary JSON).
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Filesystem failure; message carries the offending path.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace dpo
