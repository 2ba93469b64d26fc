#pragma once

#include <stdexcept>
#include <string>

namespace exhand {

/// Invalid configuration value or structure (negative mass, d_lim >= 0, unknown key).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A measurement procedure could not produce a result from the given log.
class AnalysisError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed wire datagram.
class CodecError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed CSV log or report.
class CsvError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace exhand
