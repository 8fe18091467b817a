#ifndef SDC_ERRORS_HPP
#define SDC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace sdc {

// Base class for all library errors. CLI maps subclasses to exit codes.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Invalid configuration value or mismatched configs.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Malformed file, bitstream or container.
class FormatError : public Error {
 public:
  using Error::Error;
};

// Filesystem failure (open/read/write).
class IOError : public Error {
 public:
  using Error::Error;
};

// Tensor/waveform shape mismatch.
class ShapeError : public Error {
 public:
  using Error::Error;
};

// NaN/Inf where finite values are required.
class NumericError : public Error {
 public:
  using Error::Error;
};

// Input signal shorter than one analysis window.
class InputTooShort : public Error {
 public:
  using Error::Error;
};

// Silent or fully-gated input where loudness is required.
class SilentInput : public Error {
 public:
  using Error::Error;
};

// Silent reference signal in a metric.
class SilentReference : public Error {
 public:
  using Error::Error;
};

// Violated call contract (missing stems, empty maps, ...).
class ContractError : public Error {
 public:
  using Error::Error;
};

}  // namespace sdc

#endif  // SDC_ERRORS_HPP
