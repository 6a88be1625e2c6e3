// Copyright (c) 2026 the chemns authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef CHEMNS_ERRORS_HPP
#define CHEMNS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace chemns {

/// Malformed or inconsistent configuration (bad grid sizes, rejected
/// parameter ranges, parse failures). Carries a 1-based line number when
/// the error originated from a config document, 0 otherwise.
class ConfigError : public std::runtime_error {
  public:
    ConfigError(std::string message, int line = 0)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message : message),
          line_(line) {}

    int line() const { return line_; }

  private:
    int line_;
};

/// Pointwise evaluation outside a tabulated function's domain.
class EvaluationError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Corrupt, truncated or incompatible on-disk data.
class SnapshotError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

}  // namespace chemns

#endif  // CHEMNS_ERRORS_HPP
