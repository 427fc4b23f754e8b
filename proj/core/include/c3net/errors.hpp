//
// Project c3net - Copyright 2026 c3net developers.
// SPDX-License-Identifier: Apache-2.0
//
#pragma once

#include <stdexcept>
#include <string>

namespace c3net {

/// Base class for all library errors. Subclasses map onto the CLI exit
/// codes: UsageError -> 1, DataError -> 2, NumericError -> 3.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string &what): std::runtime_error(what) { }
};

/// Invalid configuration or arguments (bad flag value, invalid hyperparameter).
class UsageError : public Error {
public:
  using Error::Error;
};

/// Malformed or inconsistent input data: parse failures, validation
/// failures, broken referential integrity, contract violations.
class DataError : public Error {
public:
  using Error::Error;
};

/// Numerical failure: non-finite values in gradients, losses or parameters.
class NumericError : public Error {
public:
  using Error::Error;
};

}  // namespace c3net
