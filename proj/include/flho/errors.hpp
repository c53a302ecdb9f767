#pragma once

#include <stdexcept>
#include <string>

namespace flho {

/// Numerical failure (solver non-convergence, identity check breach).
class numerical_error : public std::runtime_error {
public:
  explicit numerical_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Filesystem or format failure while reading/writing artifacts.
class io_error : public std::runtime_error {
public:
  explicit io_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace flho
