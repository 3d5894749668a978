#pragma once

#include <stdexcept>
#include <string>

namespace tropmorph {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand sizes or lattice configurations disagree.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A matrix lacks the asticity property an operation requires.
class AsticityError : public Error {
 public:
  using Error::Error;
};

/// Malformed or out-of-range external input (files, CLI arguments).
class InputError : public Error {
 public:
  using Error::Error;
};

namespace detail {

inline void require_same_size(std::size_t lhs, std::size_t rhs, const char* what) {
  if (lhs != rhs) {
    throw DimensionError(std::string(what) + ": dimension mismatch (" + std::to_string(lhs) +
                         " vs " + std::to_string(rhs) + ")");
  }
}

}  // namespace detail
}  // namespace tropmorph
