#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace iso {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed expression text; offset is a byte index into the input.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : Error(what + " at offset " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

/// Evaluation point or argument outside the region where a quantity is defined.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The Cauchy problem left the neighborhood where its right-hand side is regular.
class SingularityError : public Error {
 public:
  using Error::Error;
};

/// Iterative method failed to converge or hit a hard cap.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

}  // namespace iso
