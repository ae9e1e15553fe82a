#pragma once

#include <stdexcept>
#include <string>

namespace gcs {

// Base for every numeric or domain failure raised by the library. The CLI maps
// these onto exit code 3.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

// A series or label is on/over its radius of convergence.
class DivergenceError : public Error {
 public:
  using Error::Error;
};

// The requested tail tolerance is unreachable under the truncation cap.
class TruncationError : public Error {
 public:
  TruncationError(const std::string& what, double achieved_tail)
      : Error(what), achieved_tail_(achieved_tail) {}
  double achieved_tail() const noexcept { return achieved_tail_; }

 private:
  double achieved_tail_;
};

// Division by a vanishing nonlinearity value.
class SingularityError : public Error {
 public:
  SingularityError(const std::string& what, std::size_t index)
      : Error(what), index_(index) {}
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

// Construction produced the zero vector (e.g. odd cat state at z = 0).
class DegenerateStateError : public Error {
 public:
  using Error::Error;
};

}  // namespace gcs
