#pragma once

#include <stdexcept>
#include <string>

namespace otfa {

/// Argument outside the mathematical domain of an operation (e.g. Φ(t) with t < 0).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A precondition on the objects themselves was violated (e.g. conjugating a
/// quasi-Young function of order < 1, or a Young function that vanishes identically).
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Shapes, dimensions or groupings that do not fit together.
class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed textual specification (Young function, weight, window, ...).
class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The time-frequency shifts of the window do not form a frame at the given lattice.
class NotAFrameError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Kernel-path evaluation needs a quantization matrix with integer entries.
class NonIntegralQuantizationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// File could not be read or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace otfa
