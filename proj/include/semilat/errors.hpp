#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace semilat {

/// Root of every error thrown by the library.
class LatticeError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class IndexError : public LatticeError {
  public:
    using LatticeError::LatticeError;
};

class CycleError : public LatticeError {
  public:
    using LatticeError::LatticeError;
};

class NotAChainError : public LatticeError {
  public:
    using LatticeError::LatticeError;
};

class NotAPartitionError : public LatticeError {
  public:
    using LatticeError::LatticeError;
};

class NotALatticeError : public LatticeError {
  public:
    NotALatticeError(std::size_t x, std::size_t y, const std::string& reason)
        : LatticeError("not a lattice: elements " + std::to_string(x) + " and " + std::to_string(y) +
                       " " + reason),
          x_(x),
          y_(y) {}

    std::size_t x() const noexcept { return x_; }
    std::size_t y() const noexcept { return y_; }

  private:
    std::size_t x_;
    std::size_t y_;
};

class NotSemimodularError : public LatticeError {
  public:
    using LatticeError::LatticeError;
};

class NotDistributiveError : public LatticeError {
  public:
    using LatticeError::LatticeError;
};

/// A geometry failed one of its axioms.
class AxiomError : public LatticeError {
  public:
    using LatticeError::LatticeError;
};

/// Arguments violate an operation's precondition.
class PreconditionError : public LatticeError {
  public:
    using LatticeError::LatticeError;
};

/// A computed object failed a postcondition check. Always an implementation bug.
class VerificationError : public LatticeError {
  public:
    using LatticeError::LatticeError;
};

class BoundExceededError : public LatticeError {
  public:
    using LatticeError::LatticeError;
};

class CapExceededError : public LatticeError {
  public:
    using LatticeError::LatticeError;
};

class ParseError : public LatticeError {
  public:
    ParseError(std::size_t line, const std::string& reason)
        : LatticeError("line " + std::to_string(line) + ": " + reason), line_(line) {}

    std::size_t line() const noexcept { return line_; }

  private:
    std::size_t line_;
};

}  // namespace semilat
