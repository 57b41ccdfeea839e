#pragma once

#include <stdexcept>
#include <string>

namespace sphcode {

/// Base of every error raised by the library. The CLI maps these to exit code 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define SPHCODE_ERROR(Name)          \
  class Name : public Error {        \
   public:                           \
    using Error::Error;              \
  }

// numerics / geometry / potentials
SPHCODE_ERROR(DomainError);
SPHCODE_ERROR(ZeroVector);
SPHCODE_ERROR(CoincidentPoints);
SPHCODE_ERROR(SizeMismatch);

// optimize
SPHCODE_ERROR(StagnationLimit);
SPHCODE_ERROR(NoProgress);

// paramconfig
SPHCODE_ERROR(DomainViolation);
SPHCODE_ERROR(SingularJacobian);
SPHCODE_ERROR(Diverged);
SPHCODE_ERROR(Unregistered);

// verify
SPHCODE_ERROR(NonSymmetric);
SPHCODE_ERROR(NotCritical);

// symmetry
SPHCODE_ERROR(NoStructure);

// algebra
SPHCODE_ERROR(DependentBasis);
SPHCODE_ERROR(InsufficientPrecision);

// io
SPHCODE_ERROR(OffSphere);

#undef SPHCODE_ERROR

class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

}  // namespace sphcode
