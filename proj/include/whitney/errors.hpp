#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace whitney {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operands live in different groups (free word vs lattice) or different
// ring bases (based vs free loops).
class VariantMismatch : public Error {
 public:
  using Error::Error;
};

class InvalidInput : public Error {
 public:
  using Error::Error;
};

// Trajectory left the admissible box or produced non-finite values.
class FlowError : public Error {
 public:
  using Error::Error;
};

class ImmersionError : public Error {
 public:
  using Error::Error;
};

class UndersamplingError : public Error {
 public:
  using Error::Error;
};

enum class ViolationKind {
  TangentialCrossing,
  TriplePoint,
  BasePointHit,
  FieldZeroOnCurve,
  FieldTangentAtBase,
  ParameterTie,
  PunctureSwept,
};

std::string to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  std::string detail;
};

// The input is not generic enough for the invariants to be well defined.
class GenericityError : public Error {
 public:
  explicit GenericityError(std::vector<Violation> violations);
  const std::vector<Violation>& violations() const { return violations_; }

 private:
  std::vector<Violation> violations_;
};

}  // namespace whitney
