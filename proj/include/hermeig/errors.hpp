#pragma once

#include <stdexcept>
#include <string>

namespace hermeig {

// Base error for all library failures. Subtypes exist where callers need to
// branch on the failure kind (validation vs. numerical vs. size limits).
class Error : public std::runtime_error {
  public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// A domain or problem description violates one of its invariants. The message
// names the violated invariant and, where applicable, a witness point.
class ValidationError : public Error {
  public:
    using Error::Error;
};

// A geometric construction cannot be carried out with the given parameters
// (fillet does not fit, empty truncation, point outside the collar, ...).
class GeometryError : public Error {
  public:
    using Error::Error;
};

// A discretization is too coarse or too large for the requested operation.
class SizeError : public Error {
  public:
    using Error::Error;
};

// A numerical procedure failed to reach its accuracy contract
// (bisection stall, missing sign change, non-positive-definite mass, ...).
class NumericalError : public Error {
  public:
    using Error::Error;
};

}  // namespace hermeig
