#pragma once

#include <stdexcept>
#include <string>

namespace isolab {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Operands from different fields, curves, or dimensions.
class StructuralError : public Error {
public:
    using Error::Error;
};

// Division by zero and friends.
class ArithmeticError : public Error {
public:
    using Error::Error;
};

// Input outside the mathematical domain of an operation.
class DomainError : public Error {
public:
    using Error::Error;
};

// A configured cap (enumeration size, closure size, ...) was exceeded.
class CapabilityError : public Error {
public:
    using Error::Error;
};

// Something that cannot happen mathematically did; always a bug.
class InternalError : public Error {
public:
    using Error::Error;
};

class PreconditionError : public Error {
public:
    using Error::Error;
};

// An invariant subspace without an invariant complement was found.
class NotSemisimple : public Error {
public:
    using Error::Error;
};

// A postcondition of the rational-subspace construction failed.
class TheoremViolation : public Error {
public:
    using Error::Error;
};

}  // namespace isolab
