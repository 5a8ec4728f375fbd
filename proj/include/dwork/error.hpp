#pragma once

#include <stdexcept>
#include <string>

namespace dwork {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Operands declared over different variable lists or coefficient fields.
class VariableMismatch : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

// A documented precondition of an operation does not hold for its inputs.
class PreconditionError : public Error {
public:
    using Error::Error;
};

// A truncation (degree box, order bound) is too small for the request.
class TruncationError : public Error {
public:
    using Error::Error;
};

// An identity that must hold by construction failed; signals a bug.
class IdentityFailure : public Error {
public:
    using Error::Error;
};

} // namespace dwork
