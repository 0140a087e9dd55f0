#pragma once

#include <stdexcept>
#include <string>

namespace rht {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Requested operation would leave the truncation-safe degree range.
class DegreeOverflowError : public Error {
public:
    using Error::Error;
};

/// Malformed textual input (polynomials, JSON schemas, scalar literals).
class ParseError : public Error {
public:
    using Error::Error;
};

/// Structured data failed an axiom or schema check.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Caller violated a documented precondition (bad (g,n), out-of-range k, ...).
class UsageError : public Error {
public:
    using Error::Error;
};

} // namespace rht
