#pragma once

#include <stdexcept>
#include <string>

namespace hamcycle {

// Every error raised by the library derives from DomainError; the CLI maps
// these to exit code 1.
class DomainError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// (k - ell) does not divide n.
class DivisibilityError : public DomainError {
public:
    using DomainError::DomainError;
};

// n too small for consecutive windows to overlap in exactly ell vertices.
class TooSmallError : public DomainError {
public:
    using DomainError::DomainError;
};

class RangeError : public DomainError {
public:
    using DomainError::DomainError;
};

// Input exceeds what an exact procedure is configured to handle.
class CapacityError : public DomainError {
public:
    using DomainError::DomainError;
};

// Malformed edges, permutations, or hypergraph files.
class InvalidInputError : public DomainError {
public:
    using DomainError::DomainError;
};

} // namespace hamcycle
