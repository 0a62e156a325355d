#pragma once

#include <stdexcept>
#include <string>

namespace mgfas {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidGrid : public Error {
public:
    using Error::Error;
};

/// A grid axis cannot be halved the requested number of times while staying even.
class NonDivisibleGrid : public Error {
public:
    using Error::Error;
};

/// An operator was applied to a field whose ghost layer is stale.
class UnfilledGhosts : public Error {
public:
    using Error::Error;
};

class LocationMismatch : public Error {
public:
    using Error::Error;
};

class PlanDimMismatch : public Error {
public:
    using Error::Error;
};

class InvalidBoundary : public Error {
public:
    using Error::Error;
};

class InvalidParams : public Error {
public:
    using Error::Error;
};

/// A schedule step referenced a quantity that is not bound to any slot.
class MissingBinding : public Error {
public:
    using Error::Error;
};

/// Pure-Neumann pressure right-hand side with a non-vanishing mean.
class IncompatibleRhs : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

} // namespace mgfas
