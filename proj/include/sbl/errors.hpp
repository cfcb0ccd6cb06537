#pragma once

#include <stdexcept>
#include <string>

namespace sbl {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Mismatched vector/operator sizes.
class DimensionError : public Error {
public:
    using Error::Error;
};

// A requested basis or operator would exceed the configured size limit.
class CapacityError : public Error {
public:
    using Error::Error;
};

// Model-level violations: bad hypothesis structure, failed block
// decomposition, invalid construction arguments.
class ModelError : public Error {
public:
    using Error::Error;
};

// Unsatisfied operation precondition.
class PreconditionError : public Error {
public:
    using Error::Error;
};

// Eigensolver or linear-solver failure, with diagnostics in the message.
class SolverError : public Error {
public:
    using Error::Error;
};

// Config file parse or validation failure; message carries line/field info.
class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace sbl
