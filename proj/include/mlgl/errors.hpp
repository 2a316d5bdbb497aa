#pragma once

#include <stdexcept>
#include <string>

namespace mlgl {

/// Base class of every error thrown by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// A precondition on arguments was violated.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// Requested a registered but unimplemented method.
class NotImplementedError : public Error {
public:
    using Error::Error;
};

/// A numeric routine failed (non-convergence, non-finite values).
class NumericError : public Error {
public:
    using Error::Error;
};

/// Connectivity was required but the graph is (numerically) disconnected.
/// Carries the offending algebraic connectivity lambda2.
class SingularGraphError : public Error {
public:
    SingularGraphError(const std::string& msg, double lambda2)
        : Error(msg), lambda2_(lambda2) {}
    double lambda2() const { return lambda2_; }

private:
    double lambda2_;
};

/// Effective resistance is infinite (nodes separated by a cut of weight zero).
class InfiniteResistanceError : public Error {
public:
    InfiniteResistanceError(const std::string& msg, double lambda2)
        : Error(msg), lambda2_(lambda2) {}
    double lambda2() const { return lambda2_; }

private:
    double lambda2_;
};

/// A dataset or other input could not be read or is malformed.
class DataError : public Error {
public:
    using Error::Error;
};

/// Text-format parse failure; carries the 1-based line number.
class ParseError : public DataError {
public:
    ParseError(const std::string& msg, int line)
        : DataError(msg + " (line " + std::to_string(line) + ")"), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

/// Experiment configuration is invalid.
class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace mlgl
