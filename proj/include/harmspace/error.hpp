#pragma once

#include <stdexcept>
#include <string>

namespace harmspace {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A parameter or argument lies outside the range where the operation is defined.
class DomainError : public Error {
public:
    using Error::Error;
};

/// An integrand produced a non-finite value at a quadrature node.
class EvaluationError : public Error {
public:
    EvaluationError(const std::string& what, double node)
        : Error(what + " (node " + std::to_string(node) + ")"), node_(node) {}
    double node() const noexcept { return node_; }

private:
    double node_;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

class UsageError : public Error {
public:
    using Error::Error;
};

class UnsupportedConfiguration : public Error {
public:
    using Error::Error;
};

} // namespace harmspace
