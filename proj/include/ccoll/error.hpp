#pragma once

#include <stdexcept>
#include <string>

namespace ccoll {

enum class ErrorKind {
    Input,
    Parameter,
    Resource,
    Build,
    Unsupported,
    Schema,
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

/// Malformed or inconsistent input data (dimension mismatch, bad CSV row, ...).
class InputError : public Error {
public:
    explicit InputError(const std::string& what) : Error(ErrorKind::Input, what) {}
};

/// A numeric parameter outside its admissible range.
class ParameterError : public Error {
public:
    explicit ParameterError(const std::string& what) : Error(ErrorKind::Parameter, what) {}
};

/// Refusal to start work whose size exceeds a declared budget.
class ResourceError : public Error {
public:
    ResourceError(const std::string& what, double requested, double budget)
        : Error(ErrorKind::Resource, what), requested_(requested), budget_(budget) {}
    double requested() const noexcept { return requested_; }
    double budget() const noexcept { return budget_; }

private:
    double requested_;
    double budget_;
};

/// Internal construction failure: an asserted geometric condition did not hold.
class BuildError : public Error {
public:
    explicit BuildError(const std::string& what) : Error(ErrorKind::Build, what) {}
};

class UnsupportedError : public Error {
public:
    explicit UnsupportedError(const std::string& what) : Error(ErrorKind::Unsupported, what) {}
};

class SchemaError : public Error {
public:
    explicit SchemaError(const std::string& what) : Error(ErrorKind::Schema, what) {}
};

}  // namespace ccoll
