#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace aev {

/// Base class for every error raised by the verifier libraries.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class UnboundVariable : public Error {
public:
    explicit UnboundVariable(std::string name)
        : Error("unbound variable '" + name + "'"), name_(std::move(name)) {}
    const std::string & name() const { return name_; }

private:
    std::string name_;
};

class UnknownFunction : public Error {
public:
    explicit UnknownFunction(const std::string & fname) : Error("unknown function '" + fname + "'") {}
};

class ArityMismatch : public Error {
public:
    ArityMismatch(const std::string & fname, std::size_t expected, std::size_t got)
        : Error("function '" + fname + "' expects " + std::to_string(expected) + " argument(s), got " +
                std::to_string(got)) {}
};

class SortMismatch : public Error {
public:
    using Error::Error;
};

class AlreadyIndexed : public Error {
public:
    explicit AlreadyIndexed(const std::string & name) : Error("variable '" + name + "' is already indexed") {}
};

class DivisionByZero : public Error {
public:
    DivisionByZero() : Error("division by zero") {}
};

/// Raised when a specification needed by an execution or a VC is absent.
class MissingSpec : public Error {
public:
    MissingSpec(const std::string & fname, const std::string & kind)
        : Error("no " + kind + " specification for function '" + fname + "'"), fname_(fname) {}
    const std::string & fname() const { return fname_; }

private:
    std::string fname_;
};

class MissingInvariant : public Error {
public:
    MissingInvariant() : Error("loop has no invariant annotation") {}
};

class MissingVariant : public Error {
public:
    MissingVariant() : Error("loop on an existential execution has no variant annotation") {}
};

class AllEmpty : public Error {
public:
    AllEmpty() : Error("all program copies are empty") {}
};

/// An existential call whose instantiated postcondition has no witness in the enumeration domain.
class EmptyPostcondition : public Error {
public:
    EmptyPostcondition(const std::string & fname, const std::string & choice)
        : Error("postcondition of '" + fname + "' is empty for choice " + choice + " in the enumeration domain") {}
};

class SolverSpawnError : public Error {
public:
    using Error::Error;
};

class ProtocolError : public Error {
public:
    ProtocolError(const std::string & what, std::string raw)
        : Error("solver protocol error: " + what), raw_(std::move(raw)) {}
    const std::string & raw() const { return raw_; }

private:
    std::string raw_;
};

/// Syntax error with a 1-based source position.
class ParseError : public Error {
public:
    ParseError(const std::string & message, std::size_t line, std::size_t column)
        : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message), line_(line), column_(column) {}
    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

/// Input that parses but violates a well-formedness rule (duplicate copies, undefined programs, ...).
class InvalidProblem : public Error {
public:
    using Error::Error;
};

} // namespace aev
