#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace homcone {

// Root of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed or inconsistent input (bad indices, mismatched patterns, ...).
class InputError : public Error {
public:
    using Error::Error;
};

class PatternMismatch : public InputError {
public:
    PatternMismatch() : InputError("operands do not share a sparsity structure") {}
};

class PreconditionError : public InputError {
public:
    using InputError::InputError;
};

class ParseError : public InputError {
public:
    ParseError(std::size_t line, const std::string& what)
        : InputError("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

// Failures of the numerical algorithms.  `vertex` is 0-based.
class NumericalError : public Error {
public:
    using Error::Error;
};

class SingularMatrix : public NumericalError {
public:
    explicit SingularMatrix(int vertex)
        : NumericalError("zero diagonal in column " + std::to_string(vertex + 1)), vertex_(vertex) {}

    int vertex() const noexcept { return vertex_; }

private:
    int vertex_;
};

class NotPositiveDefinite : public NumericalError {
public:
    explicit NotPositiveDefinite(int vertex)
        : NumericalError("matrix is not positive definite (node " + std::to_string(vertex + 1) + ")"),
          vertex_(vertex) {}

    int vertex() const noexcept { return vertex_; }

private:
    int vertex_;
};

class NotCompletable : public NumericalError {
public:
    explicit NotCompletable(int vertex)
        : NumericalError("matrix has no positive definite completion (node " +
                         std::to_string(vertex + 1) + ")"),
          vertex_(vertex) {}

    int vertex() const noexcept { return vertex_; }

private:
    int vertex_;
};

class MaxIterations : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class NonpositiveCurvature : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class SingularNormalMatrix : public NumericalError {
public:
    using NumericalError::NumericalError;
};

}  // namespace homcone
