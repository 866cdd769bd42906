#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace conesta {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised when an input violates a documented precondition (shape, sign, range).
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// Raised by an iterative solver that produced a non-finite value.
class SolverError : public Error {
public:
    SolverError(const std::string& what, std::size_t iteration)
        : Error(what + " (iteration " + std::to_string(iteration) + ")"),
          iteration_(iteration) {}

    std::size_t iteration() const noexcept { return iteration_; }

private:
    std::size_t iteration_;
};

} // namespace conesta
