#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace balk1 {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : Error {
    ParseError(const std::string& what, std::size_t pos)
        : Error(what + " at position " + std::to_string(pos)), position(pos) {}
    std::size_t position;
};

struct ShapeError : Error {
    using Error::Error;
};

/// A documented precondition of an operation does not hold for the given input.
struct PreconditionError : Error {
    using Error::Error;
};

struct SpectralGapError : Error {
    SpectralGapError(const std::string& what, double eig) : Error(what), eigenvalue(eig) {}
    double eigenvalue;
};

/// Missing, unreadable or malformed input and output files.
struct IoError : Error {
    using Error::Error;
};

/// Failure inside a multi-stage pipeline, tagged with the stage that raised it.
struct StageError : Error {
    StageError(std::string stage_name, const std::string& what)
        : Error(stage_name + ": " + what), stage(std::move(stage_name)) {}
    std::string stage;
};

}  // namespace balk1
