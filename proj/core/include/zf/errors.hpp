#pragma once

#include <stdexcept>
#include <string>

namespace zf {

/// Input violates an operation's precondition (bad parameters, malformed files).
class PreconditionError : public std::invalid_argument {
public:
    explicit PreconditionError(const std::string &what) : std::invalid_argument(what) {}
};

/// A numerical procedure failed: singular system, step underflow, missing bracket,
/// non-convergence, or a trajectory leaving the regime the model assumes.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string &what) : std::runtime_error(what) {}
};

} // namespace zf
