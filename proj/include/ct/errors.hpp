#pragma once

#include <stdexcept>
#include <string>

namespace ct {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// polynomial-core
struct DivisionByZeroPoly : Error { using Error::Error; };
struct NotInvertible : Error { using Error::Error; };
struct DegenerateResultant : Error { using Error::Error; };
struct DegreeTooSmall : Error { using Error::Error; };
struct RootFindingFailure : Error { using Error::Error; };

// euler-trace
struct RepeatedRoots : Error { using Error::Error; };
struct EvaluationAtPole : Error { using Error::Error; };

// ade-catalog / image-solver
struct DenominatorVanishes : Error { using Error::Error; };

// bad user input (CLI maps this to exit code 2)
struct UsageError : Error { using Error::Error; };

} // namespace ct
