// Error taxonomy shared across the library.
#pragma once

#include <stdexcept>
#include <string>

namespace pwf {

// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Invalid configuration, bad file contents, infeasible geometry, range mismatches.
struct ConfigError : Error {
    using Error::Error;
};

// Requested index outside a window or table.
struct RangeError : Error {
    using Error::Error;
};

// Degree/order above the supported bound.
struct UnsupportedError : Error {
    using Error::Error;
};

// Generic numerical failure.
struct NumericError : Error {
    using Error::Error;
};

// Linear system too ill-conditioned to solve reliably.
struct IllPosedError : NumericError {
    IllPosedError(const std::string& what, double kappa_)
        : NumericError(what), kappa(kappa_) {}
    double kappa;
};

// Quantity out of the regime where the algorithm is trustworthy.
struct ConditioningError : NumericError {
    using NumericError::NumericError;
};

// Estimates rejected; caller should raise M.
struct AccuracyError : NumericError {
    using NumericError::NumericError;
};

// Coarse estimates too close for bump separation.
struct InfeasibleError : NumericError {
    using NumericError::NumericError;
};

// Could not pair estimated and true jumps unambiguously.
struct MatchingError : NumericError {
    using NumericError::NumericError;
};

// Pipeline stage failure; carries the stage name.
struct PipelineError : NumericError {
    PipelineError(const std::string& stage_, const std::string& what)
        : NumericError("[" + stage_ + "] " + what), stage(stage_) {}
    std::string stage;
};

}  // namespace pwf
