// errors.hpp — exception types shared by the solver modules.

#pragma once

#include <stdexcept>
#include <string>

namespace muskat {

struct SolverError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Grid minimum of dz_rho fell below the safety margin; the straightening
// map is no longer a diffeomorphism on the grid.
struct DiffeoViolation : SolverError {
    explicit DiffeoViolation(double min_dz_rho, double margin)
        : SolverError("straightening is not a diffeomorphism: min dz_rho = " +
                      std::to_string(min_dz_rho) + " <= margin " + std::to_string(margin)),
          min_dz_rho(min_dz_rho), margin(margin) {}
    double min_dz_rho;
    double margin;
};

struct NoConvergence : SolverError {
    explicit NoConvergence(const std::string& what, int iterations)
        : SolverError(what + " did not converge after " + std::to_string(iterations) +
                      " iterations"),
          iterations(iterations) {}
    int iterations;
};

struct ContractionFailure : SolverError {
    using SolverError::SolverError;
};

struct CompatibilityViolation : SolverError {
    using SolverError::SolverError;
};

struct NonzeroMean : SolverError {
    using SolverError::SolverError;
};

struct BlowupDetected : SolverError {
    using SolverError::SolverError;
};

struct VersionMismatch : SolverError {
    using SolverError::SolverError;
};

} // namespace muskat
