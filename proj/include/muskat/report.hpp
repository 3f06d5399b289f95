// report.hpp — iteration history shared by the fixed-point solvers.

#pragma once

#include <vector>

namespace muskat {

struct SolveReport {
    std::vector<double> residual_history; // successive-difference norms per sweep
    double contraction_estimate = 0.0;    // last observed ratio of successive steps
    double fitted_rate = 0.0;             // used by decay fits
    int iterations = 0;
    bool converged = false;
};

} // namespace muskat
