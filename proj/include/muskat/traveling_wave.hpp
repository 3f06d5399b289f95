// traveling_wave.hpp — steady profiles by the contraction map
//   T(eta) = (gamma d_1 - m(D))^{-1} { R(eta)(eta + phi0) + m(D) phi0 },
// iterated from eta = 0 with the zero-mode convention T(eta)_hat(0) = 0.

#pragma once

#include <utility>
#include <vector>

#include "muskat/dn.hpp"
#include "muskat/domain.hpp"

namespace muskat {

struct WaveConfig {
    DomainSpec domain;
    double gamma = 0.0;
    SurfaceField phi0;      // external pressure; mean removed by the solvers
    double s = 2.0;         // norm index for stopping and diagnostics
    double tol = 1e-10;
    int max_iter = 100;
    DnOptions dn;           // forwarded to the DN solves

    void validate() const {
        domain.validate();
        if (!(tol > 0.0)) throw SolverError("WaveConfig: tol must be positive");
    }
};

struct TravelingWaveSolution {
    SurfaceField eta_star;
    std::vector<std::pair<double, double>> history; // (iterate norm, step norm) per iteration
    double contraction_estimate = 0.0;
    double steady_residual = 0.0; // ||gamma d1 eta* - G(eta*)(eta* + phi0)||_{H^{s-1/2}}
    int iterations = 0;
};

SurfaceField t_phi_map(const SurfaceField& eta, const WaveConfig& cfg);

TravelingWaveSolution solve_traveling_wave(const WaveConfig& cfg);

// ||eta*_1 - eta*_2||_{H^s} / ||phi0_1 - phi0_2||_{H^s}; 0 for identical configs.
double lipschitz_probe(const WaveConfig& cfg, const WaveConfig& cfg_perturbed);

} // namespace muskat
