// evolution.hpp — perturbation dynamics around a traveling wave:
//   d_t f = (gamma d_1 - m(D)) f + N(f),
//   N(f) = [R(eta*)(eta* + phi0) - R(eta* + f)(eta* + phi0)] - R(eta* + f) f,
// stepped by an exponential integrator with the exact linear propagator, or by
// Picard iteration on the Duhamel form as a reference.

#pragma once

#include <vector>

#include "muskat/traveling_wave.hpp"

namespace muskat {

enum class Integrator { etdrk2, duhamel_picard };

struct EvolutionConfig {
    WaveConfig base;        // domain, gamma, phi0, s, dn options
    SurfaceField eta_star;  // steady profile the perturbation rides on
    SurfaceField f0;        // zero-mean initial perturbation
    double dt = 0.05;
    double t_final = 20.0;
    Integrator integrator = Integrator::etdrk2;
    bool linear_only = false; // drop N(f): pure semigroup dynamics (test harness)

    void validate() const {
        base.validate();
        if (!(dt > 0.0)) throw SolverError("EvolutionConfig: dt must be positive");
        if (!(t_final >= 0.0)) throw SolverError("EvolutionConfig: t_final must be >= 0");
    }
};

struct DecayReport {
    std::vector<double> times;
    std::vector<double> hs_norms;
    std::vector<double> hs_half_l2_accum; // running int_0^t ||f||^2_{H^{s+1/2}}
    double fitted_rate = 0.0;             // log-linear fit on the tail half
    double c0_reference = 0.0;            // tanh(b)
    bool monotone = true;
};

// The bracketed nonlinear part; by linearity of R(eta) in its datum this is
// R(eta*)(eta* + phi0) - R(eta* + f)(eta* + phi0 + f), so N(0) = 0 exactly.
SurfaceField nonlinear_rhs(const SurfaceField& f, const EvolutionConfig& cfg);

SurfaceField step_etdrk2(const SurfaceField& f, double dt, const EvolutionConfig& cfg);

DecayReport evolve(const EvolutionConfig& cfg);

// Mild-solution fixed point on [0, t_short] over a collocation grid with
// spacing cfg.dt; reference solution for integrator order checks.
SurfaceField duhamel_picard(const EvolutionConfig& cfg, double t_short);

} // namespace muskat
