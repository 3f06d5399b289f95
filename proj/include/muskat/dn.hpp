// dn.hpp — Dirichlet-Neumann operator on the straightened strip:
// G(eta) f = m(D) f + R(eta) f, with R computed from the forward/backward
// integral system for (v, w) by Picard iteration.

#pragma once

#include <vector>

#include "muskat/domain.hpp"
#include "muskat/report.hpp"

namespace muskat {

// Coefficient fields of the straightening rho(x,z) = ((z+b)/b) e^{z|D|}eta + z.
struct StraightenedCoefficients {
    DomainSpec spec;
    StripField rho;
    StripField dz_rho;
    std::vector<StripField> grad_rho; // d components of grad_x rho

    // e^{z|D|} eta, e^{z|D|}|D| eta, e^{z|D|} d_k eta (used to assemble Q_a, Q_b)
    StripField ext_eta;
    StripField ext_abs_eta;
    std::vector<StripField> ext_grad_eta;

    double min_dz_rho = 1.0;      // grid minimum of dz_rho
    double lipschitz_value = 0.0; // ||e^{z|D|}eta||_inf + b ||e^{z|D|}|D|eta||_inf, < b suffices

    // grid caches per slab: c1 = (1/b)Eeta + ((z+b)/b)E|D|eta  (so dz_rho = 1 + c1)
    // and c2_k = ((z+b)/b) E d_k eta.
    std::vector<std::vector<double>> c1;
    std::vector<std::array<std::vector<double>, 2>> c2;
};

// Throws DiffeoViolation when the grid minimum of dz_rho <= margin.
StraightenedCoefficients build_straightening(const SurfaceField& eta, double margin = 0.1);

struct QFields {
    StripField qa;
    std::vector<StripField> qb;
};

// Q_a, Q_b of the straightened Laplace equation; dzv is the vertical
// derivative of v obtained from the PDE relation of the previous sweep.
QFields q_nonlinearities(const StripField& v, const StripField& dzv,
                         const StraightenedCoefficients& sc, bool dealias = true);

// Convenience: dzv = D(z) v + w + qa_prev.
StripField dz_from_pde(const StripField& v, const StripField& w, const StripField& qa_prev);

struct VwSolution {
    StripField v;
    StripField w;
    QFields q;          // nonlinearities of the converged pair
    SolveReport report; // successive-difference history of the sweeps
};

struct DnOptions {
    double tol = 1e-12;
    int max_iter = 200;
    double s_check = 2.0; // norm index for the U-norm stopping test
    bool dealias = true;
    double margin = 0.1;
};

// Picard iteration on the integral system; throws NoConvergence when eta is
// outside the contraction regime.
VwSolution solve_vw(const SurfaceField& eta, const SurfaceField& f, const DnOptions& opt = {});

// G(eta) f = m(D) f + w|_{z=0}; output mean is exactly zero.
SurfaceField dn_apply(const SurfaceField& eta, const SurfaceField& f, const DnOptions& opt = {});

// R(eta) f = G(eta) f - m(D) f, via the kernel integral of the converged pair.
SurfaceField dn_remainder(const SurfaceField& eta, const SurfaceField& f, const DnOptions& opt = {});
SurfaceField dn_remainder(const VwSolution& sol);

} // namespace muskat
