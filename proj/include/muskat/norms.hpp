// norms.hpp — Sobolev, anisotropic, dyadic, and Chemin-Lerner norms used as
// solver diagnostics and acceptance metrics.

#pragma once

#include <limits>
#include <span>
#include <vector>

#include "muskat/domain.hpp"

namespace muskat {

enum class NormVariant { sobolev, sobolev_sharp, aniso_weight_diag };

struct NormSpec {
    double s = 0.0;       // regularity index, >= 0
    NormVariant variant = NormVariant::sobolev;
    double q = 2.0;       // Lq exponent in z for Chemin-Lerner norms, in [1, inf]

    void validate() const {
        if (s < 0.0) throw SolverError("NormSpec: s must be >= 0");
        if (q < 1.0) throw SolverError("NormSpec: q must be in [1, inf]");
    }
};

constexpr double kInfExponent = std::numeric_limits<double>::infinity();

// ( sum_xi <xi>^{2s} |f_hat(xi)|^2 )^{1/2} with <xi>^2 = 1 + |xi|^2.
double sobolev_norm(const SurfaceField& f, double s);

// Low-frequency weight (xi_1^2 + |xi|^4) / |xi|^2 of the anisotropic space on
// R^d; diagnostic only (the torus commits to mean-zero H^s).
double aniso_weight(std::span<const double> xi);

// Smooth radial cutoff: 1 on |xi| <= 1/2, 0 on |xi| >= 1.
double dyadic_chi(double r);
// Block weight phi_j(xi) with phi_0 = chi, phi_j(xi) = phi(2^{-j} xi).
double dyadic_phi(int j, double r);
// Largest block index that can be nonzero on the lattice of spec.
int dyadic_block_count(const DomainSpec& spec);

SurfaceField dyadic_block(const SurfaceField& f, int j);

// Coefficient-space l2 norm of one block without forming the field.
double dyadic_block_norm(const SurfaceField& f, int j);
// ( sum_j 2^{2sj} ||Delta_j f||^2 )^{1/2}; sharp starts the sum at j = 1.
double dyadic_norm(const SurfaceField& f, double s, bool sharp = false);

// Normalized L2_x norm of one z-slab.
double slab_l2(const StripField& v, int j);

// ( sum_j 2^{2sj} ||Delta_j v||^2_{Lq_z L2_x} )^{1/2}, trapezoid in z.
double chemin_lerner_norm(const StripField& v, double q, double s, bool sharp = false);

// U^s = L~inf(H^s) + L~1(H^{s+1}) combination used to stop the DN sweep.
double norm_U(const StripField& v, double s);

double l2_norm(const SurfaceField& f); // sobolev_norm with s = 0

} // namespace muskat
