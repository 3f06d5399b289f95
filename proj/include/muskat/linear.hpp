// linear.hpp — solver for the linearized traveling-wave system
//   u + grad p + grad P(eta) = F,  div u = G,  u_n + gamma d_1 eta = H on top,
//   p = K on top,  u_n = 0 on the bed,
// via the chain: compatibility function psi -> symbol solve for eta ->
// vertical two-point solve for p -> reconstruction of u.

#pragma once

#include <optional>
#include <vector>

#include "muskat/domain.hpp"

namespace muskat {

struct LinearData {
    std::vector<StripField> F; // d + 1 components, F[d] is the vertical one
    StripField G;
    SurfaceField H;
    SurfaceField K;
    mutable std::optional<double> compat_residual; // cached V^s zero-mode residual

    const DomainSpec& spec() const { return G.spec(); }
};

struct LinearSolution {
    std::vector<StripField> u; // d + 1 components
    StripField p;
    SurfaceField eta;
    std::vector<double> residuals; // the five equations, in order
};

// -Laplace p = f in the strip, p = k on top, -dz p = l on the bed; per-mode
// second-order tridiagonal solve (one-sided second-order Neumann row).
StripField solve_udln(const StripField& f, const SurfaceField& k, const SurfaceField& l);

// Xi k: harmonic with Neumann bed and trace k; exact kernel
// cosh((z+b)|xi|)/cosh(b|xi|).
StripField xi_operator(const SurfaceField& k);

// psi(xi) = int f_hat Q dz - k_hat |xi| tanh(b|xi|) - h+_hat + h-_hat sech(b|xi|).
SurfaceField compute_psi(const StripField& f, const SurfaceField& h_plus,
                         const SurfaceField& h_minus, const SurfaceField& k);

// |int G_hat(0, z) dz - H_hat(0)|, the V^s zero-mode condition on the torus.
double check_compatibility(const LinearData& data);

// eta_hat(xi) = psi_hat(xi) / (-i gamma xi_1 + |xi| tanh(b|xi|)), eta_hat(0) = 0.
SurfaceField solve_eta_symbol(const SurfaceField& psi, double gamma, double b,
                              double mean_tol = 1e-10);

struct T2Result {
    StripField p;
    SurfaceField eta;
    double top_neumann_residual = 0.0; // |-dz p - dz P(eta) + gamma d1 eta - h+|_L2
};

struct LinearOptions {
    double gamma = 0.0;
    double compat_tol = 0.0; // 0 -> max(1e-8, 10 h^2)
    bool enforce_tol = true; // refuse incompatible data beyond tol
};

T2Result solve_T2(const StripField& f, const SurfaceField& h_plus, const SurfaceField& h_minus,
                  const SurfaceField& k, const LinearOptions& opt = {});

LinearSolution solve_T3(const LinearData& data, const LinearOptions& opt = {});

// Forward map (F,G,H,K) = T3(u, p, eta); derivatives of p taken by the same
// finite-difference stencils the solver uses.
LinearData forward_T3(const std::vector<StripField>& u, const StripField& p,
                      const SurfaceField& eta, double gamma);

} // namespace muskat
