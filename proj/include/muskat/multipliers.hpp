// multipliers.hpp — the exact Fourier-multiplier kernels of the flat strip.

#pragma once

#include "muskat/domain.hpp"

namespace muskat {

// m(D) = |D| tanh(b |D|), the flat-strip Dirichlet-Neumann symbol.
double m_symbol(double xi_mag, double b);

Multiplier multiplier_m(const DomainSpec& spec);
Multiplier multiplier_abs(const DomainSpec& spec);             // |D|
Multiplier multiplier_derivative(const DomainSpec& spec, int axis); // i xi_axis
// m(D)^p on mean-zero fields; symbol at xi = 0 is set to 0.
Multiplier multiplier_m_power(const DomainSpec& spec, double p);
// exp((i gamma xi_1 - m(xi)) t) for xi != 0, 0 at xi = 0 (zero-mean sector).
Multiplier semigroup_multiplier(const DomainSpec& spec, double t, double gamma);

SurfaceField apply_multiplier(const SurfaceField& field, const Multiplier& mult);
void apply_multiplier_inplace(SurfaceField& field, const Multiplier& mult);
StripField apply_multiplier(const StripField& field, const Multiplier& mult);

// cosh((z_num + b)|xi|) / cosh((z_den + b)|xi|) in exponential-shifted form,
// overflow free for z_num <= z_den no matter how large |xi| b is.
double cosh_ratio(double xi_mag, double z_num, double z_den, double b);

// tanh((z + b)|xi|) * |xi|, the symbol of the z-sliced operator D(z).
double dz_symbol(double xi_mag, double z, double b);

// Poisson (harmonic) extension: slab at z carries exp(|xi| z) eta_hat(xi).
StripField poisson_extension(const SurfaceField& eta);

// (gamma d_1 - m(D))^{-1} g with the zero mode discarded:
// out(xi) = g_hat(xi) / (i gamma xi_1 - m(xi)), out(0) = 0.
SurfaceField resolvent_gamma(const SurfaceField& g, double gamma, double b);

} // namespace muskat
