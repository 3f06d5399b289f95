#include "muskat/multipliers.hpp"

#include <cmath>

namespace muskat {

double m_symbol(double xi_mag, double b) { return xi_mag * std::tanh(b * xi_mag); }

Multiplier multiplier_m(const DomainSpec& spec) {
    double b = spec.b;
    return Multiplier(spec, "m(D)", [b](const std::array<int, 2>& xi) {
        return cplx(m_symbol(xi_mag(xi), b), 0.0);
    });
}

Multiplier multiplier_abs(const DomainSpec& spec) {
    return Multiplier(spec, "|D|", [](const std::array<int, 2>& xi) {
        return cplx(xi_mag(xi), 0.0);
    });
}

Multiplier multiplier_derivative(const DomainSpec& spec, int axis) {
    if (axis < 0 || axis >= spec.d) throw SolverError("multiplier_derivative: bad axis");
    return Multiplier(spec, axis == 0 ? "d_1" : "d_2", [axis](const std::array<int, 2>& xi) {
        return cplx(0.0, static_cast<double>(xi[axis]));
    });
}

Multiplier multiplier_m_power(const DomainSpec& spec, double p) {
    double b = spec.b;
    return Multiplier(spec, "m(D)^p", [b, p](const std::array<int, 2>& xi) {
        double r = xi_mag(xi);
        if (r == 0.0) return cplx(0.0, 0.0);
        return cplx(std::pow(m_symbol(r, b), p), 0.0);
    });
}

Multiplier semigroup_multiplier(const DomainSpec& spec, double t, double gamma) {
    if (t < 0.0) throw SolverError("semigroup_multiplier: t must be nonnegative");
    double b = spec.b;
    return Multiplier(spec, "exp((gamma d_1 - m(D)) t)", [b, t, gamma](const std::array<int, 2>& xi) {
        double r = xi_mag(xi);
        if (r == 0.0) return cplx(0.0, 0.0);
        return std::exp(cplx(-m_symbol(r, b) * t, gamma * xi[0] * t));
    });
}

SurfaceField apply_multiplier(const SurfaceField& field, const Multiplier& mult) {
    SurfaceField out = field;
    apply_multiplier_inplace(out, mult);
    return out;
}

void apply_multiplier_inplace(SurfaceField& field, const Multiplier& mult) {
    if (!(field.spec() == mult.spec)) throw SolverError("apply_multiplier: spec mismatch");
    for (std::size_t i = 0; i < field.coeffs().size(); ++i) field[i] *= mult.symbol[i];
}

StripField apply_multiplier(const StripField& field, const Multiplier& mult) {
    if (!(field.spec() == mult.spec)) throw SolverError("apply_multiplier: spec mismatch");
    StripField out = field;
    for (int j = 0; j < field.nz(); ++j) {
        cplx* s = out.slab(j);
        for (std::size_t i = 0; i < field.spec().lattice_size(); ++i) s[i] *= mult.symbol[i];
    }
    return out;
}

double cosh_ratio(double xi_mag, double z_num, double z_den, double b) {
    if (z_num < -b || z_num > 0.0 || z_den < -b || z_den > 0.0)
        throw SolverError("cosh_ratio: arguments outside [-b, 0]");
    // cosh(a)/cosh(c) = e^{a-c} (1 + e^{-2a}) / (1 + e^{-2c}) for a, c >= 0;
    // here a = (z_num+b)|xi|, c = (z_den+b)|xi|.
    double shift = std::exp((z_num - z_den) * xi_mag);
    double num = 1.0 + std::exp(-2.0 * (z_num + b) * xi_mag);
    double den = 1.0 + std::exp(-2.0 * (z_den + b) * xi_mag);
    return shift * num / den;
}

double dz_symbol(double xi_mag, double z, double b) {
    return xi_mag * std::tanh((z + b) * xi_mag);
}

StripField poisson_extension(const SurfaceField& eta) {
    const DomainSpec& spec = eta.spec();
    StripField out(spec);
    const auto& z = out.z_nodes();
    for (int j = 0; j < spec.nz; ++j) {
        cplx* s = out.slab(j);
        for (std::size_t i = 0; i < spec.lattice_size(); ++i)
            s[i] = std::exp(xi_mag(spec.wavenumber(i)) * z[j]) * eta[i];
    }
    return out;
}

SurfaceField resolvent_gamma(const SurfaceField& g, double gamma, double b) {
    const DomainSpec& spec = g.spec();
    SurfaceField out(spec);
    for (std::size_t i = 0; i < spec.lattice_size(); ++i) {
        auto xi = spec.wavenumber(i);
        double r = xi_mag(xi);
        if (r == 0.0) continue; // zero-mode convention: output mean is 0
        out[i] = g[i] / cplx(-m_symbol(r, b), gamma * xi[0]);
    }
    return out;
}

} // namespace muskat
