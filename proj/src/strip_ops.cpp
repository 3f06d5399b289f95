#include "muskat/strip_ops.hpp"

#include "muskat/multipliers.hpp"

namespace muskat {

StripField div_x(const std::vector<StripField>& f) {
    if (f.empty()) throw SolverError("div_x: empty vector field");
    const DomainSpec& spec = f[0].spec();
    if (static_cast<int>(f.size()) != spec.d) throw SolverError("div_x: component count != d");
    StripField out(spec);
    for (int k = 0; k < spec.d; ++k) {
        for (int j = 0; j < spec.nz; ++j) {
            const cplx* s = f[k].slab(j);
            cplx* o = out.slab(j);
            for (std::size_t i = 0; i < spec.lattice_size(); ++i) {
                auto xi = spec.wavenumber(i);
                o[i] += cplx(0.0, static_cast<double>(xi[k])) * s[i];
            }
        }
    }
    return out;
}

StripField dx_strip(const StripField& f, int axis) {
    const DomainSpec& spec = f.spec();
    if (axis < 0 || axis >= spec.d) throw SolverError("dx_strip: bad axis");
    StripField out(spec);
    for (int j = 0; j < spec.nz; ++j) {
        const cplx* s = f.slab(j);
        cplx* o = out.slab(j);
        for (std::size_t i = 0; i < spec.lattice_size(); ++i) {
            auto xi = spec.wavenumber(i);
            o[i] = cplx(0.0, static_cast<double>(xi[axis])) * s[i];
        }
    }
    return out;
}

StripField dz_strip(const StripField& f) {
    const DomainSpec& spec = f.spec();
    const double h = spec.dz();
    const std::size_t n = spec.lattice_size();
    StripField out(spec);
    for (std::size_t i = 0; i < n; ++i) {
        out.at(0, i) = (-3.0 * f.at(0, i) + 4.0 * f.at(1, i) - f.at(2, i)) / (2.0 * h);
        for (int j = 1; j + 1 < spec.nz; ++j)
            out.at(j, i) = (f.at(j + 1, i) - f.at(j - 1, i)) / (2.0 * h);
        int J = spec.nz - 1;
        out.at(J, i) = (3.0 * f.at(J, i) - 4.0 * f.at(J - 1, i) + f.at(J - 2, i)) / (2.0 * h);
    }
    return out;
}

SurfaceField trapz_z(const StripField& f) {
    const DomainSpec& spec = f.spec();
    const double h = spec.dz();
    SurfaceField out(spec);
    for (int j = 0; j < spec.nz; ++j) {
        double w = (j == 0 || j == spec.nz - 1) ? 0.5 * h : h;
        const cplx* s = f.slab(j);
        for (std::size_t i = 0; i < spec.lattice_size(); ++i) out[i] += w * s[i];
    }
    return out;
}

SurfaceField dz_at_top(const StripField& f) {
    const DomainSpec& spec = f.spec();
    const double h = spec.dz();
    const int J = spec.nz - 1;
    SurfaceField out(spec);
    for (std::size_t i = 0; i < spec.lattice_size(); ++i)
        out[i] = (3.0 * f.at(J, i) - 4.0 * f.at(J - 1, i) + f.at(J - 2, i)) / (2.0 * h);
    return out;
}

SurfaceField dz_at_bottom(const StripField& f) {
    const DomainSpec& spec = f.spec();
    const double h = spec.dz();
    SurfaceField out(spec);
    for (std::size_t i = 0; i < spec.lattice_size(); ++i)
        out[i] = (-3.0 * f.at(0, i) + 4.0 * f.at(1, i) - f.at(2, i)) / (2.0 * h);
    return out;
}

StripField apply_dz_operator(const StripField& f) {
    const DomainSpec& spec = f.spec();
    StripField out(spec);
    const auto& z = f.z_nodes();
    for (int j = 0; j < spec.nz; ++j) {
        const cplx* s = f.slab(j);
        cplx* o = out.slab(j);
        for (std::size_t i = 0; i < spec.lattice_size(); ++i)
            o[i] = dz_symbol(xi_mag(spec.wavenumber(i)), z[j], spec.b) * s[i];
    }
    return out;
}

} // namespace muskat
