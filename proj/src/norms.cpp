#include "muskat/norms.hpp"

#include <algorithm>
#include <cmath>

#include "muskat/transforms.hpp"

namespace muskat {

double sobolev_norm(const SurfaceField& f, double s) {
    const DomainSpec& spec = f.spec();
    std::vector<double> terms(spec.lattice_size());
    for (std::size_t i = 0; i < terms.size(); ++i) {
        auto xi = spec.wavenumber(i);
        double jap = 1.0 + static_cast<double>(xi[0]) * xi[0] + static_cast<double>(xi[1]) * xi[1];
        terms[i] = std::pow(jap, s) * std::norm(f[i]);
    }
    return std::sqrt(pairwise_sum(terms));
}

double l2_norm(const SurfaceField& f) { return sobolev_norm(f, 0.0); }

double aniso_weight(std::span<const double> xi) {
    double sq = 0.0;
    for (double c : xi) sq += c * c;
    if (sq == 0.0) throw SolverError("aniso_weight: xi must be nonzero");
    return (xi[0] * xi[0] + sq * sq) / sq;
}

double dyadic_chi(double r) {
    r = std::abs(r);
    if (r <= 0.5) return 1.0;
    if (r >= 1.0) return 0.0;
    double t = 2.0 * r - 1.0; // in (0, 1)
    return std::exp(1.0 - 1.0 / (1.0 - t * t));
}

double dyadic_phi(int j, double r) {
    if (j < 0) return 0.0;
    if (j == 0) return dyadic_chi(r);
    double rj = std::ldexp(r, -j); // 2^{-j} r
    return dyadic_chi(rj) - dyadic_chi(2.0 * rj);
}

int dyadic_block_count(const DomainSpec& spec) {
    double max_mag = (spec.nx / 2.0) * std::sqrt(static_cast<double>(spec.d));
    int jmax = 1;
    while (std::ldexp(1.0, jmax - 1) < max_mag) ++jmax; // phi_j = 0 once 2^{j-1} >= |xi|... keep one extra
    return jmax + 1;
}

SurfaceField dyadic_block(const SurfaceField& f, int j) {
    if (j < 0) throw SolverError("dyadic_block: j must be >= 0");
    const DomainSpec& spec = f.spec();
    SurfaceField out(spec);
    for (std::size_t i = 0; i < spec.lattice_size(); ++i)
        out[i] = dyadic_phi(j, xi_mag(spec.wavenumber(i))) * f[i];
    return out;
}

double dyadic_block_norm(const SurfaceField& f, int j) {
    const DomainSpec& spec = f.spec();
    std::vector<double> terms(spec.lattice_size());
    for (std::size_t i = 0; i < terms.size(); ++i) {
        double w = dyadic_phi(j, xi_mag(spec.wavenumber(i)));
        terms[i] = w * w * std::norm(f[i]);
    }
    return std::sqrt(pairwise_sum(terms));
}

double dyadic_norm(const SurfaceField& f, double s, bool sharp) {
    int jmax = dyadic_block_count(f.spec());
    std::vector<double> terms;
    for (int j = sharp ? 1 : 0; j <= jmax; ++j) {
        double bn = dyadic_block_norm(f, j);
        terms.push_back(std::pow(4.0, s * j) * bn * bn);
    }
    return std::sqrt(pairwise_sum(terms));
}

double slab_l2(const StripField& v, int j) {
    const DomainSpec& spec = v.spec();
    std::vector<double> terms(spec.lattice_size());
    const cplx* s = v.slab(j);
    for (std::size_t i = 0; i < terms.size(); ++i) terms[i] = std::norm(s[i]);
    return std::sqrt(pairwise_sum(terms));
}

namespace {

// Lq norm over the z nodes by composite trapezoid (max for q = inf).
double lq_z(const std::vector<double>& h, double dz, double q) {
    if (q == kInfExponent) return *std::max_element(h.begin(), h.end());
    std::vector<double> terms(h.size());
    for (std::size_t j = 0; j < h.size(); ++j) {
        double w = (j == 0 || j + 1 == h.size()) ? 0.5 : 1.0;
        terms[j] = w * dz * std::pow(h[j], q);
    }
    return std::pow(pairwise_sum(terms), 1.0 / q);
}

} // namespace

double chemin_lerner_norm(const StripField& v, double q, double s, bool sharp) {
    if (q < 1.0) throw SolverError("chemin_lerner_norm: q must be in [1, inf]");
    if (v.nz() < 2) throw SolverError("chemin_lerner_norm: need at least 2 z nodes");
    const DomainSpec& spec = v.spec();
    int jmax = dyadic_block_count(spec);
    double dz = spec.dz();

    std::vector<double> terms;
    std::vector<double> h(spec.nz);
    for (int j = sharp ? 1 : 0; j <= jmax; ++j) {
        for (int k = 0; k < spec.nz; ++k) {
            std::vector<double> sq(spec.lattice_size());
            const cplx* slab = v.slab(k);
            for (std::size_t i = 0; i < sq.size(); ++i) {
                double w = dyadic_phi(j, xi_mag(spec.wavenumber(i)));
                sq[i] = w * w * std::norm(slab[i]);
            }
            h[k] = std::sqrt(pairwise_sum(sq));
        }
        double blk = lq_z(h, dz, q);
        terms.push_back(std::pow(4.0, s * j) * blk * blk);
    }
    return std::sqrt(pairwise_sum(terms));
}

double norm_U(const StripField& v, double s) {
    return chemin_lerner_norm(v, kInfExponent, s, false) + chemin_lerner_norm(v, 1.0, s + 1.0, false);
}

} // namespace muskat
