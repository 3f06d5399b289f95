// domain.hpp — periodic-strip domain description and the spectral field types.
//
// All fields live on the torus (period 2*pi per horizontal dimension) and are
// stored as complex Fourier coefficients on the symmetric lattice
// |xi_i| <= nx/2, row-major with xi_1 slowest.  Real-valued fields satisfy
// coeff(-xi) = conj(coeff(xi)).

#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "muskat/errors.hpp"

namespace muskat {

using cplx = std::complex<double>;

struct DomainSpec {
    int d = 1;      // surface dimension (1 or 2)
    int nx = 16;    // grid points / modes per horizontal dimension, even
    int nz = 65;    // vertical nodes on [-b, 0], odd so -b, midpoint, 0 are nodes
    double b = 1.0; // strip depth

    void validate() const {
        if (d != 1 && d != 2) throw SolverError("DomainSpec: d must be 1 or 2");
        if (nx < 8 || nx % 2 != 0) throw SolverError("DomainSpec: nx must be even and >= 8");
        if (nz < 9 || nz % 2 != 1) throw SolverError("DomainSpec: nz must be odd and >= 9");
        if (!(b > 0.0)) throw SolverError("DomainSpec: depth b must be positive");
    }

    int lattice_extent() const { return nx + 1; }
    std::size_t lattice_size() const {
        std::size_t e = static_cast<std::size_t>(lattice_extent());
        return d == 1 ? e : e * e;
    }
    std::size_t grid_size() const {
        std::size_t n = static_cast<std::size_t>(nx);
        return d == 1 ? n : n * n;
    }

    // Lattice index <-> wavenumber.  xi components in [-nx/2, nx/2].
    std::array<int, 2> wavenumber(std::size_t idx) const {
        int e = lattice_extent();
        if (d == 1) return {static_cast<int>(idx) - nx / 2, 0};
        return {static_cast<int>(idx) / e - nx / 2, static_cast<int>(idx) % e - nx / 2};
    }
    std::size_t lattice_index(int xi1, int xi2 = 0) const {
        int e = lattice_extent();
        if (d == 1) return static_cast<std::size_t>(xi1 + nx / 2);
        return static_cast<std::size_t>(xi1 + nx / 2) * e + static_cast<std::size_t>(xi2 + nx / 2);
    }

    double dz() const { return b / (nz - 1); }
    // z_nodes[0] = -b and z_nodes[nz-1] = 0 exactly.
    std::vector<double> z_nodes() const {
        std::vector<double> z(nz);
        double h = dz();
        for (int j = 0; j < nz; ++j) z[j] = -b + h * j;
        z[0] = -b;
        z[nz - 1] = 0.0;
        return z;
    }

    bool operator==(const DomainSpec& o) const {
        return d == o.d && nx == o.nx && nz == o.nz && b == o.b;
    }
    bool same_surface(const DomainSpec& o) const { return d == o.d && nx == o.nx && b == o.b; }
};

inline double xi_mag(const std::array<int, 2>& xi) {
    return std::hypot(static_cast<double>(xi[0]), static_cast<double>(xi[1]));
}

// Real scalar function on the torus, stored spectrally.
class SurfaceField {
  public:
    SurfaceField() = default;
    explicit SurfaceField(const DomainSpec& spec)
        : spec_(spec), coeffs_(spec.lattice_size(), cplx(0.0, 0.0)) {}

    const DomainSpec& spec() const { return spec_; }
    std::vector<cplx>& coeffs() { return coeffs_; }
    const std::vector<cplx>& coeffs() const { return coeffs_; }

    cplx& operator[](std::size_t idx) { return coeffs_[idx]; }
    const cplx& operator[](std::size_t idx) const { return coeffs_[idx]; }

    cplx at(int xi1, int xi2 = 0) const { return coeffs_[spec_.lattice_index(xi1, xi2)]; }
    void set(int xi1, cplx v) { coeffs_[spec_.lattice_index(xi1, 0)] = v; }
    void set(int xi1, int xi2, cplx v) { coeffs_[spec_.lattice_index(xi1, xi2)] = v; }

    // Value of the zero mode; equals the mean of the field on the torus.
    double mean() const { return coeffs_[spec_.lattice_index(0, 0)].real(); }
    void remove_mean() { coeffs_[spec_.lattice_index(0, 0)] = 0.0; }

    bool zero_mean_flag() const { return zero_mean_; }
    void set_zero_mean(bool on) {
        zero_mean_ = on;
        if (on) remove_mean();
    }

    // Largest |coeff(-xi) - conj(coeff(xi))| over the lattice.
    double conjugate_symmetry_defect() const {
        double worst = 0.0;
        for (std::size_t i = 0; i < coeffs_.size(); ++i) {
            auto xi = spec_.wavenumber(i);
            cplx mirrored = coeffs_[spec_.lattice_index(-xi[0], -xi[1])];
            worst = std::max(worst, std::abs(mirrored - std::conj(coeffs_[i])));
        }
        return worst;
    }
    // Restore exact conjugate symmetry by averaging mirror pairs.
    void symmetrize() {
        for (std::size_t i = 0; i < coeffs_.size(); ++i) {
            auto xi = spec_.wavenumber(i);
            std::size_t m = spec_.lattice_index(-xi[0], -xi[1]);
            if (m < i) continue;
            cplx avg = 0.5 * (coeffs_[i] + std::conj(coeffs_[m]));
            coeffs_[i] = avg;
            coeffs_[m] = std::conj(avg);
        }
        if (zero_mean_) remove_mean();
    }

    SurfaceField& operator+=(const SurfaceField& o) {
        require_same(o);
        for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
        return *this;
    }
    SurfaceField& operator-=(const SurfaceField& o) {
        require_same(o);
        for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
        return *this;
    }
    SurfaceField& operator*=(double a) {
        for (auto& c : coeffs_) c *= a;
        return *this;
    }
    friend SurfaceField operator+(SurfaceField a, const SurfaceField& b) { return a += b; }
    friend SurfaceField operator-(SurfaceField a, const SurfaceField& b) { return a -= b; }
    friend SurfaceField operator*(double a, SurfaceField f) { return f *= a; }

  private:
    void require_same(const SurfaceField& o) const {
        if (!(spec_.same_surface(o.spec_))) throw SolverError("SurfaceField: spec mismatch");
    }
    DomainSpec spec_;
    std::vector<cplx> coeffs_;
    bool zero_mean_ = false;
};

// z-indexed stack of surface coefficient slabs on [-b, 0].
class StripField {
  public:
    StripField() = default;
    explicit StripField(const DomainSpec& spec)
        : spec_(spec), z_(spec.z_nodes()), data_(spec.lattice_size() * spec.nz, cplx(0.0, 0.0)) {}

    const DomainSpec& spec() const { return spec_; }
    const std::vector<double>& z_nodes() const { return z_; }
    int nz() const { return spec_.nz; }

    cplx* slab(int j) { return data_.data() + static_cast<std::size_t>(j) * spec_.lattice_size(); }
    const cplx* slab(int j) const {
        return data_.data() + static_cast<std::size_t>(j) * spec_.lattice_size();
    }
    cplx& at(int j, std::size_t idx) { return slab(j)[idx]; }
    const cplx& at(int j, std::size_t idx) const { return slab(j)[idx]; }

    std::vector<cplx>& data() { return data_; }
    const std::vector<cplx>& data() const { return data_; }

    SurfaceField slab_field(int j) const {
        SurfaceField f(spec_);
        const cplx* s = slab(j);
        for (std::size_t i = 0; i < spec_.lattice_size(); ++i) f[i] = s[i];
        return f;
    }
    void set_slab(int j, const SurfaceField& f) {
        cplx* s = slab(j);
        for (std::size_t i = 0; i < spec_.lattice_size(); ++i) s[i] = f[i];
    }

    StripField& operator+=(const StripField& o) {
        for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
        return *this;
    }
    StripField& operator-=(const StripField& o) {
        for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
        return *this;
    }
    StripField& operator*=(double a) {
        for (auto& c : data_) c *= a;
        return *this;
    }
    friend StripField operator-(StripField a, const StripField& b) { return a -= b; }
    friend StripField operator+(StripField a, const StripField& b) { return a += b; }

  private:
    DomainSpec spec_;
    std::vector<double> z_;
    std::vector<cplx> data_;
};

// Fourier multiplier: one complex scalar per lattice wavenumber, evaluated on a
// fixed DomainSpec.  symbol(-xi) = conj(symbol(xi)) so application preserves
// realness.
struct Multiplier {
    DomainSpec spec;
    std::vector<cplx> symbol;
    std::string descriptor;

    Multiplier() = default;
    template <class Fn>
    Multiplier(const DomainSpec& s, std::string name, Fn&& fn)
        : spec(s), symbol(s.lattice_size()), descriptor(std::move(name)) {
        for (std::size_t i = 0; i < symbol.size(); ++i) symbol[i] = fn(s.wavenumber(i));
    }

    double symmetry_defect() const {
        double worst = 0.0;
        for (std::size_t i = 0; i < symbol.size(); ++i) {
            auto xi = spec.wavenumber(i);
            worst = std::max(worst,
                             std::abs(symbol[spec.lattice_index(-xi[0], -xi[1])] - std::conj(symbol[i])));
        }
        return worst;
    }
};

} // namespace muskat
