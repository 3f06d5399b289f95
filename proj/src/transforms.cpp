#include "muskat/transforms.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

namespace muskat {

namespace {

// FFTW plan creation is not thread safe; execution on distinct buffers is.
// Plans are cached per (d, nx, sign) and created with FFTW_UNALIGNED so they
// run on any caller buffer.
class PlanCache {
  public:
    static fftw_plan get(int d, int nx, int sign) {
        static PlanCache cache;
        std::scoped_lock lock(cache.mutex_);
        auto key = std::tuple{d, nx, sign};
        auto it = cache.plans_.find(key);
        if (it != cache.plans_.end()) return it->second;

        std::size_t n = d == 1 ? static_cast<std::size_t>(nx)
                               : static_cast<std::size_t>(nx) * static_cast<std::size_t>(nx);
        std::vector<cplx> probe(n);
        auto* buf = reinterpret_cast<fftw_complex*>(probe.data());
        fftw_plan plan = d == 1
            ? fftw_plan_dft_1d(nx, buf, buf, sign, FFTW_ESTIMATE | FFTW_UNALIGNED)
            : fftw_plan_dft_2d(nx, nx, buf, buf, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
        cache.plans_[key] = plan;
        return plan;
    }

  private:
    PlanCache() = default;
    ~PlanCache() {
        for (auto& [k, p] : plans_) fftw_destroy_plan(p);
    }
    std::mutex mutex_;
    std::map<std::tuple<int, int, int>, fftw_plan> plans_;
};

void run_fft(const DomainSpec& spec, std::vector<cplx>& buf, int sign) {
    fftw_plan plan = PlanCache::get(spec.d, spec.nx, sign);
    auto* b = reinterpret_cast<fftw_complex*>(buf.data());
    fftw_execute_dft(plan, b, b);
}

// DFT bin index for a signed wavenumber component.
inline int bin_of(int k, int nx) { return k >= 0 ? k : k + nx; }

} // namespace

SurfaceField transform_forward(const DomainSpec& spec, const std::vector<double>& grid_values) {
    spec.validate();
    if (grid_values.size() != spec.grid_size())
        throw SolverError("transform_forward: grid size mismatch with DomainSpec");

    std::vector<cplx> buf(grid_values.begin(), grid_values.end());
    run_fft(spec, buf, FFTW_FORWARD);

    const double scale = 1.0 / static_cast<double>(spec.grid_size());
    const int half = spec.nx / 2;
    SurfaceField out(spec);
    for (std::size_t i = 0; i < spec.lattice_size(); ++i) {
        auto xi = spec.wavenumber(i);
        double w = scale;
        if (std::abs(xi[0]) == half) w *= 0.5;
        if (spec.d == 2 && std::abs(xi[1]) == half) w *= 0.5;
        std::size_t bin = spec.d == 1
            ? static_cast<std::size_t>(bin_of(xi[0], spec.nx))
            : static_cast<std::size_t>(bin_of(xi[0], spec.nx)) * spec.nx + bin_of(xi[1], spec.nx);
        out[i] = w * buf[bin];
    }
    return out;
}

std::vector<double> transform_inverse(const SurfaceField& field) {
    const DomainSpec& spec = field.spec();
    std::vector<cplx> buf(spec.grid_size(), cplx(0.0, 0.0));
    // Fold the symmetric lattice into DFT bins; +-nx/2 share a bin, which is
    // exact on the grid because exp(+-i(nx/2)x_j) coincide there.
    for (std::size_t i = 0; i < spec.lattice_size(); ++i) {
        auto xi = spec.wavenumber(i);
        std::size_t bin = spec.d == 1
            ? static_cast<std::size_t>(bin_of(xi[0], spec.nx))
            : static_cast<std::size_t>(bin_of(xi[0], spec.nx)) * spec.nx + bin_of(xi[1], spec.nx);
        buf[bin] += field[i];
    }
    run_fft(spec, buf, FFTW_BACKWARD);

    std::vector<double> out(spec.grid_size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = buf[i].real();
    return out;
}

std::vector<double> grid_points_1d(const DomainSpec& spec) {
    std::vector<double> x(spec.nx);
    for (int i = 0; i < spec.nx; ++i) x[i] = 2.0 * M_PI * i / spec.nx;
    return x;
}

void apply_dealias_mask(SurfaceField& f) {
    const DomainSpec& spec = f.spec();
    const int cutoff = spec.nx / 3;
    for (std::size_t i = 0; i < spec.lattice_size(); ++i) {
        auto xi = spec.wavenumber(i);
        if (std::abs(xi[0]) > cutoff || std::abs(xi[1]) > cutoff) f[i] = 0.0;
    }
}

void zero_nyquist(SurfaceField& f) {
    const DomainSpec& spec = f.spec();
    const int half = spec.nx / 2;
    for (std::size_t i = 0; i < spec.lattice_size(); ++i) {
        auto xi = spec.wavenumber(i);
        if (std::abs(xi[0]) == half || std::abs(xi[1]) == half) f[i] = 0.0;
    }
}

SurfaceField multiply(const SurfaceField& a, const SurfaceField& b, bool dealias) {
    if (!a.spec().same_surface(b.spec())) throw SolverError("multiply: spec mismatch");
    std::vector<double> ga = transform_inverse(a);
    std::vector<double> gb = transform_inverse(b);
    for (std::size_t i = 0; i < ga.size(); ++i) ga[i] *= gb[i];
    SurfaceField out = transform_forward(a.spec(), ga);
    if (dealias) apply_dealias_mask(out);
    return out;
}

SurfaceField divide(const SurfaceField& a, const SurfaceField& b, bool dealias) {
    if (!a.spec().same_surface(b.spec())) throw SolverError("divide: spec mismatch");
    std::vector<double> ga = transform_inverse(a);
    std::vector<double> gb = transform_inverse(b);
    for (std::size_t i = 0; i < ga.size(); ++i) {
        if (gb[i] == 0.0) throw SolverError("divide: zero denominator on the grid");
        ga[i] /= gb[i];
    }
    SurfaceField out = transform_forward(a.spec(), ga);
    if (dealias) apply_dealias_mask(out);
    return out;
}

SurfaceField resample(const SurfaceField& f, const DomainSpec& target) {
    if (f.spec().d != target.d) throw SolverError("resample: dimension mismatch");
    SurfaceField out(target);
    int src_half = f.spec().nx / 2;
    int dst_half = target.nx / 2;
    for (std::size_t i = 0; i < f.spec().lattice_size(); ++i) {
        auto xi = f.spec().wavenumber(i);
        if (std::abs(xi[0]) > dst_half || std::abs(xi[1]) > dst_half) continue;
        out[target.lattice_index(xi[0], xi[1])] += f[i];
    }
    if (src_half > dst_half) out.symmetrize();
    return out;
}

double grid_max_abs(const SurfaceField& f) {
    std::vector<double> g = transform_inverse(f);
    double m = 0.0;
    for (double v : g) m = std::max(m, std::abs(v));
    return m;
}

double grid_min(const SurfaceField& f) {
    std::vector<double> g = transform_inverse(f);
    double m = g.empty() ? 0.0 : g[0];
    for (double v : g) m = std::min(m, v);
    return m;
}

double pairwise_sum(const std::vector<double>& terms) {
    if (terms.empty()) return 0.0;
    std::vector<double> acc = terms;
    std::size_t n = acc.size();
    while (n > 1) {
        std::size_t half = (n + 1) / 2;
        for (std::size_t i = 0; i < n / 2; ++i) acc[i] = acc[2 * i] + acc[2 * i + 1];
        if (n % 2 == 1) acc[n / 2] = acc[n - 1];
        n = half;
    }
    return acc[0];
}

double grid_l2(const std::vector<double>& grid_values) {
    std::vector<double> sq(grid_values.size());
    for (std::size_t i = 0; i < sq.size(); ++i) sq[i] = grid_values[i] * grid_values[i];
    return std::sqrt(pairwise_sum(sq) / static_cast<double>(sq.size()));
}

} // namespace muskat
