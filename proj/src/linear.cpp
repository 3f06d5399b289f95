#include "muskat/linear.hpp"

#include <cmath>

#include "muskat/multipliers.hpp"
#include "muskat/norms.hpp"
#include "muskat/strip_ops.hpp"
#include "muskat/transforms.hpp"

namespace muskat {

namespace {

double default_compat_tol(const DomainSpec& spec, double requested) {
    if (requested > 0.0) return requested;
    double h = spec.dz();
    return std::max(1e-8, 10.0 * h * h);
}

// L2 norm over the strip: sqrt(int_z ||slab||^2 dz), trapezoid.
double strip_l2(const StripField& v) {
    const DomainSpec& spec = v.spec();
    double h = spec.dz();
    std::vector<double> terms(spec.nz);
    for (int j = 0; j < spec.nz; ++j) {
        double w = (j == 0 || j == spec.nz - 1) ? 0.5 * h : h;
        double s = slab_l2(v, j);
        terms[j] = w * s * s;
    }
    return std::sqrt(pairwise_sum(terms));
}

// grad of the Poisson extension of eta: horizontal components i xi_k e^{|xi| z},
// vertical |xi| e^{|xi| z} (exact per mode).
std::vector<StripField> grad_poisson(const SurfaceField& eta) {
    const DomainSpec& spec = eta.spec();
    std::vector<StripField> g(spec.d + 1, StripField(spec));
    const auto& z = g[0].z_nodes();
    for (int j = 0; j < spec.nz; ++j) {
        for (std::size_t i = 0; i < spec.lattice_size(); ++i) {
            auto xi = spec.wavenumber(i);
            double r = xi_mag(xi);
            cplx e = std::exp(r * z[j]) * eta[i];
            for (int k = 0; k < spec.d; ++k)
                g[k].at(j, i) = cplx(0.0, static_cast<double>(xi[k])) * e;
            g[spec.d].at(j, i) = r * e;
        }
    }
    return g;
}

} // namespace

StripField solve_udln(const StripField& f, const SurfaceField& k, const SurfaceField& l) {
    const DomainSpec& spec = f.spec();
    if (!spec.same_surface(k.spec()) || !spec.same_surface(l.spec()))
        throw SolverError("solve_udln: spec mismatch");
    const int n = spec.nz;
    const double h = spec.dz();
    StripField p(spec);

    // -p'' + |xi|^2 p = f per mode; Dirichlet top, one-sided second-order
    // Neumann row at the bed reduced to tridiagonal via the first interior row.
    std::vector<double> diag(n), sup(n), sub(n);
    std::vector<cplx> rhs(n), sol(n);
    for (std::size_t i = 0; i < spec.lattice_size(); ++i) {
        double kap2 = [&] {
            auto xi = spec.wavenumber(i);
            return static_cast<double>(xi[0]) * xi[0] + static_cast<double>(xi[1]) * xi[1];
        }();

        diag[0] = 2.0;
        sup[0] = kap2 * h * h - 2.0;
        rhs[0] = 2.0 * h * l[i] + h * h * f.at(1, i);
        for (int j = 1; j < n - 1; ++j) {
            sub[j] = -1.0 / (h * h);
            diag[j] = 2.0 / (h * h) + kap2;
            sup[j] = -1.0 / (h * h);
            rhs[j] = f.at(j, i);
        }
        diag[n - 1] = 1.0;
        sub[n - 1] = 0.0;
        rhs[n - 1] = k[i];

        // Thomas sweep
        std::vector<double> cp(n);
        std::vector<cplx> dp(n);
        if (diag[0] == 0.0) throw SolverError("solve_udln: singular tridiagonal");
        cp[0] = sup[0] / diag[0];
        dp[0] = rhs[0] / diag[0];
        for (int j = 1; j < n; ++j) {
            double denom = diag[j] - sub[j] * cp[j - 1];
            if (denom == 0.0) throw SolverError("solve_udln: singular tridiagonal");
            cp[j] = (j < n - 1 ? sup[j] : 0.0) / denom;
            dp[j] = (rhs[j] - sub[j] * dp[j - 1]) / denom;
        }
        sol[n - 1] = dp[n - 1];
        for (int j = n - 2; j >= 0; --j) sol[j] = dp[j] - cp[j] * sol[j + 1];
        for (int j = 0; j < n; ++j) p.at(j, i) = sol[j];
    }
    return p;
}

StripField xi_operator(const SurfaceField& k) {
    const DomainSpec& spec = k.spec();
    StripField out(spec);
    const auto& z = out.z_nodes();
    for (int j = 0; j < spec.nz; ++j)
        for (std::size_t i = 0; i < spec.lattice_size(); ++i)
            out.at(j, i) = k[i] * cosh_ratio(xi_mag(spec.wavenumber(i)), z[j], 0.0, spec.b);
    return out;
}

SurfaceField compute_psi(const StripField& f, const SurfaceField& h_plus,
                         const SurfaceField& h_minus, const SurfaceField& k) {
    const DomainSpec& spec = f.spec();
    const double h = spec.dz();
    const auto& z = f.z_nodes();
    SurfaceField psi(spec);
    for (std::size_t i = 0; i < spec.lattice_size(); ++i) {
        double r = xi_mag(spec.wavenumber(i));
        cplx acc(0.0, 0.0);
        for (int j = 0; j < spec.nz; ++j) {
            double w = (j == 0 || j == spec.nz - 1) ? 0.5 * h : h;
            acc += w * f.at(j, i) * cosh_ratio(r, z[j], 0.0, spec.b);
        }
        double sech_b = cosh_ratio(r, -spec.b, 0.0, spec.b);
        psi[i] = acc - k[i] * m_symbol(r, spec.b) - h_plus[i] + h_minus[i] * sech_b;
    }
    return psi;
}

double check_compatibility(const LinearData& data) {
    const DomainSpec& spec = data.spec();
    const double h = spec.dz();
    std::size_t zero = spec.lattice_index(0, 0);
    cplx acc(0.0, 0.0);
    for (int j = 0; j < spec.nz; ++j) {
        double w = (j == 0 || j == spec.nz - 1) ? 0.5 * h : h;
        acc += w * data.G.at(j, zero);
    }
    double res = std::abs(acc - data.H[zero]);
    data.compat_residual = res;
    return res;
}

SurfaceField solve_eta_symbol(const SurfaceField& psi, double gamma, double b, double mean_tol) {
    const DomainSpec& spec = psi.spec();
    if (std::abs(psi[spec.lattice_index(0, 0)]) > mean_tol)
        throw NonzeroMean("solve_eta_symbol: psi has nonzero mean " +
                          std::to_string(std::abs(psi[spec.lattice_index(0, 0)])));
    SurfaceField eta(spec);
    for (std::size_t i = 0; i < spec.lattice_size(); ++i) {
        auto xi = spec.wavenumber(i);
        double r = xi_mag(xi);
        if (r == 0.0) continue;
        eta[i] = psi[i] / cplx(m_symbol(r, b), -gamma * xi[0]);
    }
    eta.set_zero_mean(true);
    return eta;
}

T2Result solve_T2(const StripField& f, const SurfaceField& h_plus, const SurfaceField& h_minus,
                  const SurfaceField& k, const LinearOptions& opt) {
    const DomainSpec& spec = f.spec();
    const double tol = default_compat_tol(spec, opt.compat_tol);

    SurfaceField psi = compute_psi(f, h_plus, h_minus, k);
    double mean_res = std::abs(psi[spec.lattice_index(0, 0)]);
    if (opt.enforce_tol && mean_res > tol)
        throw CompatibilityViolation("solve_T2: zero-mode compatibility residual " +
                                     std::to_string(mean_res) + " exceeds tol");
    SurfaceField psi0 = psi;
    psi0.remove_mean(); // the zero mode is pure discretization residual
    SurfaceField eta = solve_eta_symbol(psi0, opt.gamma, spec.b, tol);

    // Bed Neumann datum of the pressure: h- + dz P(eta)|_{-b} = h- + |xi| e^{-b|xi|} eta.
    SurfaceField l = h_minus;
    for (std::size_t i = 0; i < spec.lattice_size(); ++i) {
        double r = xi_mag(spec.wavenumber(i));
        l[i] += r * std::exp(-spec.b * r) * eta[i];
    }
    T2Result out{solve_udln(f, k, l), eta, 0.0};

    // The construction guarantees the top Neumann condition; measure it.
    SurfaceField dzp_top = dz_at_top(out.p);
    SurfaceField res(spec);
    for (std::size_t i = 0; i < spec.lattice_size(); ++i) {
        auto xi = spec.wavenumber(i);
        double r = xi_mag(xi);
        res[i] = -dzp_top[i] - r * eta[i] + cplx(0.0, opt.gamma * xi[0]) * eta[i] - h_plus[i];
    }
    out.top_neumann_residual = l2_norm(res);
    return out;
}

LinearSolution solve_T3(const LinearData& data, const LinearOptions& opt) {
    const DomainSpec& spec = data.spec();
    if (static_cast<int>(data.F.size()) != spec.d + 1)
        throw SolverError("solve_T3: F must have d + 1 components");
    const double tol = default_compat_tol(spec, opt.compat_tol);

    double compat = check_compatibility(data);
    if (opt.enforce_tol && compat > tol)
        throw CompatibilityViolation("solve_T3: V^s zero-mode residual " + std::to_string(compat) +
                                     " exceeds tol");

    // (f, h+, h-, k) = (G - div F, H - F_n|top, -F_n|bed, K)
    StripField f = data.G;
    {
        StripField divF = div_x(std::vector<StripField>(data.F.begin(), data.F.begin() + spec.d));
        divF += dz_strip(data.F[spec.d]);
        f -= divF;
    }
    SurfaceField h_plus = data.H - data.F[spec.d].slab_field(spec.nz - 1);
    SurfaceField h_minus = -1.0 * data.F[spec.d].slab_field(0);
    T2Result t2 = solve_T2(f, h_plus, h_minus, data.K, opt);

    LinearSolution sol;
    sol.p = t2.p;
    sol.eta = t2.eta;
    sol.u.assign(spec.d + 1, StripField(spec));
    std::vector<StripField> gp = grad_poisson(sol.eta);
    for (int kk = 0; kk < spec.d; ++kk) {
        sol.u[kk] = data.F[kk] - dx_strip(sol.p, kk) - gp[kk];
    }
    sol.u[spec.d] = data.F[spec.d] - dz_strip(sol.p) - gp[spec.d];

    // Residuals of the five equations (first one vanishes by construction).
    sol.residuals.assign(5, 0.0);
    {
        StripField divU = div_x(std::vector<StripField>(sol.u.begin(), sol.u.begin() + spec.d));
        divU += dz_strip(sol.u[spec.d]);
        divU -= data.G;
        sol.residuals[1] = strip_l2(divU);

        SurfaceField top = sol.u[spec.d].slab_field(spec.nz - 1);
        SurfaceField d1eta = apply_multiplier(sol.eta, multiplier_derivative(spec, 0));
        sol.residuals[2] = l2_norm(top + opt.gamma * d1eta - data.H);

        sol.residuals[3] = l2_norm(sol.p.slab_field(spec.nz - 1) - data.K);
        sol.residuals[4] = l2_norm(sol.u[spec.d].slab_field(0));
    }
    return sol;
}

LinearData forward_T3(const std::vector<StripField>& u, const StripField& p,
                      const SurfaceField& eta, double gamma) {
    const DomainSpec& spec = p.spec();
    if (static_cast<int>(u.size()) != spec.d + 1)
        throw SolverError("forward_T3: u must have d + 1 components");
    LinearData data;
    std::vector<StripField> gp = grad_poisson(eta);
    for (int k = 0; k < spec.d; ++k) data.F.push_back(u[k] + dx_strip(p, k) + gp[k]);
    data.F.push_back(u[spec.d] + dz_strip(p) + gp[spec.d]);

    data.G = div_x(std::vector<StripField>(u.begin(), u.begin() + spec.d));
    data.G += dz_strip(u[spec.d]);

    SurfaceField d1eta = apply_multiplier(eta, multiplier_derivative(spec, 0));
    data.H = u[spec.d].slab_field(spec.nz - 1) + gamma * d1eta;
    data.K = p.slab_field(spec.nz - 1);
    return data;
}

} // namespace muskat
