#include "muskat/dn.hpp"

#include <cmath>
#include <limits>

#include "muskat/multipliers.hpp"
#include "muskat/norms.hpp"
#include "muskat/strip_ops.hpp"
#include "muskat/transforms.hpp"

namespace muskat {

namespace {

// Segment kernel table: ratio(i, j) = cosh((z_j+b)|xi_i|)/cosh((z_{j+1}+b)|xi_i|),
// the exact propagator of the z marches over one grid segment.
struct RatioTable {
    explicit RatioTable(const DomainSpec& spec) : spec(spec), seg(spec.lattice_size() * (spec.nz - 1)) {
        auto z = spec.z_nodes();
        for (std::size_t i = 0; i < spec.lattice_size(); ++i) {
            double r = xi_mag(spec.wavenumber(i));
            for (int j = 0; j + 1 < spec.nz; ++j)
                seg[i * (spec.nz - 1) + j] = cosh_ratio(r, z[j], z[j + 1], spec.b);
        }
    }
    double at(std::size_t i, int j) const { return seg[i * (spec.nz - 1) + j]; }
    DomainSpec spec;
    std::vector<double> seg;
};

// div_x Q_b - D(z) Q_a, the right-hand side of the w equation.
StripField w_source(const QFields& q) {
    StripField g = div_x(q.qb);
    g -= apply_dz_operator(q.qa);
    return g;
}

// Upward march: w(-b) = 0,
// w(z_{j+1}) = r_j w(z_j) + (h/2)(r_j g(z_j) + g(z_{j+1}))  (trapezoid).
StripField integrate_w(const StripField& g, const RatioTable& rt) {
    const DomainSpec& spec = g.spec();
    const double h = spec.dz();
    StripField w(spec);
    for (std::size_t i = 0; i < spec.lattice_size(); ++i) {
        cplx acc(0.0, 0.0);
        for (int j = 0; j + 1 < spec.nz; ++j) {
            double r = rt.at(i, j);
            acc = r * acc + 0.5 * h * (r * g.at(j, i) + g.at(j + 1, i));
            w.at(j + 1, i) = acc;
        }
    }
    return w;
}

// Downward march: v(0) = f_hat,
// v(z_j) = r_j v(z_{j+1}) - (h/2)(g(z_j) + r_j g(z_{j+1})) with g = w + Q_a.
StripField integrate_v(const SurfaceField& f, const StripField* h_field, const RatioTable& rt) {
    const DomainSpec& spec = f.spec();
    const double h = spec.dz();
    StripField v(spec);
    for (std::size_t i = 0; i < spec.lattice_size(); ++i) {
        cplx acc = f[i];
        v.at(spec.nz - 1, i) = acc;
        for (int j = spec.nz - 2; j >= 0; --j) {
            double r = rt.at(i, j);
            acc = r * acc;
            if (h_field)
                acc -= 0.5 * h * (h_field->at(j, i) + r * h_field->at(j + 1, i));
            v.at(j, i) = acc;
        }
    }
    return v;
}

} // namespace

StraightenedCoefficients build_straightening(const SurfaceField& eta, double margin) {
    const DomainSpec& spec = eta.spec();
    spec.validate();

    StraightenedCoefficients sc;
    sc.spec = spec;
    sc.ext_eta = poisson_extension(eta);
    sc.ext_abs_eta = poisson_extension(apply_multiplier(eta, multiplier_abs(spec)));
    for (int k = 0; k < spec.d; ++k)
        sc.ext_grad_eta.push_back(poisson_extension(apply_multiplier(eta, multiplier_derivative(spec, k))));

    const auto& z = sc.ext_eta.z_nodes();
    sc.rho = StripField(spec);
    sc.dz_rho = StripField(spec);
    sc.grad_rho.assign(spec.d, StripField(spec));
    sc.c1.resize(spec.nz);
    sc.c2.resize(spec.nz);

    sc.min_dz_rho = std::numeric_limits<double>::infinity();
    double sup_ext = 0.0, sup_abs = 0.0;
    const std::size_t n = spec.lattice_size();
    for (int j = 0; j < spec.nz; ++j) {
        const double zb = (z[j] + spec.b) / spec.b; // (z+b)/b, exactly 0 at the bed
        SurfaceField c1_coeff(spec);
        for (std::size_t i = 0; i < n; ++i) {
            cplx e = sc.ext_eta.at(j, i);
            cplx ea = sc.ext_abs_eta.at(j, i);
            sc.rho.at(j, i) = zb * e;
            c1_coeff[i] = e / spec.b + zb * ea;
            sc.dz_rho.at(j, i) = c1_coeff[i];
            for (int k = 0; k < spec.d; ++k)
                sc.grad_rho[k].at(j, i) = zb * sc.ext_grad_eta[k].at(j, i);
        }
        // rho picks up + z, dz_rho picks up + 1 (constants live in the zero mode)
        sc.rho.at(j, spec.lattice_index(0, 0)) += z[j];
        sc.dz_rho.at(j, spec.lattice_index(0, 0)) += 1.0;

        sc.c1[j] = transform_inverse(c1_coeff);
        for (double val : sc.c1[j]) sc.min_dz_rho = std::min(sc.min_dz_rho, 1.0 + val);
        for (int k = 0; k < spec.d; ++k) {
            SurfaceField c2_coeff(spec);
            for (std::size_t i = 0; i < n; ++i) c2_coeff[i] = zb * sc.ext_grad_eta[k].at(j, i);
            sc.c2[j][k] = transform_inverse(c2_coeff);
        }

        SurfaceField e_only(spec), a_only(spec);
        for (std::size_t i = 0; i < n; ++i) {
            e_only[i] = sc.ext_eta.at(j, i);
            a_only[i] = sc.ext_abs_eta.at(j, i);
        }
        sup_ext = std::max(sup_ext, grid_max_abs(e_only));
        sup_abs = std::max(sup_abs, grid_max_abs(a_only));
    }
    sc.lipschitz_value = sup_ext + spec.b * sup_abs;

    if (sc.min_dz_rho <= margin) throw DiffeoViolation(sc.min_dz_rho, margin);
    return sc;
}

QFields q_nonlinearities(const StripField& v, const StripField& dzv,
                         const StraightenedCoefficients& sc, bool dealias) {
    const DomainSpec& spec = sc.spec;
    QFields q;
    q.qa = StripField(spec);
    q.qb.assign(spec.d, StripField(spec));

    for (int j = 0; j < spec.nz; ++j) {
        std::vector<std::vector<double>> gv(spec.d);
        for (int k = 0; k < spec.d; ++k) {
            SurfaceField dv(spec);
            const cplx* s = v.slab(j);
            for (std::size_t i = 0; i < spec.lattice_size(); ++i) {
                auto xi = spec.wavenumber(i);
                dv[i] = cplx(0.0, static_cast<double>(xi[k])) * s[i];
            }
            gv[k] = transform_inverse(dv);
        }
        std::vector<double> gdz = transform_inverse(dzv.slab_field(j));

        const auto& c1 = sc.c1[j];
        std::vector<double> qa_grid(spec.grid_size());
        std::vector<std::vector<double>> qb_grid(spec.d, std::vector<double>(spec.grid_size()));
        for (std::size_t p = 0; p < spec.grid_size(); ++p) {
            double grad_sq = 0.0, grad_dot = 0.0;
            for (int k = 0; k < spec.d; ++k) {
                double c2 = sc.c2[j][k][p];
                grad_sq += c2 * c2;
                grad_dot += c2 * gv[k][p];
                qb_grid[k][p] = -c1[p] * gv[k][p] + c2 * gdz[p];
            }
            qa_grid[p] = grad_dot - (grad_sq - c1[p]) / (1.0 + c1[p]) * gdz[p];
        }

        SurfaceField qa_c = transform_forward(spec, qa_grid);
        if (dealias) apply_dealias_mask(qa_c);
        q.qa.set_slab(j, qa_c);
        for (int k = 0; k < spec.d; ++k) {
            SurfaceField qb_c = transform_forward(spec, qb_grid[k]);
            if (dealias) apply_dealias_mask(qb_c);
            q.qb[k].set_slab(j, qb_c);
        }
    }
    return q;
}

StripField dz_from_pde(const StripField& v, const StripField& w, const StripField& qa_prev) {
    StripField dzv = apply_dz_operator(v);
    dzv += w;
    dzv += qa_prev;
    return dzv;
}

VwSolution solve_vw(const SurfaceField& eta, const SurfaceField& f, const DnOptions& opt) {
    if (!eta.spec().same_surface(f.spec())) throw SolverError("solve_vw: eta/f spec mismatch");
    if (!(opt.tol > 0.0)) throw SolverError("solve_vw: tol must be positive");
    const DomainSpec& spec = eta.spec();

    StraightenedCoefficients sc = build_straightening(eta, opt.margin);
    RatioTable rt(spec);

    VwSolution sol;
    sol.v = integrate_v(f, nullptr, rt); // cosh((z+b)|D|)/cosh(b|D|) f
    sol.w = StripField(spec);
    sol.q.qa = StripField(spec);
    sol.q.qb.assign(spec.d, StripField(spec));

    double prev_diff = 0.0;
    for (int sweep = 1; sweep <= opt.max_iter; ++sweep) {
        StripField dzv = dz_from_pde(sol.v, sol.w, sol.q.qa);
        sol.q = q_nonlinearities(sol.v, dzv, sc, opt.dealias);
        StripField w_new = integrate_w(w_source(sol.q), rt);
        StripField h_field = w_new + sol.q.qa;
        StripField v_new = integrate_v(f, &h_field, rt);

        // Stopping test relative to the iterate scale (absolute for small f).
        double scale = std::max(1.0, norm_U(v_new, opt.s_check));
        double diff = norm_U(v_new - sol.v, opt.s_check) / scale;
        sol.v = std::move(v_new);
        sol.w = std::move(w_new);
        sol.report.residual_history.push_back(diff);
        sol.report.iterations = sweep;
        if (sweep >= 2 && prev_diff > 0.0)
            sol.report.contraction_estimate = diff / prev_diff;
        prev_diff = diff;
        if (diff < opt.tol) {
            sol.report.converged = true;
            return sol;
        }
    }
    throw NoConvergence("solve_vw (eta outside the contraction regime?)", opt.max_iter);
}

SurfaceField dn_apply(const SurfaceField& eta, const SurfaceField& f, const DnOptions& opt) {
    VwSolution sol = solve_vw(eta, f, opt);
    SurfaceField out = apply_multiplier(f, multiplier_m(f.spec()));
    const cplx* top = sol.w.slab(f.spec().nz - 1);
    for (std::size_t i = 0; i < f.spec().lattice_size(); ++i) out[i] += top[i];
    return out;
}

SurfaceField dn_remainder(const VwSolution& sol) {
    const DomainSpec& spec = sol.v.spec();
    StripField g = w_source(sol.q);
    // R(eta) f = int_{-b}^0 cosh((z'+b)|D|)/cosh(b|D|) g(z') dz', trapezoid.
    const double h = spec.dz();
    const auto& z = g.z_nodes();
    SurfaceField out(spec);
    for (std::size_t i = 0; i < spec.lattice_size(); ++i) {
        double r = xi_mag(spec.wavenumber(i));
        cplx acc(0.0, 0.0);
        for (int j = 0; j < spec.nz; ++j) {
            double wgt = (j == 0 || j == spec.nz - 1) ? 0.5 * h : h;
            acc += wgt * cosh_ratio(r, z[j], 0.0, spec.b) * g.at(j, i);
        }
        out[i] = acc;
    }
    return out;
}

SurfaceField dn_remainder(const SurfaceField& eta, const SurfaceField& f, const DnOptions& opt) {
    return dn_remainder(solve_vw(eta, f, opt));
}

} // namespace muskat
