#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "muskat/dn.hpp"
#include "muskat/dn_fd.hpp"
#include "muskat/multipliers.hpp"
#include "muskat/norms.hpp"
#include "muskat/strip_ops.hpp"
#include "muskat/transforms.hpp"

using namespace muskat;

namespace {

SurfaceField mode_field(const DomainSpec& spec, int mode, double amplitude) {
    SurfaceField f(spec);
    if (mode == 0) {
        f.set(0, amplitude);
    } else {
        f.set(mode, 0.5 * amplitude);
        f.set(-mode, 0.5 * amplitude);
    }
    return f;
}

SurfaceField random_low_field(const DomainSpec& spec, unsigned seed, double amp, int max_mode) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    SurfaceField f(spec);
    for (int m = 1; m <= max_mode; ++m) {
        cplx c(dist(rng), dist(rng));
        f.set(m, amp * c);
        f.set(-m, std::conj(amp * c));
    }
    return f;
}

double rel_l2(const SurfaceField& got, const SurfaceField& want) {
    return l2_norm(got - want) / l2_norm(want);
}

// L2 pairing sum f_hat conj(g_hat) of real fields.
double inner(const SurfaceField& f, const SurfaceField& g) {
    double s = 0.0;
    for (std::size_t i = 0; i < f.spec().lattice_size(); ++i)
        s += (f[i] * std::conj(g[i])).real();
    return s;
}

} // namespace

TEST_CASE("build_straightening trivial cases") {
    DomainSpec spec{1, 16, 17, 1.0};

    SurfaceField zero(spec);
    StraightenedCoefficients sc = build_straightening(zero);
    const auto& z = sc.rho.z_nodes();
    for (int j = 0; j < spec.nz; ++j) {
        CHECK(sc.rho.at(j, spec.lattice_index(0)).real() == doctest::Approx(z[j]).epsilon(1e-16));
        CHECK(sc.dz_rho.at(j, spec.lattice_index(0)).real() == doctest::Approx(1.0).epsilon(1e-16));
        for (std::size_t i = 0; i < spec.lattice_size(); ++i) {
            if (spec.wavenumber(i)[0] != 0) {
                CHECK(std::abs(sc.rho.at(j, i)) == 0.0);
                CHECK(std::abs(sc.dz_rho.at(j, i)) == 0.0);
            }
            CHECK(std::abs(sc.grad_rho[0].at(j, i)) == 0.0);
        }
    }
    CHECK(sc.min_dz_rho == doctest::Approx(1.0).epsilon(1e-15));

    const double c = 0.3;
    StraightenedCoefficients scc = build_straightening(mode_field(spec, 0, c));
    for (int j = 0; j < spec.nz; ++j) {
        double want = (z[j] + spec.b) / spec.b * c + z[j];
        CHECK(scc.rho.at(j, spec.lattice_index(0)).real() == doctest::Approx(want).epsilon(1e-15));
        CHECK(scc.dz_rho.at(j, spec.lattice_index(0)).real() ==
              doctest::Approx(1.0 + c / spec.b).epsilon(1e-15));
    }

    // top/bottom trace identities: rho(-b) = -b, rho(0) = eta
    SurfaceField eta = mode_field(spec, 1, 0.1);
    StraightenedCoefficients se = build_straightening(eta);
    CHECK(se.rho.at(0, spec.lattice_index(0)).real() == doctest::Approx(-spec.b).epsilon(1e-15));
    CHECK(std::abs(se.rho.at(0, spec.lattice_index(1))) == 0.0);
    CHECK(se.rho.at(spec.nz - 1, spec.lattice_index(1)).real() ==
          doctest::Approx(0.05).epsilon(1e-15));
}

TEST_CASE("build_straightening sample value and diffeo violation") {
    DomainSpec spec{1, 16, 17, 1.0};
    SurfaceField eta = mode_field(spec, 1, 0.05);
    StraightenedCoefficients sc = build_straightening(eta);
    // dz_rho(x=0, z=0) = 0.05 + 0.05 + 1
    CHECK(1.0 + sc.c1[spec.nz - 1][0] == doctest::Approx(1.1).epsilon(1e-14));

    SurfaceField deep = mode_field(spec, 0, -0.95);
    CHECK_THROWS_AS(build_straightening(deep), DiffeoViolation);
    CHECK_NOTHROW(build_straightening(deep, /*margin=*/0.01));
}

TEST_CASE("q_nonlinearities vanishes for a flat surface") {
    DomainSpec spec{1, 16, 17, 1.0};
    StraightenedCoefficients sc = build_straightening(SurfaceField(spec));
    StripField v(spec);
    SurfaceField f = random_low_field(spec, 2, 1.0, 5);
    for (int j = 0; j < spec.nz; ++j) v.set_slab(j, f);
    StripField dzv = apply_dz_operator(v);
    QFields q = q_nonlinearities(v, dzv, sc, true);
    for (int j = 0; j < spec.nz; ++j) {
        CHECK(slab_l2(q.qa, j) == 0.0);
        CHECK(slab_l2(q.qb[0], j) == 0.0);
    }
}

TEST_CASE("q_nonlinearities constant-eta algebra") {
    DomainSpec spec{1, 16, 17, 1.0};
    const double c = 0.25, b = spec.b;
    StraightenedCoefficients sc = build_straightening(mode_field(spec, 0, c));

    StripField v(spec);
    StripField dzv(spec);
    const auto& z = v.z_nodes();
    for (int j = 0; j < spec.nz; ++j) {
        SurfaceField s = mode_field(spec, 2, std::cos(z[j]));
        SurfaceField ds = mode_field(spec, 2, -std::sin(z[j]));
        v.set_slab(j, s);
        dzv.set_slab(j, ds);
    }
    QFields q = q_nonlinearities(v, dzv, sc, /*dealias=*/false);

    // Q_b = -(c/b) grad v, Q_a = (c/b)/(1+c/b) dz v
    double alpha = c / b;
    for (int j = 0; j < spec.nz; ++j) {
        for (std::size_t i = 0; i < spec.lattice_size(); ++i) {
            auto xi = spec.wavenumber(i);
            cplx gv = cplx(0.0, static_cast<double>(xi[0])) * v.at(j, i);
            CHECK(std::abs(q.qb[0].at(j, i) - (-alpha) * gv) < 1e-13);
            CHECK(std::abs(q.qa.at(j, i) - alpha / (1.0 + alpha) * dzv.at(j, i)) < 1e-13);
        }
    }
}

TEST_CASE("q_nonlinearities: Q_a vanishes at the bed, outputs real") {
    DomainSpec spec{1, 16, 17, 1.0};
    SurfaceField eta = mode_field(spec, 1, 0.08);
    StraightenedCoefficients sc = build_straightening(eta);
    VwSolution sol = solve_vw(eta, mode_field(spec, 1, 1.0));
    CHECK(slab_l2(sol.q.qa, 0) == 0.0);
    for (int j = 0; j < spec.nz; ++j) {
        CHECK(sol.q.qa.slab_field(j).conjugate_symmetry_defect() < 1e-13);
        CHECK(sol.q.qb[0].slab_field(j).conjugate_symmetry_defect() < 1e-13);
    }
}

TEST_CASE("solve_vw: flat strip converges in one sweep to the cosh profile") {
    DomainSpec spec{1, 16, 33, 1.0};
    SurfaceField f = random_low_field(spec, 7, 1.0, 6);
    VwSolution sol = solve_vw(SurfaceField(spec), f);
    CHECK(sol.report.converged);
    CHECK(sol.report.iterations == 1);
    const auto& z = sol.v.z_nodes();
    for (int j = 0; j < spec.nz; ++j) {
        for (std::size_t i = 0; i < spec.lattice_size(); ++i) {
            double r = xi_mag(spec.wavenumber(i));
            cplx want = f[i] * cosh_ratio(r, z[j], 0.0, spec.b);
            CHECK(std::abs(sol.v.at(j, i) - want) <= 1e-12 * std::max(1.0, std::abs(want)));
        }
        CHECK(slab_l2(sol.w, j) == 0.0);
    }
    // v trace and w bed invariants
    CHECK(std::abs(sol.v.at(spec.nz - 1, spec.lattice_index(1)) - f[spec.lattice_index(1)]) == 0.0);
}

TEST_CASE("dn_apply: flat strip is exactly m(D)") {
    DomainSpec spec{1, 16, 33, 1.0};
    SurfaceField f = random_low_field(spec, 8, 1.0, 8);
    SurfaceField g = dn_apply(SurfaceField(spec), f);
    SurfaceField mf = apply_multiplier(f, multiplier_m(spec));
    for (std::size_t i = 0; i < spec.lattice_size(); ++i) CHECK(std::abs(g[i] - mf[i]) == 0.0);
}

TEST_CASE("dn_apply: shifted strip closed form") {
    DomainSpec spec{1, 16, 513, 1.0};
    const double c = 0.2;
    DnOptions opt;
    opt.tol = 1e-12;
    SurfaceField g = dn_apply(mode_field(spec, 0, c), mode_field(spec, 1, 1.0), opt);
    double got = 2.0 * g.at(1).real();
    CHECK(got == doctest::Approx(std::tanh(1.2)).epsilon(2e-6));
    CHECK(std::abs(g.at(1).imag()) < 1e-12);
    CHECK(g.mean() == 0.0);
}

TEST_CASE("solve_vw: contraction history for a small wave") {
    DomainSpec spec{1, 16, 65, 1.0};
    SurfaceField eta = mode_field(spec, 1, 0.05);
    VwSolution sol = solve_vw(eta, mode_field(spec, 1, 1.0));
    CHECK(sol.report.converged);
    CHECK(sol.report.contraction_estimate < 0.5);
    // geometric decrease of the successive differences
    const auto& h = sol.report.residual_history;
    for (std::size_t k = 1; k + 1 < h.size(); ++k) CHECK(h[k + 1] < 0.6 * h[k]);
}

TEST_CASE("solve_vw throws NoConvergence when starved of iterations") {
    DomainSpec spec{1, 16, 33, 1.0};
    DnOptions opt;
    opt.tol = 1e-12;
    opt.max_iter = 2;
    CHECK_THROWS_AS(solve_vw(mode_field(spec, 1, 0.1), mode_field(spec, 1, 1.0), opt),
                    NoConvergence);
}

TEST_CASE("dn_remainder properties") {
    DomainSpec spec{1, 16, 65, 1.0};

    // eta = 0 -> R = 0 exactly
    SurfaceField r0 = dn_remainder(SurfaceField(spec), mode_field(spec, 1, 1.0));
    CHECK(l2_norm(r0) == 0.0);

    SurfaceField eta = mode_field(spec, 1, 0.05);
    SurfaceField f = mode_field(spec, 1, 1.0);
    VwSolution sol = solve_vw(eta, f);
    SurfaceField r = dn_remainder(sol);
    CHECK(std::abs(r[spec.lattice_index(0)]) == 0.0); // zero mode exactly 0

    // consistency with dn_apply - m(D) f
    SurfaceField g = dn_apply(eta, f);
    SurfaceField mf = apply_multiplier(f, multiplier_m(spec));
    CHECK(l2_norm(r - (g - mf)) <= 1e-12 * std::max(1.0, l2_norm(r)));
}

TEST_CASE("dn boundedness ratio is stable under grid refinement") {
    // ||m^{-1/2} R(eta) f||_{H^{s-1/2}} over the eta/grad-f norm combination,
    // with sigma = sigma_0 = s so the two terms of the bound coincide.
    double ratio[2];
    int idx = 0;
    for (int nz : {65, 129}) {
        DomainSpec spec{1, 16, nz, 1.0};
        SurfaceField eta = mode_field(spec, 1, 0.05);
        SurfaceField f = mode_field(spec, 1, 1.0);
        SurfaceField r = dn_remainder(eta, f);
        SurfaceField mr = apply_multiplier(r, multiplier_m_power(spec, -0.5));
        const double s = 2.0;
        SurfaceField gf = apply_multiplier(f, multiplier_derivative(spec, 0));
        double denom = 2.0 * sobolev_norm(eta, s) * sobolev_norm(gf, s - 1.0);
        ratio[idx++] = sobolev_norm(mr, s - 0.5) / denom;
    }
    CHECK(std::isfinite(ratio[0]));
    CHECK(std::isfinite(ratio[1]));
    CHECK(std::abs(ratio[1] - ratio[0]) <= 0.05 * std::abs(ratio[0]));
}

TEST_CASE("dn translation equivariance and linearity") {
    DomainSpec spec{1, 16, 33, 1.0};
    SurfaceField eta = mode_field(spec, 1, 0.04);
    SurfaceField f = random_low_field(spec, 13, 1.0, 4);
    SurfaceField g = random_low_field(spec, 14, 1.0, 4);

    // integer-grid shift by a = 2 pi k / nx acts as exp(-i xi a) on coefficients
    const int k = 3;
    const double a = 2.0 * M_PI * k / spec.nx;
    auto shift = [&](const SurfaceField& u) {
        SurfaceField out = u;
        for (std::size_t i = 0; i < spec.lattice_size(); ++i)
            out[i] *= std::exp(cplx(0.0, -a * spec.wavenumber(i)[0]));
        return out;
    };
    SurfaceField lhs = dn_apply(shift(eta), shift(f));
    SurfaceField rhs = shift(dn_apply(eta, f));
    CHECK(l2_norm(lhs - rhs) <= 1e-12 * std::max(1.0, l2_norm(rhs)));

    // linearity in f at fixed eta
    const double al = 0.7, be = -1.3;
    SurfaceField combo = dn_apply(eta, al * SurfaceField(f) + be * SurfaceField(g));
    SurfaceField split = al * dn_apply(eta, f) + be * dn_apply(eta, g);
    CHECK(l2_norm(combo - split) <= 1e-9 * std::max(1.0, l2_norm(split)));
}

TEST_CASE("dn self-adjointness for small eta") {
    DomainSpec spec{1, 16, 129, 1.0};
    SurfaceField eta = mode_field(spec, 1, 0.05);
    eta += mode_field(spec, 2, 0.02);
    SurfaceField f = random_low_field(spec, 21, 1.0, 4);
    SurfaceField g = random_low_field(spec, 22, 1.0, 4);
    DnOptions opt;
    opt.tol = 1e-13;
    double a = inner(dn_apply(eta, f, opt), g);
    double b = inner(f, dn_apply(eta, g, opt));
    CHECK(std::abs(a - b) <= 1e-6 * std::max(std::abs(a), 1e-12));
}

TEST_CASE("dn contraction diagnostic: remainder difference shrinks linearly") {
    DomainSpec spec{1, 16, 65, 1.0};
    SurfaceField f = mode_field(spec, 1, 1.0);
    SurfaceField eta1 = mode_field(spec, 1, 0.05);
    double slope_prev = -1.0;
    for (double eps : {2e-2, 1e-2, 5e-3}) {
        SurfaceField eta2 = eta1 + mode_field(spec, 2, eps);
        SurfaceField d = dn_remainder(eta1, f) - dn_remainder(eta2, f);
        double slope = l2_norm(d) / sobolev_norm(eta1 - eta2, 2.0);
        CHECK(std::isfinite(slope));
        if (slope_prev > 0.0) CHECK(std::abs(slope - slope_prev) < 0.5 * slope_prev + 1e-12);
        slope_prev = slope;
    }
}

TEST_CASE("dn_apply in two horizontal dimensions") {
    DomainSpec spec{2, 12, 33, 1.0};
    SurfaceField f(spec);
    f.set(1, 0, cplx(0.5, 0.0));
    f.set(-1, 0, cplx(0.5, 0.0));
    f.set(1, 2, cplx(0.1, 0.05));
    f.set(-1, -2, cplx(0.1, -0.05));

    // flat: exactly m(D) f
    SurfaceField g = dn_apply(SurfaceField(spec), f);
    SurfaceField mf = apply_multiplier(f, multiplier_m(spec));
    CHECK(l2_norm(g - mf) == 0.0);

    // shifted strip closed form at coarse tolerance
    DomainSpec fine{2, 12, 257, 1.0};
    SurfaceField ff(fine);
    ff.set(1, 0, cplx(0.5, 0.0));
    ff.set(-1, 0, cplx(0.5, 0.0));
    SurfaceField etac(fine);
    etac.set(0, 0, cplx(0.15, 0.0));
    SurfaceField gs = dn_apply(etac, ff);
    CHECK(2.0 * gs.at(1, 0).real() == doctest::Approx(std::tanh(1.15)).epsilon(1e-5));
}

TEST_CASE("fd oracle: flat strip and refinement order") {
    DomainSpec spec{1, 16, 33, 1.0};
    SurfaceField f = mode_field(spec, 1, 1.0);

    // eta = 0: oracle reproduces m(D) f = tanh(1) cos x up to O(h^2)
    SurfaceField fd = dn_oracle_fd(SurfaceField(spec), f, 65);
    double got = 2.0 * fd.at(1).real();
    CHECK(got == doctest::Approx(std::tanh(1.0)).epsilon(5e-3));

    // second-order convergence against the exact flat answer
    double errs[3];
    int idx = 0;
    for (int nzf : {33, 65, 129}) {
        SurfaceField t = dn_oracle_fd(SurfaceField(spec), f, nzf);
        errs[idx++] = std::abs(2.0 * t.at(1).real() - std::tanh(1.0));
    }
    CHECK(errs[0] / errs[1] == doctest::Approx(4.0).epsilon(0.3));
    CHECK(errs[1] / errs[2] == doctest::Approx(4.0).epsilon(0.3));

    CHECK_THROWS_AS(dn_oracle_fd(SurfaceField(DomainSpec{2, 12, 17, 1.0}),
                                 SurfaceField(DomainSpec{2, 12, 17, 1.0}), 65),
                    SolverError);
}

TEST_CASE("fd oracle cross-validates the spectral DN for a small wave") {
    DomainSpec spec{1, 16, 257, 1.0};
    SurfaceField eta = mode_field(spec, 1, 0.05);
    SurfaceField f = mode_field(spec, 1, 1.0);
    DnOptions opt;
    opt.tol = 1e-12;
    SurfaceField spectral = dn_apply(eta, f, opt);
    SurfaceField fd = dn_oracle_fd(eta, f, 257);
    SurfaceField diff = resample(spectral, fd.spec()) - fd;
    CHECK(l2_norm(diff) / l2_norm(fd) < 2e-4);
}
