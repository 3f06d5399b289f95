#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "muskat/multipliers.hpp"
#include "muskat/norms.hpp"
#include "muskat/transforms.hpp"

using namespace muskat;

namespace {

SurfaceField random_field(const DomainSpec& spec, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<double> g(spec.grid_size());
    for (auto& v : g) v = dist(rng);
    return transform_forward(spec, g);
}

} // namespace

TEST_CASE("sobolev norm examples") {
    DomainSpec spec{1, 16, 9, 1.0};
    SurfaceField zero(spec);
    CHECK(sobolev_norm(zero, 2.0) == 0.0);

    SurfaceField cosx(spec);
    cosx.set(1, 0.5);
    cosx.set(-1, 0.5);
    CHECK(sobolev_norm(cosx, 0.0) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));
    CHECK(sobolev_norm(cosx, 1.0) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("anisotropic low-frequency weight") {
    double xi10[] = {1.0, 0.0};
    CHECK(aniso_weight(xi10) == doctest::Approx(2.0).epsilon(1e-15));
    for (double t : {0.5, 0.1, 0.01}) {
        double v[] = {0.0, t};
        CHECK(aniso_weight(v) == doctest::Approx(t * t).epsilon(1e-12));
        double w[] = {t, 0.0};
        CHECK(aniso_weight(w) == doctest::Approx(1.0 + t * t).epsilon(1e-12));
    }
    double z[] = {0.0, 0.0};
    CHECK_THROWS_AS(aniso_weight(z), SolverError);
}

TEST_CASE("dyadic partition of unity on every lattice point") {
    for (auto spec : {DomainSpec{1, 16, 9, 1.0}, DomainSpec{1, 64, 9, 1.0}, DomainSpec{2, 16, 9, 1.0}}) {
        int jmax = dyadic_block_count(spec);
        for (std::size_t i = 0; i < spec.lattice_size(); ++i) {
            double r = xi_mag(spec.wavenumber(i));
            double sum = 0.0;
            for (int j = 0; j <= jmax; ++j) sum += dyadic_phi(j, r);
            CHECK(std::abs(sum - 1.0) <= 1e-14);
        }
    }
}

TEST_CASE("dyadic blocks of simple fields") {
    DomainSpec spec{1, 16, 9, 1.0};

    SurfaceField c(spec);
    c.set(0, 2.0);
    SurfaceField b0 = dyadic_block(c, 0);
    CHECK(b0.at(0).real() == doctest::Approx(2.0).epsilon(1e-16));
    for (int j = 1; j <= dyadic_block_count(spec); ++j) CHECK(l2_norm(dyadic_block(c, j)) == 0.0);
    CHECK(dyadic_norm(c, 2.0, /*sharp=*/true) == 0.0);

    // cos(4 x) lives in the block(s) with 2^{j-2} < 4 < 2^j, which is j = 3
    SurfaceField cos4(spec);
    cos4.set(4, 0.5);
    cos4.set(-4, 0.5);
    double weight_sum = 0.0;
    for (int j = 0; j <= dyadic_block_count(spec); ++j) {
        double w = dyadic_phi(j, 4.0);
        weight_sum += w;
        if (j != 3) CHECK(w == 0.0);
    }
    CHECK(weight_sum == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(dyadic_block_norm(cos4, 3) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-14));

    // partition sums the blocks back to f once 2^{J-2} > nx/2
    SurfaceField f = random_field(spec, 9);
    SurfaceField sum(spec);
    for (int j = 0; j <= dyadic_block_count(spec); ++j) sum += dyadic_block(f, j);
    double diff = 0.0;
    for (std::size_t i = 0; i < spec.lattice_size(); ++i)
        diff = std::max(diff, std::abs(sum[i] - f[i]));
    CHECK(diff <= 1e-14);
}

TEST_CASE("chemin-lerner norms") {
    DomainSpec spec{1, 16, 33, 1.0};

    StripField zero(spec);
    CHECK(chemin_lerner_norm(zero, 2.0, 1.0, false) == 0.0);

    // z-independent field with q = inf reduces to the surface dyadic norm
    SurfaceField f = random_field(spec, 4);
    StripField v(spec);
    for (int j = 0; j < spec.nz; ++j) v.set_slab(j, f);
    CHECK(chemin_lerner_norm(v, kInfExponent, 1.5, false) ==
          doctest::Approx(dyadic_norm(f, 1.5)).epsilon(1e-13));

    // v = e^z cos x, q = 1, s = 0: independent 1-D quadrature oracle
    SurfaceField cosx(spec);
    cosx.set(1, 0.5);
    cosx.set(-1, 0.5);
    StripField ez(spec);
    const auto& z = ez.z_nodes();
    for (int j = 0; j < spec.nz; ++j) {
        SurfaceField s = cosx;
        s *= std::exp(z[j]);
        ez.set_slab(j, s);
    }
    // cos x sits entirely in dyadic block 1 with unit weight
    CHECK(dyadic_phi(1, 1.0) == doctest::Approx(1.0).epsilon(1e-15));
    double block = std::sqrt(0.5);
    double h = spec.dz();
    double quad = 0.0;
    for (int j = 0; j < spec.nz; ++j)
        quad += ((j == 0 || j == spec.nz - 1) ? 0.5 * h : h) * std::exp(z[j]);
    CHECK(chemin_lerner_norm(ez, 1.0, 0.0, false) == doctest::Approx(quad * block).epsilon(1e-13));
    CHECK(chemin_lerner_norm(ez, 1.0, 0.0, false) ==
          doctest::Approx((1.0 - std::exp(-1.0)) * block).epsilon(1e-4));

    CHECK_THROWS_AS(chemin_lerner_norm(v, 0.5, 1.0, false), SolverError);
}

TEST_CASE("norm_U") {
    DomainSpec spec{1, 16, 17, 1.0};
    StripField zero(spec);
    CHECK(norm_U(zero, 1.0) == 0.0);

    // z-independent: trapezoid is exact for constants
    SurfaceField f = random_field(spec, 31);
    StripField v(spec);
    for (int j = 0; j < spec.nz; ++j) v.set_slab(j, f);
    double want = dyadic_norm(f, 1.0) + spec.b * dyadic_norm(f, 2.0);
    CHECK(norm_U(v, 1.0) == doctest::Approx(want).epsilon(1e-13));

    // monotone in s
    for (unsigned seed = 1; seed <= 5; ++seed) {
        SurfaceField g = random_field(spec, 100 + seed);
        StripField u(spec);
        const auto& z = u.z_nodes();
        for (int j = 0; j < spec.nz; ++j) {
            SurfaceField s = g;
            s *= std::cos(z[j]);
            u.set_slab(j, s);
        }
        CHECK(norm_U(u, 0.5) <= norm_U(u, 1.5) * (1.0 + 1e-12));
        CHECK(norm_U(u, 1.5) <= norm_U(u, 2.5) * (1.0 + 1e-12));
    }
}

TEST_CASE("NormSpec validation") {
    NormSpec ok{1.5, NormVariant::sobolev_sharp, kInfExponent};
    CHECK_NOTHROW(ok.validate());
    CHECK_THROWS_AS((NormSpec{-1.0, NormVariant::sobolev, 2.0}).validate(), SolverError);
    CHECK_THROWS_AS((NormSpec{1.0, NormVariant::sobolev, 0.5}).validate(), SolverError);
}

TEST_CASE("sobolev and dyadic square-function norms are equivalent") {
    DomainSpec spec{1, 32, 9, 1.0};
    for (unsigned seed = 1; seed <= 100; ++seed) {
        SurfaceField f = random_field(spec, seed);
        double ratio = sobolev_norm(f, 1.0) / dyadic_norm(f, 1.0);
        CHECK(ratio >= 0.25);
        CHECK(ratio <= 4.0);
    }
}
