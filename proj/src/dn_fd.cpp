#include "muskat/dn_fd.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include <cmath>

#include "muskat/transforms.hpp"

namespace muskat {

namespace {

// Analytic point evaluators built from the eta coefficients; valid for any
// (x, z), which the half-node coefficient sampling needs.
struct CoeffEval {
    explicit CoeffEval(const SurfaceField& eta) : eta(eta) {}

    // e^{|xi| z} weighted mode sums of eta, |D| eta, d_x eta at (x, z)
    void extensions(double x, double z, double& e, double& ea, double& eg) const {
        const DomainSpec& spec = eta.spec();
        e = ea = eg = 0.0;
        for (std::size_t i = 0; i < spec.lattice_size(); ++i) {
            auto xi = spec.wavenumber(i);
            double r = std::abs(static_cast<double>(xi[0]));
            cplx ph = eta[i] * std::exp(r * z) * std::exp(cplx(0.0, xi[0] * x));
            e += ph.real();
            ea += r * ph.real();
            eg += (cplx(0.0, static_cast<double>(xi[0])) * ph).real();
        }
    }

    double dz_rho(double x, double z) const {
        double e, ea, eg;
        extensions(x, z, e, ea, eg);
        double b = eta.spec().b;
        return 1.0 + e / b + (z + b) / b * ea;
    }
    double dx_rho(double x, double z) const {
        double e, ea, eg;
        extensions(x, z, e, ea, eg);
        double b = eta.spec().b;
        return (z + b) / b * eg;
    }
    void matrix_A(double x, double z, double& a11, double& a12, double& a22) const {
        double dzr = dz_rho(x, z);
        double dxr = dx_rho(x, z);
        a11 = dzr;
        a12 = -dxr;
        a22 = (1.0 + dxr * dxr) / dzr;
    }

    const SurfaceField& eta;
};

} // namespace

SurfaceField dn_oracle_fd(const SurfaceField& eta, const SurfaceField& f, int nz_fd) {
    const DomainSpec& src = eta.spec();
    if (src.d != 1) throw SolverError("dn_oracle_fd: only d = 1 is supported");
    if (nz_fd < 9 || nz_fd % 2 != 1) throw SolverError("dn_oracle_fd: nz_fd must be odd and >= 9");
    if (!src.same_surface(f.spec())) throw SolverError("dn_oracle_fd: eta/f spec mismatch");

    const int nxf = nz_fd - 1; // even by construction
    const double b = src.b;
    const double hx = 2.0 * M_PI / nxf;
    const double hz = b / (nz_fd - 1);
    const int J = nz_fd - 1;
    const auto id = [nxf](int i, int j) { return static_cast<long>(j) * nxf + ((i % nxf + nxf) % nxf); };

    CoeffEval A(eta);

    // Dirichlet data sampled on the oracle grid.
    std::vector<double> ftop(nxf);
    for (int i = 0; i < nxf; ++i) {
        double x = hx * i;
        double v = 0.0;
        for (std::size_t m = 0; m < src.lattice_size(); ++m) {
            auto xi = src.wavenumber(m);
            v += (f[m] * std::exp(cplx(0.0, xi[0] * x))).real();
        }
        ftop[i] = v;
    }

    const long N = static_cast<long>(nxf) * nz_fd;
    std::vector<Eigen::Triplet<double>> trips;
    trips.reserve(static_cast<std::size_t>(N) * 10);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(N);

    auto add = [&](long row, long col, double val) { trips.emplace_back(row, col, val); };

    for (int i = 0; i < nxf; ++i) {
        double x = hx * i;
        double xp = x + 0.5 * hx, xm = x - 0.5 * hx;

        for (int j = 0; j <= J; ++j) {
            long row = id(i, j);
            double z = -b + hz * j;

            if (j == J) { // Dirichlet top
                add(row, row, 1.0);
                rhs[row] = ftop[i];
                continue;
            }

            // x-fluxes at (i +- 1/2, j):
            //   Fx = a11 vx + a12 vz,   vz by the 4-point average (cross term).
            double a11p, a12p, a22p, a11m, a12m, a22m;
            A.matrix_A(xp, z, a11p, a12p, a22p);
            A.matrix_A(xm, z, a11m, a12m, a22m);

            double inv_hx2 = 1.0 / (hx * hx);
            add(row, id(i + 1, j), a11p * inv_hx2);
            add(row, id(i - 1, j), a11m * inv_hx2);
            add(row, id(i, j), -(a11p + a11m) * inv_hx2);

            if (j > 0) { // cross terms vanish identically on the bottom row (a12(.,-b) = 0)
                double cx = 1.0 / (hx * 4.0 * hz);
                add(row, id(i, j + 1), a12p * cx);
                add(row, id(i + 1, j + 1), a12p * cx);
                add(row, id(i, j - 1), -a12p * cx);
                add(row, id(i + 1, j - 1), -a12p * cx);
                add(row, id(i, j + 1), -a12m * cx);
                add(row, id(i - 1, j + 1), -a12m * cx);
                add(row, id(i, j - 1), a12m * cx);
                add(row, id(i - 1, j - 1), a12m * cx);
            }

            // z-fluxes at (i, j +- 1/2).  Bottom row balances over a half cell
            // against the exact no-flux boundary value.
            double zt = z + 0.5 * hz;
            double a11t, a12t, a22t;
            A.matrix_A(x, zt, a11t, a12t, a22t);
            double cell = (j == 0) ? 0.5 * hz : hz;
            double ct = 1.0 / (hz * cell);
            add(row, id(i, j + 1), a22t * ct);
            add(row, id(i, j), -a22t * ct);
            double cxz = 1.0 / (4.0 * hx * cell);
            add(row, id(i + 1, j), a12t * cxz);
            add(row, id(i + 1, j + 1), a12t * cxz);
            add(row, id(i - 1, j), -a12t * cxz);
            add(row, id(i - 1, j + 1), -a12t * cxz);

            if (j > 0) {
                double zb = z - 0.5 * hz;
                double a11b, a12b, a22b;
                A.matrix_A(x, zb, a11b, a12b, a22b);
                double cb = 1.0 / (hz * hz);
                add(row, id(i, j - 1), a22b * cb);
                add(row, id(i, j), -a22b * cb);
                double cxzb = 1.0 / (4.0 * hx * hz);
                add(row, id(i + 1, j), -a12b * cxzb);
                add(row, id(i + 1, j - 1), -a12b * cxzb);
                add(row, id(i - 1, j), a12b * cxzb);
                add(row, id(i - 1, j - 1), a12b * cxzb);
            }
        }
    }

    Eigen::SparseMatrix<double> M(N, N);
    M.setFromTriplets(trips.begin(), trips.end());
    M.makeCompressed();

    Eigen::SparseLU<Eigen::SparseMatrix<double>> solver;
    solver.analyzePattern(M);
    solver.factorize(M);
    if (solver.info() != Eigen::Success) throw SolverError("dn_oracle_fd: sparse factorization failed");
    Eigen::VectorXd v = solver.solve(rhs);
    if (solver.info() != Eigen::Success) throw SolverError("dn_oracle_fd: sparse solve failed");

    // Top conormal trace with centered vx and one-sided second-order vz.
    std::vector<double> trace(nxf);
    for (int i = 0; i < nxf; ++i) {
        double x = hx * i;
        double vx = (v[id(i + 1, J)] - v[id(i - 1, J)]) / (2.0 * hx);
        double vz = (3.0 * v[id(i, J)] - 4.0 * v[id(i, J - 1)] + v[id(i, J - 2)]) / (2.0 * hz);
        double dxr = A.dx_rho(x, 0.0);
        double dzr = A.dz_rho(x, 0.0);
        trace[i] = -dxr * vx + (1.0 + dxr * dxr) / dzr * vz;
    }

    DomainSpec ospec{1, nxf, nz_fd, b};
    return transform_forward(ospec, trace);
}

} // namespace muskat
