#include "muskat/traveling_wave.hpp"

#include "muskat/multipliers.hpp"
#include "muskat/norms.hpp"

namespace muskat {

SurfaceField t_phi_map(const SurfaceField& eta, const WaveConfig& cfg) {
    SurfaceField phi0 = cfg.phi0;
    phi0.remove_mean();

    SurfaceField g = eta + phi0;
    SurfaceField rhs = dn_remainder(eta, g, cfg.dn);
    rhs += apply_multiplier(phi0, multiplier_m(cfg.domain));
    SurfaceField out = resolvent_gamma(rhs, cfg.gamma, cfg.domain.b);
    out.set_zero_mean(true);
    return out;
}

TravelingWaveSolution solve_traveling_wave(const WaveConfig& cfg) {
    cfg.validate();
    TravelingWaveSolution sol;
    sol.eta_star = SurfaceField(cfg.domain);

    SurfaceField eta(cfg.domain);
    double prev_step = 0.0;
    int ratios_above_one = 0;
    for (int k = 1; k <= cfg.max_iter; ++k) {
        SurfaceField next = t_phi_map(eta, cfg);
        double step = sobolev_norm(next - eta, cfg.s);
        sol.history.emplace_back(sobolev_norm(next, cfg.s), step);
        sol.iterations = k;
        if (k >= 2 && prev_step > 0.0) {
            double ratio = step / prev_step;
            sol.contraction_estimate = ratio;
            ratios_above_one = ratio > 1.0 ? ratios_above_one + 1 : 0;
            if (ratios_above_one >= 3)
                throw ContractionFailure("solve_traveling_wave: step ratios exceeded 1 for 3 "
                                         "consecutive iterations");
        }
        eta = next;
        if (step < cfg.tol) {
            sol.eta_star = eta;
            SurfaceField phi0 = cfg.phi0;
            phi0.remove_mean();
            SurfaceField steady = apply_multiplier(eta, multiplier_derivative(cfg.domain, 0));
            steady *= cfg.gamma;
            steady -= dn_apply(eta, eta + phi0, cfg.dn);
            sol.steady_residual = sobolev_norm(steady, cfg.s - 0.5);
            return sol;
        }
        prev_step = step;
    }
    throw NoConvergence("solve_traveling_wave", cfg.max_iter);
}

double lipschitz_probe(const WaveConfig& cfg, const WaveConfig& cfg_perturbed) {
    SurfaceField dphi = cfg.phi0 - cfg_perturbed.phi0;
    double denom = sobolev_norm(dphi, cfg.s);
    if (denom == 0.0) return 0.0;
    TravelingWaveSolution a = solve_traveling_wave(cfg);
    TravelingWaveSolution b = solve_traveling_wave(cfg_perturbed);
    return sobolev_norm(a.eta_star - b.eta_star, cfg.s) / denom;
}

} // namespace muskat
