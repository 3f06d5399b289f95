// config.hpp — sectioned key=value run configuration.

#pragma once

#include <string>
#include <vector>

#include "muskat/domain.hpp"
#include "muskat/evolution.hpp"

namespace muskat {

struct ModeAmplitude {
    std::vector<int> mode; // d components
    double amplitude = 0.0;
};

struct RunConfig {
    // [domain]
    DomainSpec domain;

    // [solver]
    double gamma = 0.0;
    double s = 2.0;
    double tol = 1e-10;
    int max_iter = 100;
    bool dealias = true;
    double dn_tol = 1e-12;
    int dn_max_iter = 200;
    int threads = 0; // reserved; 0 = auto

    // [forcing]
    std::vector<ModeAmplitude> phi0_modes;
    std::string phi0_path;

    // [evolution]
    double dt = 0.05; // default 0.05 / max(1, |gamma|), applied after parse
    bool dt_set = false;
    double t_final = 20.0;
    Integrator integrator = Integrator::etdrk2;
    std::vector<ModeAmplitude> f0_modes;
    std::string f0_path;
    std::string eta_star_path;
    unsigned seed = 1;

    // [linear]
    std::string linear_data_path;

    // [output]
    std::string output_directory = ".";
    std::string formats = "json,csv";

    SurfaceField build_phi0() const;
    SurfaceField build_f0() const;
    WaveConfig wave_config() const;
};

struct ConfigError : SolverError {
    ConfigError(const std::string& msg, int line, int col)
        : SolverError("config:" + std::to_string(line) + ":" + std::to_string(col) + ": " + msg),
          line(line), col(col) {}
    int line, col;
};

RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

// Cosine convention: each {mode m, amplitude a} contributes a/2 to the +-m
// coefficient pair (a to the zero mode when m = 0).
SurfaceField field_from_modes(const DomainSpec& spec, const std::vector<ModeAmplitude>& modes);

// Parser for the inline list syntax [{mode:[1], amplitude:0.01}, ...].
std::vector<ModeAmplitude> parse_mode_list(const std::string& text);

} // namespace muskat
