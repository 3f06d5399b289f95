#include "muskat/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "muskat/serialize.hpp"

namespace muskat {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

double parse_double(const std::string& v, int line) {
    try {
        std::size_t pos = 0;
        double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError("expected a number, got '" + v + "'", line, 1);
    }
}

int parse_int(const std::string& v, int line) {
    try {
        std::size_t pos = 0;
        int x = std::stoi(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError("expected an integer, got '" + v + "'", line, 1);
    }
}

bool parse_bool(const std::string& v, int line) {
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    throw ConfigError("expected a boolean, got '" + v + "'", line, 1);
}

// Minimal recursive scanner for [{mode:[..], amplitude:..}, ...].
struct ModeListParser {
    const std::string& s;
    std::size_t pos = 0;

    explicit ModeListParser(const std::string& text) : s(text) {}

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    void expect(char c) {
        skip_ws();
        if (pos >= s.size() || s[pos] != c)
            throw SolverError(std::string("mode list: expected '") + c + "' at offset " +
                              std::to_string(pos));
        ++pos;
    }
    bool peek(char c) {
        skip_ws();
        return pos < s.size() && s[pos] == c;
    }

    std::string ident() {
        skip_ws();
        std::size_t start = pos;
        while (pos < s.size() && (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
            ++pos;
        if (pos == start) throw SolverError("mode list: expected identifier at offset " +
                                            std::to_string(pos));
        return s.substr(start, pos - start);
    }

    double number() {
        skip_ws();
        std::size_t start = pos;
        while (pos < s.size() &&
               (std::isdigit(static_cast<unsigned char>(s[pos])) || s[pos] == '+' || s[pos] == '-' ||
                s[pos] == '.' || s[pos] == 'e' || s[pos] == 'E'))
            ++pos;
        if (pos == start) throw SolverError("mode list: expected number at offset " +
                                            std::to_string(pos));
        return std::stod(s.substr(start, pos - start));
    }

    std::vector<ModeAmplitude> run() {
        std::vector<ModeAmplitude> out;
        expect('[');
        if (!peek(']')) {
            while (true) {
                out.push_back(entry());
                if (peek(',')) {
                    ++pos;
                    continue;
                }
                break;
            }
        }
        expect(']');
        skip_ws();
        if (pos != s.size()) throw SolverError("mode list: trailing characters");
        return out;
    }

    ModeAmplitude entry() {
        ModeAmplitude e;
        bool saw_mode = false, saw_amp = false;
        expect('{');
        while (true) {
            std::string key = ident();
            expect(':');
            if (key == "mode") {
                expect('[');
                while (true) {
                    e.mode.push_back(static_cast<int>(number()));
                    if (peek(',')) {
                        ++pos;
                        continue;
                    }
                    break;
                }
                expect(']');
                saw_mode = true;
            } else if (key == "amplitude") {
                e.amplitude = number();
                saw_amp = true;
            } else {
                throw SolverError("mode list: unknown key '" + key + "'");
            }
            if (peek(',')) {
                ++pos;
                continue;
            }
            break;
        }
        expect('}');
        if (!saw_mode || !saw_amp) throw SolverError("mode list: entry needs mode and amplitude");
        return e;
    }
};

} // namespace

std::vector<ModeAmplitude> parse_mode_list(const std::string& text) {
    return ModeListParser(text).run();
}

SurfaceField field_from_modes(const DomainSpec& spec, const std::vector<ModeAmplitude>& modes) {
    SurfaceField f(spec);
    for (const auto& m : modes) {
        if (static_cast<int>(m.mode.size()) != spec.d)
            throw SolverError("mode vector has " + std::to_string(m.mode.size()) +
                              " components, domain has d = " + std::to_string(spec.d));
        int m1 = m.mode[0];
        int m2 = spec.d == 2 ? m.mode[1] : 0;
        if (std::abs(m1) > spec.nx / 2 || std::abs(m2) > spec.nx / 2)
            throw SolverError("mode outside the lattice: |xi_i| <= nx/2 required");
        if (m1 == 0 && m2 == 0) {
            f[spec.lattice_index(0, 0)] += m.amplitude;
        } else {
            f[spec.lattice_index(m1, m2)] += 0.5 * m.amplitude;
            f[spec.lattice_index(-m1, -m2)] += 0.5 * m.amplitude;
        }
    }
    return f;
}

SurfaceField RunConfig::build_phi0() const {
    if (!phi0_path.empty()) return surface_from_json(load_json(phi0_path));
    return field_from_modes(domain, phi0_modes);
}

SurfaceField RunConfig::build_f0() const {
    if (!f0_path.empty()) return surface_from_json(load_json(f0_path));
    return field_from_modes(domain, f0_modes);
}

WaveConfig RunConfig::wave_config() const {
    WaveConfig w;
    w.domain = domain;
    w.gamma = gamma;
    w.phi0 = build_phi0();
    w.phi0.remove_mean();
    w.s = s;
    w.tol = tol;
    w.max_iter = max_iter;
    w.dn.tol = dn_tol;
    w.dn.max_iter = dn_max_iter;
    w.dn.dealias = dealias;
    w.dn.s_check = s;
    return w;
}

RunConfig parse_config(const std::string& text) {
    RunConfig cfg;
    std::istringstream in(text);
    std::string raw;
    std::string section;
    int lineno = 0;

    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = raw;
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("unterminated section header", lineno,
                                  static_cast<int>(raw.size()));
            section = trim(line.substr(1, line.size() - 2));
            if (section != "domain" && section != "solver" && section != "forcing" &&
                section != "evolution" && section != "linear" && section != "output")
                throw ConfigError("unknown section '" + section + "'", lineno, 1);
            continue;
        }

        std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("expected key = value", lineno,
                              static_cast<int>(raw.find_first_not_of(" \t")) + 1);
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError("empty key", lineno, 1);
        if (section.empty()) throw ConfigError("key '" + key + "' outside any section", lineno, 1);

        auto unknown = [&] {
            throw ConfigError("unknown key '" + key + "' in section [" + section + "]", lineno, 1);
        };

        if (section == "domain") {
            if (key == "d") cfg.domain.d = parse_int(val, lineno);
            else if (key == "nx") cfg.domain.nx = parse_int(val, lineno);
            else if (key == "nz") cfg.domain.nz = parse_int(val, lineno);
            else if (key == "b") cfg.domain.b = parse_double(val, lineno);
            else unknown();
        } else if (section == "solver") {
            if (key == "gamma") cfg.gamma = parse_double(val, lineno);
            else if (key == "s") cfg.s = parse_double(val, lineno);
            else if (key == "tol") cfg.tol = parse_double(val, lineno);
            else if (key == "max_iter") cfg.max_iter = parse_int(val, lineno);
            else if (key == "dealias") cfg.dealias = parse_bool(val, lineno);
            else if (key == "dn_tol") cfg.dn_tol = parse_double(val, lineno);
            else if (key == "dn_max_iter") cfg.dn_max_iter = parse_int(val, lineno);
            else if (key == "threads") cfg.threads = parse_int(val, lineno);
            else unknown();
        } else if (section == "forcing") {
            if (key == "phi0") {
                try {
                    cfg.phi0_modes = parse_mode_list(val);
                } catch (const SolverError& e) {
                    throw ConfigError(e.what(), lineno, 1);
                }
            } else if (key == "phi0_path") cfg.phi0_path = val;
            else unknown();
        } else if (section == "evolution") {
            if (key == "dt") {
                cfg.dt = parse_double(val, lineno);
                cfg.dt_set = true;
            } else if (key == "t_final") cfg.t_final = parse_double(val, lineno);
            else if (key == "integrator") {
                if (val == "etdrk2") cfg.integrator = Integrator::etdrk2;
                else if (val == "duhamel_picard") cfg.integrator = Integrator::duhamel_picard;
                else throw ConfigError("unknown integrator '" + val + "'", lineno, 1);
            } else if (key == "f0") {
                try {
                    cfg.f0_modes = parse_mode_list(val);
                } catch (const SolverError& e) {
                    throw ConfigError(e.what(), lineno, 1);
                }
            } else if (key == "f0_path") cfg.f0_path = val;
            else if (key == "eta_star_path") cfg.eta_star_path = val;
            else if (key == "seed") cfg.seed = static_cast<unsigned>(parse_int(val, lineno));
            else unknown();
        } else if (section == "linear") {
            if (key == "data") cfg.linear_data_path = val;
            else unknown();
        } else if (section == "output") {
            if (key == "directory") cfg.output_directory = val;
            else if (key == "formats") cfg.formats = val;
            else unknown();
        }
    }

    if (!cfg.dt_set) cfg.dt = 0.05 / std::max(1.0, std::abs(cfg.gamma));
    cfg.domain.validate();
    if (!(cfg.tol > 0.0)) throw ConfigError("tol must be positive", 0, 0);
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SolverError("cannot open config file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

} // namespace muskat
