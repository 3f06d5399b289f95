#include "muskat/serialize.hpp"

#include <nlohmann/json.hpp>

#include <fstream>

namespace muskat {

using nlohmann::json;

namespace {

json coeffs_to_json(const std::vector<cplx>& c) {
    json arr = json::array();
    for (const cplx& v : c) arr.push_back(json::array({v.real(), v.imag()}));
    return arr;
}

std::vector<cplx> coeffs_from_json(const json& arr, std::size_t expected) {
    if (!arr.is_array() || arr.size() != expected)
        throw SolverError("field JSON: coeffs has wrong length");
    std::vector<cplx> out(expected);
    for (std::size_t i = 0; i < expected; ++i)
        out[i] = cplx(arr[i][0].get<double>(), arr[i][1].get<double>());
    return out;
}

DomainSpec spec_from_json(const json& j, bool need_nz) {
    DomainSpec spec;
    spec.d = j.at("d").get<int>();
    spec.nx = j.at("nx").get<int>();
    spec.b = j.at("b").get<double>();
    if (j.contains("nz"))
        spec.nz = j.at("nz").get<int>();
    else if (need_nz)
        throw SolverError("field JSON: strip field requires nz");
    spec.validate();
    return spec;
}

void check_version(const json& j) {
    if (!j.contains("version")) throw VersionMismatch("field JSON: missing version key");
    if (j.at("version").get<int>() != 1)
        throw VersionMismatch("field JSON: unsupported version " + j.at("version").dump());
}

} // namespace

json to_json(const SurfaceField& f) {
    const DomainSpec& s = f.spec();
    return json{{"version", 1},      {"d", s.d},   {"nx", s.nx}, {"nz", s.nz},
                {"b", s.b},          {"kind", "surface"},
                {"coeffs", coeffs_to_json(f.coeffs())}};
}

json to_json(const StripField& f) {
    const DomainSpec& s = f.spec();
    return json{{"version", 1},
                {"d", s.d},
                {"nx", s.nx},
                {"nz", s.nz},
                {"b", s.b},
                {"kind", "strip"},
                {"coeffs", coeffs_to_json(f.data())},
                {"z_nodes", f.z_nodes()}};
}

SurfaceField surface_from_json(const json& j) {
    check_version(j);
    if (j.at("kind").get<std::string>() != "surface")
        throw SolverError("field JSON: expected kind \"surface\"");
    DomainSpec spec = spec_from_json(j, false);
    SurfaceField f(spec);
    f.coeffs() = coeffs_from_json(j.at("coeffs"), spec.lattice_size());
    return f;
}

StripField strip_from_json(const json& j) {
    check_version(j);
    if (j.at("kind").get<std::string>() != "strip")
        throw SolverError("field JSON: expected kind \"strip\"");
    DomainSpec spec = spec_from_json(j, true);
    StripField f(spec);
    f.data() = coeffs_from_json(j.at("coeffs"), spec.lattice_size() * spec.nz);
    if (j.contains("z_nodes")) {
        auto z = j.at("z_nodes").get<std::vector<double>>();
        if (z.size() != static_cast<std::size_t>(spec.nz) || z != f.z_nodes())
            throw SolverError("field JSON: z_nodes inconsistent with nz/b");
    }
    return f;
}

json to_json(const LinearData& data) {
    json F = json::array();
    for (const auto& comp : data.F) F.push_back(to_json(comp));
    return json{{"version", 1}, {"kind", "linear_data"}, {"F", F},
                {"G", to_json(data.G)}, {"H", to_json(data.H)}, {"K", to_json(data.K)}};
}

json to_json(const LinearSolution& sol) {
    json u = json::array();
    for (const auto& comp : sol.u) u.push_back(to_json(comp));
    return json{{"version", 1},        {"kind", "linear_solution"},
                {"u", u},              {"p", to_json(sol.p)},
                {"eta", to_json(sol.eta)}, {"residuals", sol.residuals}};
}

LinearData linear_data_from_json(const json& j) {
    check_version(j);
    if (j.at("kind").get<std::string>() != "linear_data")
        throw SolverError("expected kind \"linear_data\"");
    LinearData data;
    for (const auto& comp : j.at("F")) data.F.push_back(strip_from_json(comp));
    data.G = strip_from_json(j.at("G"));
    data.H = surface_from_json(j.at("H"));
    data.K = surface_from_json(j.at("K"));
    return data;
}

void save_json(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw SolverError("cannot open for writing: " + path);
    out << j.dump(1) << "\n";
}

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SolverError("cannot open for reading: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw SolverError("malformed JSON in " + path + ": " + e.what());
    }
    return j;
}

} // namespace muskat
