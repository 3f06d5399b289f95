// serialize.hpp — JSON persistence for the field types.
//
// Field schema (version 1): {version, d, nx, nz, b, kind:"surface"|"strip",
// coeffs:[[re,im],...] in row-major full-lattice order (slab-major for
// strips), z_nodes for strips}.

#pragma once

#include <nlohmann/json_fwd.hpp>
#include <string>

#include "muskat/domain.hpp"
#include "muskat/linear.hpp"

namespace muskat {

nlohmann::json to_json(const SurfaceField& f);
nlohmann::json to_json(const StripField& f);
nlohmann::json to_json(const LinearData& data);
nlohmann::json to_json(const LinearSolution& sol);

SurfaceField surface_from_json(const nlohmann::json& j);
StripField strip_from_json(const nlohmann::json& j);
LinearData linear_data_from_json(const nlohmann::json& j);

void save_json(const std::string& path, const nlohmann::json& j);
nlohmann::json load_json(const std::string& path);

} // namespace muskat
