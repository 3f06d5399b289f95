// cli.hpp — command-line front end tying the solver modules together.

#pragma once

#include <string>
#include <vector>

#include "muskat/domain.hpp"

namespace muskat {

// Subcommands: tw, evolve, linear, dn, norms; each takes --config PATH and
// --out DIR.  Exit codes: 0 success, 2 solver non-convergence, 1 usage/IO.
int run_command(const std::vector<std::string>& argv);

// Bit-faithful field persistence (version-checked JSON).
void save_state(const std::string& path, const SurfaceField& f);
void save_state(const std::string& path, const StripField& f);
SurfaceField load_surface(const std::string& path);
StripField load_strip(const std::string& path);

} // namespace muskat
