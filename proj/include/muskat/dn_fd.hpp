// dn_fd.hpp — independent finite-difference oracle for the DN operator (d = 1).

#pragma once

#include "muskat/domain.hpp"

namespace muskat {

// Solves div(A grad v) = 0 on the straightened strip with v = f at z = 0 and
// the A-weighted no-flux condition at z = -b by a second-order conservative
// scheme on an (nz_fd - 1) x nz_fd grid, then returns the top conormal trace
//   (-grad rho . grad_x v + (1 + |grad rho|^2)/dz_rho . dz v)|_{z=0}
// as a SurfaceField on the oracle's own lattice.  nz_fd must be odd, >= 9.
SurfaceField dn_oracle_fd(const SurfaceField& eta, const SurfaceField& f, int nz_fd);

} // namespace muskat
