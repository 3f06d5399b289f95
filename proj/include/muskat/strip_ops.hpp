// strip_ops.hpp — calculus helpers on z-resolved coefficient stacks.

#pragma once

#include <vector>

#include "muskat/domain.hpp"

namespace muskat {

// Horizontal divergence of a d-vector of strips, spectral in x.
StripField div_x(const std::vector<StripField>& f);

// Horizontal partial derivative, spectral in x.
StripField dx_strip(const StripField& f, int axis);

// Vertical derivative: centered interior, one-sided second order at the ends.
StripField dz_strip(const StripField& f);

// Composite trapezoid over the z nodes, per mode.
SurfaceField trapz_z(const StripField& f);

// One-sided second-order vertical derivative at the top / bottom slab.
SurfaceField dz_at_top(const StripField& f);
SurfaceField dz_at_bottom(const StripField& f);

// Apply the z-sliced multiplier D(z) = |D| tanh((z+b)|D|) slab by slab.
StripField apply_dz_operator(const StripField& f);

} // namespace muskat
