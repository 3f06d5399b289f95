// transforms.hpp — grid <-> coefficient transforms and pseudospectral products.
//
// Normalization: the forward transform divides by nx^d, so coefficients are
// true Fourier coefficients and g(x) = sum_xi coeff(xi) exp(i xi.x).  The DFT
// Nyquist bin is split evenly between +nx/2 and -nx/2 so that the symmetric
// lattice round-trips exactly.

#pragma once

#include <vector>

#include "muskat/domain.hpp"

namespace muskat {

SurfaceField transform_forward(const DomainSpec& spec, const std::vector<double>& grid_values);
std::vector<double> transform_inverse(const SurfaceField& field);

// Physical-space grid coordinates, row major (x1 slowest for d = 2).
std::vector<double> grid_points_1d(const DomainSpec& spec);

// Pointwise product computed on the grid; the 2/3-rule mask is applied to the
// result when dealias is set.
SurfaceField multiply(const SurfaceField& a, const SurfaceField& b, bool dealias = true);
// Pointwise quotient a/b on the grid; b must stay away from zero.
SurfaceField divide(const SurfaceField& a, const SurfaceField& b, bool dealias = true);

// Zero every mode with any |xi_i| > nx/3 (in place).
void apply_dealias_mask(SurfaceField& f);

// Zero the +-nx/2 modes.  The grid cannot separate the Nyquist pair (both map
// to the same DFT bin), so grid-quadrature identities such as Parseval hold
// exactly only on this band-limited subspace.
void zero_nyquist(SurfaceField& f);

// Fourier interpolation onto another lattice (exact for the common modes).
SurfaceField resample(const SurfaceField& f, const DomainSpec& target);

// max |grid value| without leaving coefficient space callers.
double grid_max_abs(const SurfaceField& f);
double grid_min(const SurfaceField& f);

// Deterministic pairwise summation used by all norm accumulations.
double pairwise_sum(const std::vector<double>& terms);

// Normalized grid L2 norm: sqrt(mean of squares) = coefficient l2 norm.
double grid_l2(const std::vector<double>& grid_values);

} // namespace muskat
