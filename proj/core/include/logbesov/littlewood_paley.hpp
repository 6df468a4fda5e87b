#pragma once

#include "logbesov/field.hpp"

namespace logbesov {

// Radial profile: 1 on [0, 5/4], 0 on [3/2, inf), C-infinity bridge between.
double phi_profile(double t);

// psi(2^-j xi) = phi(2^-j |xi|) - phi(2^{-j+1} |xi|)
double psi_j(double xi_norm, int j);
double psi_j(const Vec3& xi, int j);

// Largest block whose annulus lies below Nyquist: log2(N/2) - 1, measured on
// physical wavevectors 2πk/L.
int default_jmax(const GridSpec& grid);

SpectralField low_pass(const SpectralField& u);
SpectralField lp_block(const SpectralField& u, int j);

// max over representable wavevectors with |xi| <= 5 * 2^{jmax-2} of
// |1 - phi(|xi|) - sum_{j<=jmax} psi_j(xi)|
double partition_residual(const GridSpec& grid, int jmax);

}  // namespace logbesov
