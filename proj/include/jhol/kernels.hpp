#pragma once

#include "jhol/disc_grid.hpp"

namespace jhol {

struct Wirtinger {
  DiscGrid dz;
  DiscGrid dzbar;
};

/// Spectral in theta (Nyquist mode dropped), centred differences in r with
/// the reflection u(-r, theta) = u(r, theta + pi) at the inner ring and a
/// one-sided second-order stencil at the outer ring.
Wirtinger wirtinger_kernel(const DiscGrid& u, Exec exec);

/// Cauchy-Green transform Tf(z) = -(1/pi) int f(zeta)/(zeta - z) by Fourier
/// modes: each angular mode of f is taken piecewise linear in r and the
/// radial kernel integrals are evaluated in closed form.
DiscGrid cauchy_green_modal(const DiscGrid& f, Exec exec);

/// Same transform by direct quadrature: exact integration of 1/(zeta - z)
/// over cells near the target, midpoint rule elsewhere. O(N^2); kept as an
/// independent check on the modal route.
DiscGrid cauchy_green_direct(const DiscGrid& f, Exec exec);

/// int over the polar cell [r0, r1] x [t0, t1] of 1/(zeta - z) dA.
Complex cell_kernel_integral(Complex z, double r0, double r1, double t0, double t1);

/// Discrete Laplacian mass per cell: the outward normal flux of the real
/// part of component 0 through the cell boundary. Radial face slopes are
/// fourth order (reflected rings at the centre, one-sided at the rim);
/// angular faces use the centred difference.
std::vector<double> cell_flux_kernel(const DiscGrid& rho, Exec exec);

}  // namespace jhol
