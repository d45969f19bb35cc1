#pragma once

#include "dropwave/trig_series.hpp"

namespace dropwave {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

/// Radial graph description of the drop boundary over the unit circle:
/// boundary point = (1 + h(theta)) (cos theta, sin theta), potential psi.
/// Requires 1 + h > 0 pointwise.
struct S1State {
  TrigSeries h;
  TrigSeries psi;
};

/// Conformal map of the periodic strip onto the punctured plane:
/// (rho, theta) -> e^rho (cos theta, sin theta).
Vec2 conformal_map(double rho, double theta);

/// Log-radius change of variables xi = log(1 + h) and its inverse
/// h = e^xi - 1. Throws ValidationError when 1 + h <= 0 somewhere.
TrigSeries s1_to_torus(const TrigSeries& h, const SolverGrid& grid);
TrigSeries torus_to_s1(const TrigSeries& xi, const SolverGrid& grid);

/// Curvature of the curve rho = xi(theta) under the strip metric, in
/// divergence form e^{-xi} [ (1+xi'^2)^{-1/2} - (xi'(1+xi'^2)^{-1/2})' ].
/// The unit circle (xi = 0) has curvature 1.
TrigSeries curvature(const TrigSeries& xi, const SolverGrid& grid);

/// Outward unit normal of the boundary curve at angle theta.
Vec2 normal_vector(const TrigSeries& xi, double theta);

/// Derivative of the boundary parametrization gamma(theta) =
/// e^{xi(theta)} (cos theta, sin theta); the normal is orthogonal to it.
Vec2 boundary_tangent(const TrigSeries& xi, double theta);

/// Enclosed area (the drop mass) M = 1/2 integral e^{2 xi} dtheta and the
/// boundary arc length integral e^{xi} sqrt(1 + xi'^2) dtheta, both by
/// spectrally exact quadrature on the dealiased grid.
double enclosed_area(const TrigSeries& xi, const SolverGrid& grid);
double arc_length(const TrigSeries& xi, const SolverGrid& grid);

} // namespace dropwave
