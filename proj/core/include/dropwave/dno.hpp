#pragma once

#include "dropwave/trig_series.hpp"

#include <cstddef>
#include <vector>

namespace dropwave {

/// Harmonic extension on the half-strip {rho <= xi(theta)} in the basis
/// a0 + sum_{n=1..N} e^{n rho} (c_n cos(n theta) + s_n sin(n theta)),
/// i.e. harmonic functions bounded as rho -> -infinity. Obtained by
/// collocating the boundary condition Phi(xi(theta_j), theta_j) = chi(theta_j).
struct HarmonicExtension {
  double a0 = 0.0;
  std::vector<double> c, s;  // index n-1 holds the mode-n coefficients
  double boundary_residual = 0.0; // max-norm interpolation defect at the nodes

  std::size_t order() const { return c.size(); }
  /// Phi(rho, theta); decays to a0 as rho -> -infinity.
  double value(double rho, double theta) const;
};

/// Flat-boundary Dirichlet-Neumann operator: the Fourier multiplier l
/// (mode l maps to l times itself, mean to zero).
TrigSeries dno_flat(const TrigSeries& chi);

/// Solve the collocation system for the harmonic extension under xi.
/// Preconditions: max|xi| * N <= 30 (conditioning guard) and the boundary
/// interpolation residual must come out below 1e-10; otherwise NumericsError.
HarmonicExtension harmonic_extension(const TrigSeries& xi, const TrigSeries& chi,
                                     const SolverGrid& grid);

/// Dirichlet-Neumann operator on the torus at infinite depth:
/// G(xi)chi = (d/drho) Phi - xi' (d/dtheta) Phi evaluated on rho = xi(theta),
/// where Phi is the harmonic extension of chi. Reduces to dno_flat for
/// constant xi. Output has zero mean to solver tolerance.
TrigSeries dno(const TrigSeries& xi, const TrigSeries& chi, const SolverGrid& grid);

/// Directional shape derivative dG(xi)[xi_hat] chi = -G(xi)[B xi_hat] - (V xi_hat)'
/// with B = (G(xi)chi + xi' chi') / (1 + xi'^2) and V = chi' - B xi'.
TrigSeries dno_shape_derivative(const TrigSeries& xi, const TrigSeries& chi,
                                const TrigSeries& xi_hat, const SolverGrid& grid);

/// Value of the harmonic extension of chi at an interior point (rho, theta);
/// requires rho <= xi(theta) (closure of the fluid region in strip
/// coordinates), ValidationError otherwise.
double harmonic_extension_value(const TrigSeries& xi, const TrigSeries& chi,
                                const SolverGrid& grid, double rho, double theta);

/// The fields B and V entering the shape derivative; also the fluid velocity
/// decomposition used by the evolution equations.
struct ShapeFields {
  TrigSeries b_field;
  TrigSeries v_field;
};
ShapeFields shape_fields(const TrigSeries& xi, const TrigSeries& chi, const SolverGrid& grid);

} // namespace dropwave
