#pragma once

#include "dropwave/geometry.hpp"
#include "dropwave/trig_series.hpp"

#include <utility>

namespace dropwave {

/// Physical parameters: capillarity coefficient sigma0 > 0.
struct PhysParams {
  double sigma0 = 1.0;
};

/// Energy, angular momentum and mass evaluated on one state.
struct ConservedSet {
  double H = 0.0;
  double I = 0.0;
  double M = 0.0;
};

/// Gradient pairs and time derivatives are (xi-component, chi-component).
using FieldPair = std::pair<TrigSeries, TrigSeries>;

/// Right-hand side of the torus evolution equations:
///   d/dt xi  = e^{-2xi} G(xi)chi
///   d/dt chi = e^{-2xi} [ Z^2/2 - chi'^2/2 + sigma0 e^xi (xi'/sqrt(1+xi'^2))' ]
///              - sigma0 [ e^{-xi} / sqrt(1+xi'^2) - 1 ]
/// with Z = (G(xi)chi + xi' chi') / sqrt(1+xi'^2).
FieldPair rhs(const DropState& u, const PhysParams& p, const SolverGrid& grid);

/// H = 1/2 <chi, G(xi)chi> + sigma0 * arc_length - sigma0 * enclosed_area.
double hamiltonian(const DropState& u, const PhysParams& p, const SolverGrid& grid);

/// I = -1/2 integral e^{2xi} chi' dtheta. The equivalent form
/// integral e^{2xi} xi' chi dtheta is exposed for consistency testing.
double angular_momentum(const DropState& u, const SolverGrid& grid);
double angular_momentum_alt(const DropState& u, const SolverGrid& grid);

/// Drop mass M = 1/2 integral e^{2xi} dtheta (equals the enclosed area).
double mass(const DropState& u, const SolverGrid& grid);

ConservedSet conserved(const DropState& u, const PhysParams& p, const SolverGrid& grid);

/// L2 gradients. The xi-gradient of H carries e^xi factors on the capillary
/// group, the form consistent with the evolution equations through
/// rhs = (e^{-2xi} dH/dchi, -e^{-2xi} dH/dxi).
FieldPair grad_hamiltonian(const DropState& u, const PhysParams& p, const SolverGrid& grid);
FieldPair grad_angular_momentum(const DropState& u, const SolverGrid& grid);
FieldPair grad_mass(const DropState& u, const SolverGrid& grid);

/// Poisson bracket {A,B} = <e^{-2xi} dA/dxi, dB/dchi> - <e^{-2xi} dA/dchi, dB/dxi>.
double poisson_bracket(const FieldPair& gradA, const FieldPair& gradB, const DropState& u,
                       const SolverGrid& grid);

/// Right-hand side of the radial-graph (S^1) form of the equations:
///   d/dt h   = sqrt((1+h)^2 + h'^2) / (1+h) * G(h)psi
///   d/dt psi = 1/2 (G(h)psi + psi' h' / ((1+h) J))^2 - psi'^2 / (2(1+h)^2)
///              - sigma0 (curvature - 1),   J = sqrt((1+h)^2 + h'^2)
/// where G(h)psi is evaluated through the torus operator by the conformal
/// pullback G(h)psi = e^{-xi} (1+xi'^2)^{-1/2} G(xi)chi, xi = log(1+h).
FieldPair rhs_s1(const S1State& hpsi, const PhysParams& p, const SolverGrid& grid);

/// Convert u to (h, psi), evaluate both right-hand sides, pull the S^1 one
/// back through d/dt h = e^xi d/dt xi, and return the combined L2 norm of
/// the difference. Zero (to spectral accuracy) by the equivalence of the
/// two formulations.
double formulation_discrepancy(const DropState& u, const PhysParams& p, const SolverGrid& grid);

} // namespace dropwave
