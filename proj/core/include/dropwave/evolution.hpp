#pragma once

#include "dropwave/dynamics.hpp"

#include <cstddef>
#include <vector>

namespace dropwave {

/// Recorded integration output: times, states and conserved-quantity
/// monitors, one entry per recorded step (including t = 0).
struct Trajectory {
  std::vector<double> times;
  std::vector<DropState> states;
  std::vector<ConservedSet> monitors;
};

struct EvolveOptions {
  std::size_t record_every = 1; // record one state every k steps
  bool spectral_filter = false; // mild exponential high-mode filter, off by default
};

/// Frequency of the linearized mode l at the static circle:
/// Omega_l = sqrt(sigma0 l (l^2 - 1)); Omega_1 = 0 is the translation mode.
double linear_frequency(std::size_t l, double sigma0);

/// Stability-guard default step: 0.25 / Omega_N.
double default_dt(std::size_t N, double sigma0);

/// One classical RK4 step of the torus equations.
DropState step_rk4(const DropState& u, double dt, const PhysParams& p, const SolverGrid& grid,
                   bool spectral_filter = false);

/// Fixed-step integration over [0, T] (the last step is shortened to land
/// exactly on T). Records every record_every-th step plus the endpoint.
Trajectory simulate(const DropState& u0, double T, double dt, const PhysParams& p,
                    const SolverGrid& grid, const EvolveOptions& opts = {});

} // namespace dropwave
