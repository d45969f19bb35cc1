#include "dropwave/evolution.hpp"

#include "dropwave/errors.hpp"

#include <cmath>

namespace dropwave {

namespace {

DropState axpy(const DropState& u, double c, const FieldPair& f) {
  return {u.xi + c * f.first, u.chi + c * f.second};
}

// 36th-order exponential damping of the top third of the spectrum; shaves
// aliasing-fed growth in long marginally resolved runs without touching
// resolved modes to double precision
void filter_in_place(TrigSeries& f) {
  const std::size_t N = f.order();
  if (N == 0) return;
  for (std::size_t l = 1; l <= N; ++l) {
    const double x = double(l) / double(N);
    const double damp = std::exp(-36.0 * std::pow(x, 36));
    f.set_a(l, damp * f.a(l));
    f.set_b(l, damp * f.b(l));
  }
}

} // namespace

double linear_frequency(std::size_t l, double sigma0) {
  const double ld = double(l);
  return std::sqrt(sigma0 * ld * (ld * ld - 1.0));
}

double default_dt(std::size_t N, double sigma0) {
  if (N < 2) throw ValidationError("default_dt needs at least two modes");
  return 0.25 / linear_frequency(N, sigma0);
}

DropState step_rk4(const DropState& u, double dt, const PhysParams& p, const SolverGrid& grid,
                   bool spectral_filter) {
  auto k1 = rhs(u, p, grid);
  auto k2 = rhs(axpy(u, 0.5 * dt, k1), p, grid);
  auto k3 = rhs(axpy(u, 0.5 * dt, k2), p, grid);
  auto k4 = rhs(axpy(u, dt, k3), p, grid);

  const double w = dt / 6.0;
  DropState next{
      u.xi + w * (k1.first + 2.0 * (k2.first + k3.first) + k4.first),
      u.chi + w * (k1.second + 2.0 * (k2.second + k3.second) + k4.second)};
  if (spectral_filter) {
    filter_in_place(next.xi);
    filter_in_place(next.chi);
  }
  return next;
}

Trajectory simulate(const DropState& u0, double T, double dt, const PhysParams& p,
                    const SolverGrid& grid, const EvolveOptions& opts) {
  if (!(dt > 0.0)) throw ValidationError("time step must be positive");
  if (!(T >= 0.0)) throw ValidationError("horizon must be nonnegative");
  const std::size_t every = opts.record_every == 0 ? 1 : opts.record_every;

  Trajectory out;
  DropState u = u0;
  double t = 0.0;
  out.times.push_back(t);
  out.states.push_back(u);
  out.monitors.push_back(conserved(u, p, grid));

  std::size_t step = 0;
  while (t < T) {
    const double remaining = T - t;
    const bool last = remaining <= dt * (1.0 + 1e-12);
    const double h = last ? remaining : dt;
    u = step_rk4(u, h, p, grid, opts.spectral_filter);
    t = last ? T : t + dt;
    ++step;
    if (step % every == 0 || last) {
      out.times.push_back(t);
      out.states.push_back(u);
      out.monitors.push_back(conserved(u, p, grid));
    }
  }
  return out;
}

} // namespace dropwave
