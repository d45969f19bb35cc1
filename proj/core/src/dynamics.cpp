#include "dropwave/dynamics.hpp"

#include "dropwave/dno.hpp"
#include "dropwave/errors.hpp"

#include <cmath>

namespace dropwave {

namespace {

// s = xi' / sqrt(1 + xi'^2), the quantity whose theta-derivative carries the
// capillary restoring force
TrigSeries slope_field(const TrigSeries& xp, const SolverGrid& grid) {
  return nonlinear_map(
      {&xp}, [](const double* v) { return v[0] / std::sqrt(1.0 + v[0] * v[0]); }, grid);
}

} // namespace

FieldPair rhs(const DropState& u, const PhysParams& p, const SolverGrid& grid) {
  const TrigSeries& xi = u.xi;
  auto g = dno(xi, u.chi, grid);
  auto xp = differentiate(xi);
  auto cp = differentiate(u.chi);
  auto sp = differentiate(slope_field(xp, grid));

  auto dxi = nonlinear_map(
      {&xi, &g}, [](const double* v) { return std::exp(-2.0 * v[0]) * v[1]; }, grid);

  const double sigma0 = p.sigma0;
  auto dchi = nonlinear_map(
      {&xi, &g, &xp, &cp, &sp},
      [sigma0](const double* v) {
        const double e = std::exp(v[0]);
        const double root = std::sqrt(1.0 + v[2] * v[2]);
        const double z = (v[1] + v[2] * v[3]) / root;
        const double bernoulli = 0.5 * z * z - 0.5 * v[3] * v[3] + sigma0 * e * v[4];
        return bernoulli / (e * e) - sigma0 * (1.0 / (e * root) - 1.0);
      },
      grid);

  return {std::move(dxi), std::move(dchi)};
}

double hamiltonian(const DropState& u, const PhysParams& p, const SolverGrid& grid) {
  auto g = dno(u.xi, u.chi, grid);
  const double kinetic = 0.5 * inner_product(u.chi, g);
  return kinetic + p.sigma0 * (arc_length(u.xi, grid) - enclosed_area(u.xi, grid));
}

double angular_momentum(const DropState& u, const SolverGrid& grid) {
  auto cp = differentiate(u.chi);
  auto f = nonlinear_map(
      {&u.xi, &cp},
      [](const double* v) { return -0.5 * std::exp(2.0 * v[0]) * v[1]; }, grid);
  return integral(f);
}

double angular_momentum_alt(const DropState& u, const SolverGrid& grid) {
  auto xp = differentiate(u.xi);
  auto f = nonlinear_map(
      {&u.xi, &xp, &u.chi},
      [](const double* v) { return std::exp(2.0 * v[0]) * v[1] * v[2]; }, grid);
  return integral(f);
}

double mass(const DropState& u, const SolverGrid& grid) { return enclosed_area(u.xi, grid); }

ConservedSet conserved(const DropState& u, const PhysParams& p, const SolverGrid& grid) {
  return {hamiltonian(u, p, grid), angular_momentum(u, grid), mass(u, grid)};
}

FieldPair grad_hamiltonian(const DropState& u, const PhysParams& p, const SolverGrid& grid) {
  const TrigSeries& xi = u.xi;
  auto g = dno(xi, u.chi, grid);
  auto xp = differentiate(xi);
  auto cp = differentiate(u.chi);
  auto sp = differentiate(slope_field(xp, grid));

  const double sigma0 = p.sigma0;
  auto dxi = nonlinear_map(
      {&xi, &g, &xp, &cp, &sp},
      [sigma0](const double* v) {
        const double e = std::exp(v[0]);
        const double root = std::sqrt(1.0 + v[2] * v[2]);
        const double z = (v[1] + v[2] * v[3]) / root;
        return -0.5 * z * z + 0.5 * v[3] * v[3] -
               sigma0 * (e * v[4] - e / root + e * e);
      },
      grid);

  return {std::move(dxi), std::move(g)};
}

FieldPair grad_angular_momentum(const DropState& u, const SolverGrid& grid) {
  auto xp = differentiate(u.xi);
  auto cp = differentiate(u.chi);
  auto dxi = nonlinear_map(
      {&u.xi, &cp}, [](const double* v) { return -std::exp(2.0 * v[0]) * v[1]; }, grid);
  auto dchi = nonlinear_map(
      {&u.xi, &xp}, [](const double* v) { return std::exp(2.0 * v[0]) * v[1]; }, grid);
  return {std::move(dxi), std::move(dchi)};
}

FieldPair grad_mass(const DropState& u, const SolverGrid& grid) {
  auto dxi = nonlinear_map(
      {&u.xi}, [](const double* v) { return std::exp(2.0 * v[0]); }, grid);
  return {std::move(dxi), TrigSeries(u.xi.order())};
}

double poisson_bracket(const FieldPair& gradA, const FieldPair& gradB, const DropState& u,
                       const SolverGrid& grid) {
  auto f = nonlinear_map(
      {&u.xi, &gradA.first, &gradA.second, &gradB.first, &gradB.second},
      [](const double* v) {
        return std::exp(-2.0 * v[0]) * (v[1] * v[4] - v[2] * v[3]);
      },
      grid);
  return integral(f);
}

FieldPair rhs_s1(const S1State& hpsi, const PhysParams& p, const SolverGrid& grid) {
  const TrigSeries& h = hpsi.h;
  const TrigSeries& psi = hpsi.psi;
  auto xi = s1_to_torus(h, grid);
  auto xp = differentiate(xi);

  // conformal pullback of the radial-graph operator
  auto g_torus = dno(xi, psi, grid);
  auto g = nonlinear_map(
      {&xi, &xp, &g_torus},
      [](const double* v) {
        return std::exp(-v[0]) / std::sqrt(1.0 + v[1] * v[1]) * v[2];
      },
      grid);

  auto hp = differentiate(h);
  auto pp = differentiate(psi);
  auto kappa = curvature(xi, grid);

  auto dh = nonlinear_map(
      {&h, &hp, &g},
      [](const double* v) {
        const double r = 1.0 + v[0];
        const double jac = std::sqrt(r * r + v[1] * v[1]);
        return jac / r * v[2];
      },
      grid);

  const double sigma0 = p.sigma0;
  auto dpsi = nonlinear_map(
      {&h, &hp, &pp, &g, &kappa},
      [sigma0](const double* v) {
        const double r = 1.0 + v[0];
        const double jac = std::sqrt(r * r + v[1] * v[1]);
        const double zn = v[3] + v[2] * v[1] / (r * jac);
        return 0.5 * zn * zn - v[2] * v[2] / (2.0 * r * r) - sigma0 * (v[4] - 1.0);
      },
      grid);

  return {std::move(dh), std::move(dpsi)};
}

double formulation_discrepancy(const DropState& u, const PhysParams& p, const SolverGrid& grid) {
  auto torus = rhs(u, p, grid);
  S1State hpsi{torus_to_s1(u.xi, grid), u.chi};
  auto graph = rhs_s1(hpsi, p, grid);

  // d/dt h = e^{xi} d/dt xi under h = e^{xi} - 1
  auto dh_from_torus = nonlinear_map(
      {&u.xi, &torus.first},
      [](const double* v) { return std::exp(v[0]) * v[1]; }, grid);

  const double eh = l2_norm(graph.first - dh_from_torus);
  const double ep = l2_norm(graph.second - torus.second);
  return std::hypot(eh, ep);
}

} // namespace dropwave
