#include "dropwave/geometry.hpp"

#include "dropwave/errors.hpp"

#include <algorithm>
#include <cmath>

namespace dropwave {

Vec2 conformal_map(double rho, double theta) {
  const double r = std::exp(rho);
  return {r * std::cos(theta), r * std::sin(theta)};
}

TrigSeries s1_to_torus(const TrigSeries& h, const SolverGrid& grid) {
  const std::size_t Mp = grid.dealias_points();
  std::vector<double> values = sample(h, Mp);
  const double lo = *std::min_element(values.begin(), values.end());
  if (!(1.0 + lo > 0.0)) {
    throw ValidationError("radial graph leaves the punctured plane: min(1 + h) <= 0");
  }
  for (double& v : values) v = std::log1p(v);
  return analyze(values, grid.N);
}

TrigSeries torus_to_s1(const TrigSeries& xi, const SolverGrid& grid) {
  return nonlinear_map({&xi}, [](const double* v) { return std::expm1(v[0]); }, grid);
}

TrigSeries curvature(const TrigSeries& xi, const SolverGrid& grid) {
  auto xp = differentiate(xi);
  // q = (1 + xi'^2)^{-1/2}, s = xi' q; kappa = e^{-xi} (q - s')
  auto q = nonlinear_map(
      {&xp}, [](const double* v) { return 1.0 / std::sqrt(1.0 + v[0] * v[0]); }, grid);
  auto s = nonlinear_map(
      {&xp}, [](const double* v) { return v[0] / std::sqrt(1.0 + v[0] * v[0]); }, grid);
  auto sp = differentiate(s);
  return nonlinear_map(
      {&xi, &q, &sp},
      [](const double* v) { return std::exp(-v[0]) * (v[1] - v[2]); }, grid);
}

Vec2 boundary_tangent(const TrigSeries& xi, double theta) {
  const double r = std::exp(evaluate(xi, theta));
  const double d = evaluate(differentiate(xi), theta);
  const double c = std::cos(theta), s = std::sin(theta);
  return {r * (d * c - s), r * (d * s + c)};
}

Vec2 normal_vector(const TrigSeries& xi, double theta) {
  const double d = evaluate(differentiate(xi), theta);
  const double c = std::cos(theta), s = std::sin(theta);
  const double scale = 1.0 / std::sqrt(1.0 + d * d);
  // clockwise rotation of the tangent, normalized; points away from the origin
  return {scale * (c + d * s), scale * (s - d * c)};
}

double enclosed_area(const TrigSeries& xi, const SolverGrid& grid) {
  auto f = nonlinear_map(
      {&xi}, [](const double* v) { return 0.5 * std::exp(2.0 * v[0]); }, grid);
  return integral(f);
}

double arc_length(const TrigSeries& xi, const SolverGrid& grid) {
  auto xp = differentiate(xi);
  auto f = nonlinear_map(
      {&xi, &xp},
      [](const double* v) { return std::exp(v[0]) * std::sqrt(1.0 + v[1] * v[1]); }, grid);
  return integral(f);
}

} // namespace dropwave
