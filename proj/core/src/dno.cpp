#include "dropwave/dno.hpp"

#include "dropwave/errors.hpp"
#include "trig_tables.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

namespace dropwave {

namespace {

// Conditioning guard: the collocation basis spans e^{n xi}, so max|xi| * N
// bounds the dynamic range of the system at e^{30}. Larger states need a
// different discretization, not a larger tolerance.
constexpr double kGuard = 30.0;
constexpr double kBoundaryTol = 1e-10;

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

std::string format_sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

} // namespace

double HarmonicExtension::value(double rho, double theta) const {
  double v = a0;
  for (std::size_t n = 1; n <= order(); ++n) {
    const double w = std::exp(static_cast<double>(n) * rho);
    const double nt = static_cast<double>(n) * theta;
    v += w * (c[n - 1] * std::cos(nt) + s[n - 1] * std::sin(nt));
  }
  return v;
}

TrigSeries dno_flat(const TrigSeries& chi) {
  TrigSeries g(chi.order());
  for (std::size_t l = 1; l <= chi.order(); ++l) {
    const double ld = static_cast<double>(l);
    g.cos_coeffs[l - 1] = ld * chi.cos_coeffs[l - 1];
    g.sin_coeffs[l - 1] = ld * chi.sin_coeffs[l - 1];
  }
  return g;
}

//--------------------------------------------------------------------
// Collocation solve for the bounded harmonic extension. Basis functions
// 1, e^{n rho} cos(n theta), e^{n rho} sin(n theta) restricted to the
// boundary rho = xi(theta) are matched to chi at M uniform nodes. The
// system is solved after column equilibration; M = 2N+1 gives a square
// solve, larger M falls back to least squares.
//--------------------------------------------------------------------
HarmonicExtension harmonic_extension(const TrigSeries& xi, const TrigSeries& chi,
                                     const SolverGrid& grid) {
  const std::size_t N = grid.N;
  const std::size_t M = std::max(grid.M, 2 * N + 1);

  const std::vector<double> xs = sample(xi, M);
  const std::vector<double> bc = sample(chi, M);
  const double xmax = max_abs(xs);
  if (xmax * static_cast<double>(N) > kGuard)
    throw NumericsError("dno: conditioning guard exceeded, max|xi| * N = " +
                        format_sci(xmax * static_cast<double>(N)) + " > 30");

  const auto tab = detail::trig_table(M, N);
  const std::size_t cols = 2 * N + 1;

  Eigen::MatrixXd A(M, cols);
  std::vector<double> pw(M, 1.0); // running e^{n xi_j}
  std::vector<double> ex(M);
  for (std::size_t j = 0; j < M; ++j) {
    A(j, 0) = 1.0;
    ex[j] = std::exp(xs[j]);
  }
  for (std::size_t n = 1; n <= N; ++n) {
    const double* cr = tab->cos_row(n);
    const double* sr = tab->sin_row(n);
    for (std::size_t j = 0; j < M; ++j) {
      pw[j] *= ex[j];
      A(j, n) = pw[j] * cr[j];
      A(j, N + n) = pw[j] * sr[j];
    }
  }

  Eigen::VectorXd rhs = Eigen::Map<const Eigen::VectorXd>(bc.data(), M);

  // column equilibration keeps the pivoted factorization honest when the
  // e^{n xi} range is wide
  Eigen::VectorXd scale(cols);
  for (std::size_t k = 0; k < cols; ++k) {
    const double s = A.col(k).cwiseAbs().maxCoeff();
    scale(k) = (s > 0.0) ? s : 1.0;
  }
  Eigen::MatrixXd As = A * scale.cwiseInverse().asDiagonal();

  Eigen::VectorXd y;
  if (M == cols)
    y = Eigen::PartialPivLU<Eigen::MatrixXd>(As).solve(rhs);
  else
    y = Eigen::ColPivHouseholderQR<Eigen::MatrixXd>(As).solve(rhs);
  Eigen::VectorXd x = scale.cwiseInverse().asDiagonal() * y;

  const double rnorm = (A * x - rhs).cwiseAbs().maxCoeff() /
                       std::max(1.0, rhs.cwiseAbs().maxCoeff());
  if (!(rnorm <= kBoundaryTol))
    throw NumericsError("dno: boundary interpolation residual " + format_sci(rnorm) +
                        " above tolerance (state too rough for this truncation)");

  HarmonicExtension ext;
  ext.a0 = x(0);
  ext.c.assign(N, 0.0);
  ext.s.assign(N, 0.0);
  for (std::size_t n = 1; n <= N; ++n) {
    ext.c[n - 1] = x(n);
    ext.s[n - 1] = x(N + n);
  }
  ext.boundary_residual = rnorm;
  return ext;
}

TrigSeries dno(const TrigSeries& xi, const TrigSeries& chi, const SolverGrid& grid) {
  const std::size_t N = grid.N;
  const HarmonicExtension ext = harmonic_extension(xi, chi, grid);

  // normal-derivative combination d/drho Phi - xi' d/dtheta Phi on the
  // boundary, sampled on the dealiased grid and truncated back to N modes
  const std::size_t Md = grid.dealias_points();
  const auto tab = detail::trig_table(Md, N);
  const std::vector<double> xs = sample(xi, Md);
  const std::vector<double> xps = sample(differentiate(xi), Md);

  std::vector<double> g(Md, 0.0), pw(Md, 1.0), ex(Md);
  for (std::size_t j = 0; j < Md; ++j) ex[j] = std::exp(xs[j]);
  for (std::size_t n = 1; n <= N; ++n) {
    const double nd = static_cast<double>(n);
    const double cn = ext.c[n - 1], sn = ext.s[n - 1];
    if (cn == 0.0 && sn == 0.0) {
      for (std::size_t j = 0; j < Md; ++j) pw[j] *= ex[j];
      continue;
    }
    const double* cr = tab->cos_row(n);
    const double* sr = tab->sin_row(n);
    for (std::size_t j = 0; j < Md; ++j) {
      pw[j] *= ex[j];
      const double drho = nd * pw[j] * (cn * cr[j] + sn * sr[j]);
      const double dth = nd * pw[j] * (-cn * sr[j] + sn * cr[j]);
      g[j] += drho - xps[j] * dth;
    }
  }
  return analyze(g, N);
}

ShapeFields shape_fields(const TrigSeries& xi, const TrigSeries& chi, const SolverGrid& grid) {
  const TrigSeries g = dno(xi, chi, grid);
  const TrigSeries xp = differentiate(xi);
  const TrigSeries cp = differentiate(chi);
  ShapeFields f;
  f.b_field = nonlinear_map(
      {&g, &xp, &cp}, [](const double* v) { return (v[0] + v[1] * v[2]) / (1.0 + v[1] * v[1]); },
      grid);
  f.v_field = nonlinear_map(
      {&cp, &f.b_field, &xp}, [](const double* v) { return v[0] - v[1] * v[2]; }, grid);
  return f;
}

TrigSeries dno_shape_derivative(const TrigSeries& xi, const TrigSeries& chi,
                                const TrigSeries& xi_hat, const SolverGrid& grid) {
  const ShapeFields f = shape_fields(xi, chi, grid);
  const TrigSeries bh = product(f.b_field, xi_hat, grid);
  const TrigSeries vh = product(f.v_field, xi_hat, grid);
  return -1.0 * dno(xi, bh, grid) - differentiate(vh);
}

double harmonic_extension_value(const TrigSeries& xi, const TrigSeries& chi,
                                const SolverGrid& grid, double rho, double theta) {
  const double boundary = evaluate(xi, theta);
  if (rho > boundary + 1e-12)
    throw ValidationError("harmonic_extension_value: point lies outside the fluid region");
  return harmonic_extension(xi, chi, grid).value(rho, theta);
}

} // namespace dropwave
