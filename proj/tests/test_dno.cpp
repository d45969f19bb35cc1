#include "dropwave/dno.hpp"

#include "dropwave/errors.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace dropwave;

namespace {

// random smooth elevation rescaled to a target H^3 size
TrigSeries random_xi(std::size_t N, double h3_norm, std::mt19937_64& rng) {
  TrigSeries f = random_series(N, 0.5, rng);
  f.mean = 0.1 * f.mean; // small mean offset, still exercised (G ignores it)
  const double s = h3_norm / sobolev_norm(f, 3.0);
  return s * f;
}

TrigSeries random_chi(std::size_t N, std::mt19937_64& rng) {
  TrigSeries f = random_series(N, 0.4, rng);
  return (1.0 / sobolev_norm(f, 3.0)) * f;
}

} // namespace

TEST_SUITE_BEGIN("dirichlet_neumann");

TEST_CASE("flat operator is the multiplier l") {
  auto c3 = TrigSeries::harmonic_cos(8, 3, 1.0);
  auto g = dno_flat(c3);
  CHECK(g.a(3) == 3.0);

  auto k = TrigSeries::constant(8, 4.2);
  CHECK(l2_norm(dno_flat(k)) == 0.0); // constants are in the kernel

  auto s1 = TrigSeries::harmonic_sin(8, 1, 1.0);
  CHECK(dno_flat(s1).b(1) == 1.0);
}

TEST_CASE("collocation DNO reduces to the multiplier on flat and shifted-flat boundaries") {
  SolverGrid grid = SolverGrid::standard(16);
  auto chi = TrigSeries::harmonic_cos(16, 2, 1.0);

  TrigSeries zero(16);
  auto g0 = dno(zero, chi, grid);
  CHECK(g0.a(2) == doctest::Approx(2.0).epsilon(1e-13));
  CHECK(l2_norm(g0 - dno_flat(chi)) < 1e-12);

  // constant elevation only shifts the strip: same operator
  auto c = TrigSeries::constant(16, 0.3);
  auto gc = dno(c, chi, grid);
  CHECK(l2_norm(gc - dno_flat(chi)) < 1e-12);
}

TEST_CASE("first-order response in the boundary shape") {
  // G(eps cos 2t)(cos t) = cos t + eps * dG(0)[cos 2t](cos t) + O(eps^2)
  // and the derivative equals -cos t; Richardson in eps checks the slope.
  SolverGrid grid = SolverGrid::standard(24);
  auto chi = TrigSeries::harmonic_cos(24, 1, 1.0);
  auto slope_at = [&](double eps) {
    auto xi = TrigSeries::harmonic_cos(24, 2, eps);
    auto g = dno(xi, chi, grid);
    return (g.a(1) - 1.0) / eps;
  };
  const double d1 = slope_at(1e-4);
  const double d2 = slope_at(5e-5);
  const double extrap = 2.0 * d2 - d1; // kills the O(eps) term of the slope
  CHECK(extrap == doctest::Approx(-1.0).epsilon(1e-7));
}

TEST_CASE("harmonic extension values") {
  SolverGrid grid = SolverGrid::standard(16);
  TrigSeries zero(16);
  auto chi = TrigSeries::harmonic_cos(16, 1, 1.0);

  // flat case is exactly e^{rho} cos(theta)
  CHECK(harmonic_extension_value(zero, chi, grid, -1.0, 0.0) ==
        doctest::Approx(std::exp(-1.0)).epsilon(1e-12));

  // deep interior: all nonzero modes have decayed
  CHECK(std::abs(harmonic_extension_value(zero, chi, grid, -20.0, 0.77)) < 1e-8);

  // constant boundary data extends to the same constant
  auto k = TrigSeries::constant(16, 2.5);
  CHECK(harmonic_extension_value(zero, k, grid, -0.4, 1.0) ==
        doctest::Approx(2.5).epsilon(1e-12));

  // outside the closure of the fluid region
  CHECK_THROWS_AS(harmonic_extension_value(zero, chi, grid, 0.5, 0.0), ValidationError);
}

TEST_CASE("operator properties on random small states") {
  const std::size_t N = 32;
  SolverGrid grid = SolverGrid::standard(N);
  std::mt19937_64 rng(2024);

  for (int trial = 0; trial < 5; ++trial) {
    TrigSeries xi = random_xi(N, 0.2, rng);
    TrigSeries chi1 = random_chi(N, rng);
    TrigSeries chi2 = random_chi(N, rng);

    auto g1 = dno(xi, chi1, grid);
    auto g2 = dno(xi, chi2, grid);

    // L2-symmetry and nonnegativity of the quadratic form
    const double sym = std::abs(inner_product(g1, chi2) - inner_product(g2, chi1));
    CHECK(sym <= 1e-10 * l2_norm(chi1) * l2_norm(chi2));
    const double quad = inner_product(g1, chi1);
    CHECK(quad >= -1e-10 * inner_product(chi1, chi1));

    // constants in the kernel, zero mean of the image
    auto gk = dno(xi, TrigSeries::constant(N, 1.0), grid);
    CHECK(l2_norm(gk) <= 1e-12);
    CHECK(std::abs(integral(g1)) <= 1e-10);

    // translation equivariance; a shift commensurate with the collocation
    // grid permutes the nodes, so the discrete operator commutes exactly
    // (generic shifts agree only to truncation level)
    const double alpha = 2.0 * M_PI * double(3 + trial) / double(grid.M);
    auto lhs = translate(g1, alpha);
    auto rhs = dno(translate(xi, alpha), translate(chi1, alpha), grid);
    CHECK(l2_norm(lhs - rhs) <= 1e-10);

    // reflection equivariance: G(iota xi)(iota chi) = iota(G(xi)chi)
    auto ref = dno(reflect(xi), reflect(chi1), grid);
    CHECK(l2_norm(ref - reflect(g1)) <= 1e-10);
  }
}

TEST_CASE("shape fields satisfy their defining relations") {
  const std::size_t N = 24;
  SolverGrid grid = SolverGrid::standard(N);
  std::mt19937_64 rng(5);
  TrigSeries xi = random_xi(N, 0.15, rng);
  TrigSeries chi = random_chi(N, rng);

  auto f = shape_fields(xi, chi, grid);
  auto g = dno(xi, chi, grid);
  auto xp = differentiate(xi);
  auto cp = differentiate(chi);

  // b (1 + xi'^2) = G chi + xi' chi'; both sides pass through independent
  // truncations, so they agree to aliasing level
  auto lhs = nonlinear_map(
      {&f.b_field, &xp}, [](const double* v) { return v[0] * (1.0 + v[1] * v[1]); }, grid);
  auto rhs = nonlinear_map(
      {&g, &xp, &cp}, [](const double* v) { return v[0] + v[1] * v[2]; }, grid);
  CHECK(l2_norm(lhs - rhs) < 1e-10);

  // v = chi' - b xi'
  auto vh = nonlinear_map(
      {&cp, &f.b_field, &xp}, [](const double* v) { return v[0] - v[1] * v[2]; }, grid);
  CHECK(l2_norm(vh - f.v_field) < 1e-13);
}

TEST_CASE("shape derivative spot values at the circle") {
  SolverGrid grid = SolverGrid::standard(16);
  TrigSeries zero(16);
  auto chi = TrigSeries::harmonic_cos(16, 1, 1.0);

  // dG(0)[cos 2t](cos t): B = cos t, V = -sin t; the two contributions sum
  // to exactly -cos t
  auto d = dno_shape_derivative(zero, chi, TrigSeries::harmonic_cos(16, 2, 1.0), grid);
  CHECK(d.a(1) == doctest::Approx(-1.0).epsilon(1e-12));
  auto minus_cos = TrigSeries::harmonic_cos(16, 1, -1.0);
  CHECK(l2_norm(d - minus_cos) < 1e-12);

  // dG(0)[cos t](cos t) = 0 by exact cancellation
  auto z = dno_shape_derivative(zero, chi, TrigSeries::harmonic_cos(16, 1, 1.0), grid);
  CHECK(l2_norm(z) < 1e-12);

  // linearity in the direction: zero direction gives zero
  auto n = dno_shape_derivative(zero, chi, TrigSeries(16), grid);
  CHECK(l2_norm(n) == 0.0);
}

TEST_CASE("shape derivative matches central finite differences") {
  const std::size_t N = 24;
  SolverGrid grid = SolverGrid::standard(N);
  std::mt19937_64 rng(77);
  TrigSeries xi = random_xi(N, 0.1, rng);
  TrigSeries chi = random_chi(N, rng);
  TrigSeries dir = random_xi(N, 0.1, rng);

  auto analytic = dno_shape_derivative(xi, chi, dir, grid);

  const double h = 1e-5;
  auto gp = dno(xi + h * dir, chi, grid);
  auto gm = dno(xi - h * dir, chi, grid);
  auto fd = (1.0 / (2.0 * h)) * (gp - gm);

  CHECK(l2_norm(analytic - fd) <= 1e-6 * std::max(1.0, l2_norm(analytic)));
}

TEST_CASE("conditioning guard rejects oversized elevations") {
  const std::size_t N = 64;
  SolverGrid grid = SolverGrid::standard(N);
  auto xi = TrigSeries::harmonic_cos(N, 1, 1.0); // max|xi| * N = 64 > 30
  auto chi = TrigSeries::harmonic_cos(N, 1, 1.0);
  CHECK_THROWS_AS(dno(xi, chi, grid), NumericsError);
}

TEST_SUITE_END();
