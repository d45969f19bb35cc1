#include "dropwave/trig_series.hpp"

#include "dropwave/errors.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace dropwave;
using std::numbers::pi;

TEST_SUITE_BEGIN("trig_spectral");

TEST_CASE("evaluate basis values") {
  auto f = TrigSeries::harmonic_cos(4, 1, 1.0);
  CHECK(evaluate(f, 0.0) == doctest::Approx(1.0).epsilon(1e-15));

  TrigSeries zero(8);
  CHECK(evaluate(zero, 1.234) == 0.0);

  auto g = TrigSeries::harmonic_sin(4, 2, 1.0);
  CHECK(evaluate(g, pi / 4.0) == doctest::Approx(1.0).epsilon(1e-15));

  // periodicity is exact up to the trig argument roundoff
  auto h = TrigSeries::harmonic_cos(4, 3, 0.7);
  CHECK(evaluate(h, 0.37) == doctest::Approx(evaluate(h, 0.37 + 2.0 * pi)).epsilon(1e-13));
}

TEST_CASE("differentiate is the exact mode-wise map") {
  auto f = TrigSeries::harmonic_cos(4, 1, 1.0);
  auto df = differentiate(f);
  CHECK(df.b(1) == -1.0); // cos -> -sin
  CHECK(df.a(1) == 0.0);

  auto c = TrigSeries::constant(4, 5.0);
  auto dc = differentiate(c);
  CHECK(dc.mean == 0.0);
  CHECK(l2_norm(dc) == 0.0);

  auto s3 = TrigSeries::harmonic_sin(8, 3, 1.0);
  auto ds3 = differentiate(s3);
  CHECK(ds3.a(3) == 3.0); // sin(3t) -> 3cos(3t)
  CHECK(ds3.b(3) == 0.0);
}

TEST_CASE("sample/analyze round trip is identity for band-limited data") {
  std::mt19937_64 rng(42);
  const std::size_t N = 16;
  TrigSeries f = random_series(N, 0.1, rng);
  auto g = analyze(sample(f, 2 * N + 1), N);
  CHECK(std::abs(g.mean - f.mean) < 1e-14);
  for (std::size_t l = 1; l <= N; ++l) {
    CHECK(std::abs(g.a(l) - f.a(l)) < 1e-13);
    CHECK(std::abs(g.b(l) - f.b(l)) < 1e-13);
  }
}

TEST_CASE("analyze rejects undersampled input") {
  std::vector<double> too_few(8, 0.0);
  CHECK_THROWS_AS(analyze(too_few, 8), ValidationError);
}

TEST_CASE("nonlinear_map basics") {
  SolverGrid grid = SolverGrid::standard(8);

  TrigSeries zero(8);
  auto e = nonlinear_map({&zero}, [](const double* v) { return std::exp(v[0]); }, grid);
  CHECK(e.mean == doctest::Approx(1.0).epsilon(1e-15));
  for (std::size_t l = 1; l <= 8; ++l) CHECK(std::abs(e.a(l)) + std::abs(e.b(l)) < 1e-15);

  // double-angle identity through the dealiased product
  auto c1 = TrigSeries::harmonic_cos(8, 1, 1.0);
  auto p = product(c1, c1, grid);
  CHECK(p.mean == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(p.a(2) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(std::abs(p.a(1)) < 1e-15);
}

TEST_CASE("nonlinear_map flags non-finite results") {
  SolverGrid grid = SolverGrid::standard(8);
  auto c1 = TrigSeries::harmonic_cos(8, 1, 1.0);
  CHECK_THROWS_AS(
      nonlinear_map({&c1}, [](const double* v) { return std::log(v[0] - 2.0); }, grid),
      NumericsError);
}

TEST_CASE("exp(2 xi) matches oversampled quadrature mode by mode") {
  const std::size_t N = 16;
  SolverGrid grid = SolverGrid::standard(N);
  auto xi = TrigSeries::harmonic_cos(N, 1, 0.1);
  auto q = nonlinear_map({&xi}, [](const double* v) { return std::exp(2.0 * v[0]); }, grid);

  auto fn = [](double t) { return std::exp(0.2 * std::cos(t)); };
  const std::size_t Mq = 4 * (2 * N + 1); // 4x oversampling for the reference
  CHECK(std::abs(q.mean - oracle::mean_coeff(fn, Mq)) < 1e-12);
  for (std::size_t l = 1; l <= N; ++l) {
    CHECK(std::abs(q.a(l) - oracle::cos_coeff(fn, l, Mq)) < 1e-12);
    CHECK(std::abs(q.b(l) - oracle::sin_coeff(fn, l, Mq)) < 1e-12);
  }
}

TEST_CASE("dealias factor 3/2 reproduces quadratic products exactly up to N") {
  std::mt19937_64 rng(7);
  const std::size_t N = 12;
  SolverGrid grid{N, 2 * N + 1, 1.5};
  TrigSeries f = random_series(N, 0.0, rng); // no decay: worst case for aliasing
  TrigSeries g = random_series(N, 0.0, rng);
  auto p = product(f, g, grid);

  oracle::TrigCoeffs fc{f.mean, f.cos_coeffs, f.sin_coeffs};
  oracle::TrigCoeffs gc{g.mean, g.cos_coeffs, g.sin_coeffs};
  auto exact = oracle::convolve(fc, gc);
  CHECK(std::abs(p.mean - exact.mean) < 1e-13);
  for (std::size_t l = 1; l <= N; ++l) {
    CHECK(std::abs(p.a(l) - exact.a[l - 1]) < 1e-13);
    CHECK(std::abs(p.b(l) - exact.b[l - 1]) < 1e-13);
  }
}

TEST_CASE("norms in the orthonormal basis") {
  // phi_{0,0} has a single unit coefficient: norm 1 at every s
  TrigSeries f00 = TrigSeries::constant(4, 1.0 / std::sqrt(2.0 * pi));
  for (double s : {0.0, 1.0, 2.5}) CHECK(sobolev_norm(f00, s) == doctest::Approx(1.0).epsilon(1e-14));

  // cos(theta) at s=0: |f_{1,1}|^2 = pi, weight (1 + 1) -> sqrt(2 pi)
  auto c1 = TrigSeries::harmonic_cos(4, 1, 1.0);
  CHECK(sobolev_norm(c1, 0.0) == doctest::Approx(std::sqrt(2.0 * pi)).epsilon(1e-14));

  // cos(2 theta), weight e^{4} (1 + 4) on |f|^2 = pi
  auto c2 = TrigSeries::harmonic_cos(4, 2, 1.0);
  CHECK(analytic_norm(c2, 1.0, 1.0) ==
        doctest::Approx(std::sqrt(std::exp(4.0) * 5.0 * pi)).epsilon(1e-14));

  CHECK_THROWS_AS(analytic_norm(c2, -0.5, 1.0), ValidationError);
}

TEST_CASE("Parseval: grid quadrature of f*g equals the coefficient inner product") {
  std::mt19937_64 rng(11);
  const std::size_t N = 20;
  TrigSeries f = random_series(N, 0.05, rng);
  TrigSeries g = random_series(N, 0.05, rng);
  const double coeff = inner_product(f, g);
  const double quad = oracle::integrate(
      [&](double t) { return evaluate(f, t) * evaluate(g, t); }, 4 * N + 3);
  CHECK(std::abs(coeff - quad) < 1e-13 * std::max(1.0, std::abs(coeff)));
}

TEST_CASE("translation acts by exact per-mode rotation") {
  auto c1 = TrigSeries::harmonic_cos(4, 1, 1.0);
  auto t = translate(c1, pi);
  CHECK(t.a(1) == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(std::abs(t.b(1)) < 1e-15);

  auto k = TrigSeries::constant(4, 3.25);
  auto tk = translate(k, 1.7);
  CHECK(tk.mean == 3.25);

  auto s1 = TrigSeries::harmonic_sin(4, 1, 1.0);
  auto ts = translate(s1, pi / 2.0);
  CHECK(ts.a(1) == doctest::Approx(1.0).epsilon(1e-15)); // sin(t + pi/2) = cos t
  CHECK(std::abs(ts.b(1)) < 1e-15);

  // pointwise meaning: (T_alpha f)(theta) = f(theta + alpha)
  std::mt19937_64 rng(3);
  TrigSeries f = random_series(6, 0.2, rng);
  const double alpha = 0.61, theta = 1.13;
  CHECK(evaluate(translate(f, alpha), theta) ==
        doctest::Approx(evaluate(f, theta + alpha)).epsilon(1e-13));
}

TEST_CASE("differentiate commutes with translate exactly in coefficients") {
  std::mt19937_64 rng(5);
  TrigSeries f = random_series(10, 0.1, rng);
  const double alpha = 0.37;
  auto lhs = differentiate(translate(f, alpha));
  auto rhs = translate(differentiate(f), alpha);
  for (std::size_t l = 1; l <= 10; ++l) {
    CHECK(lhs.a(l) == doctest::Approx(rhs.a(l)).epsilon(1e-15));
    CHECK(lhs.b(l) == doctest::Approx(rhs.b(l)).epsilon(1e-15));
  }
}

TEST_CASE("reversibility operator") {
  // (cos, sin) is a fixed point
  DropState u{TrigSeries::harmonic_cos(4, 1, 1.0), TrigSeries::harmonic_sin(4, 1, 1.0)};
  auto ru = reverse(u);
  CHECK(l2_norm(DropState{ru.xi - u.xi, ru.chi - u.chi}) < 1e-16);

  // involution on a random state
  std::mt19937_64 rng(9);
  DropState v{random_series(8, 0.1, rng), random_series(8, 0.1, rng)};
  auto rrv = reverse(reverse(v));
  CHECK(l2_norm(DropState{rrv.xi - v.xi, rrv.chi - v.chi}) < 1e-16);

  // the fixed-point set is exactly {xi even, chi odd}
  DropState w = v;
  for (auto& x : w.xi.sin_coeffs) x = 0.0;
  for (auto& x : w.chi.cos_coeffs) x = 0.0;
  w.chi.mean = 0.0;
  auto rw = reverse(w);
  CHECK(l2_norm(DropState{rw.xi - w.xi, rw.chi - w.chi}) < 1e-16);
  CHECK(l2_norm(DropState{reverse(v).xi - v.xi, reverse(v).chi - v.chi}) > 1e-3);
}

TEST_CASE("c-fold projection") {
  auto f = TrigSeries::harmonic_cos(4, 1, 1.0) + TrigSeries::harmonic_cos(4, 2, 1.0);
  auto p = c_fold_project(f, 2);
  CHECK(p.a(1) == 0.0);
  CHECK(p.a(2) == 1.0);

  auto g = TrigSeries::constant(6, 2.0) + TrigSeries::harmonic_sin(6, 3, 0.5) +
           TrigSeries::harmonic_sin(6, 4, 0.25);
  auto q = c_fold_project(g, 3);
  CHECK(q.mean == 2.0); // mean kept
  CHECK(q.b(3) == 0.5);
  CHECK(q.b(4) == 0.0);

  CHECK_THROWS_AS(c_fold_project(f, 1), ValidationError);
}

TEST_SUITE_END();
