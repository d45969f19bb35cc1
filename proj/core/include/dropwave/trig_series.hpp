#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <vector>

namespace dropwave {

/// Real trigonometric polynomial on the torus T^1 = R / 2piZ:
///
///   f(theta) = mean + sum_{l=1..N} cos_coeffs[l-1]*cos(l theta)
///                   + sum_{l=1..N} sin_coeffs[l-1]*sin(l theta)
///
/// This is the universal function representation of the library. Raw cos/sin
/// coefficients are stored; norms convert to the L2-orthonormal basis
/// phi_{0,0} = 1/sqrt(2pi), phi_{l,1} = cos(l theta)/sqrt(pi),
/// phi_{l,-1} = sin(l theta)/sqrt(pi) on demand.
struct TrigSeries {
  double mean = 0.0;
  std::vector<double> cos_coeffs; // index k holds the coefficient of cos((k+1) theta)
  std::vector<double> sin_coeffs; // index k holds the coefficient of sin((k+1) theta)

  TrigSeries() = default;
  explicit TrigSeries(std::size_t order) : cos_coeffs(order, 0.0), sin_coeffs(order, 0.0) {}

  std::size_t order() const { return cos_coeffs.size(); }

  /// 1-based accessors for mode l in [1, order()]; out-of-range reads give 0.
  double a(std::size_t l) const { return (l >= 1 && l <= order()) ? cos_coeffs[l - 1] : 0.0; }
  double b(std::size_t l) const { return (l >= 1 && l <= order()) ? sin_coeffs[l - 1] : 0.0; }
  void set_a(std::size_t l, double v);
  void set_b(std::size_t l, double v);

  /// Grow (never shrink) to hold modes up to n.
  void ensure_order(std::size_t n);

  /// Single harmonic amp*cos(l theta) or amp*sin(l theta) at truncation n.
  static TrigSeries harmonic_cos(std::size_t n, std::size_t l, double amp);
  static TrigSeries harmonic_sin(std::size_t n, std::size_t l, double amp);
  static TrigSeries constant(std::size_t n, double value);
};

TrigSeries operator+(const TrigSeries& f, const TrigSeries& g);
TrigSeries operator-(const TrigSeries& f, const TrigSeries& g);
TrigSeries operator*(double c, const TrigSeries& f);

/// Uniform collocation/quadrature layout shared by every spectral operation.
/// M points theta_j = 2pi j / M resolve trig polynomials of degree (M-1)/2;
/// nonlinear pointwise maps run on the oversampled grid of dealias_points().
struct SolverGrid {
  std::size_t N = 0;           // truncation order of the working series
  std::size_t M = 0;           // base collocation points, M >= 2N+1
  double dealias_factor = 2.0; // oversampling for nonlinear maps, >= 1

  static SolverGrid standard(std::size_t N, double dealias_factor = 2.0);
  std::size_t dealias_points() const;
};

/// (xi, chi) pair: log-radius elevation and boundary velocity potential.
struct DropState {
  TrigSeries xi;
  TrigSeries chi;
};

// ---- transforms ------------------------------------------------------------

/// Pointwise evaluation of the series.
double evaluate(const TrigSeries& f, double theta);

/// Values at the M uniform nodes theta_j = 2pi j/M.
std::vector<double> sample(const TrigSeries& f, std::size_t M);

/// Quadrature transform of M uniform samples to a series of order N.
/// Exact (to roundoff) for band-limited data of degree <= (M-1)/2 when
/// M >= 2N+1; this is the inverse of sample() in that regime.
TrigSeries analyze(std::span<const double> samples, std::size_t N);

// ---- calculus --------------------------------------------------------------

/// d/dtheta, exact in coefficient space.
TrigSeries differentiate(const TrigSeries& f);

/// Pointwise map applied on the dealiased grid and truncated back to grid.N:
/// samples every input series, calls fn with the per-point input values
/// (inputs.size() of them), transforms the result back. Throws NumericsError
/// if fn produces a non-finite value.
using PointFn = std::function<double(const double*)>;
TrigSeries nonlinear_map(std::span<const TrigSeries* const> inputs, const PointFn& fn,
                         const SolverGrid& grid);
TrigSeries nonlinear_map(std::initializer_list<const TrigSeries*> inputs, const PointFn& fn,
                         const SolverGrid& grid);

/// Dealiased product of two series (convenience wrapper over nonlinear_map).
TrigSeries product(const TrigSeries& f, const TrigSeries& g, const SolverGrid& grid);

/// Spectrally exact integral over T^1 of a single series: 2pi * mean.
double integral(const TrigSeries& f);

// ---- inner products and norms ----------------------------------------------

/// L2(T^1) inner product, evaluated exactly from coefficients.
double inner_product(const TrigSeries& f, const TrigSeries& g);
double l2_norm(const TrigSeries& f);

/// L2 x L2 inner product and norm of state pairs.
double inner_product(const DropState& u, const DropState& v);
double l2_norm(const DropState& u);

/// Sobolev norm: sum over orthonormal-basis coefficients of
/// (1 + l^{2s}) |f_{l,m}|^2, square-rooted. The mean mode carries weight 1
/// for every s (so the norm of phi_{0,0} is 1 at all s).
double sobolev_norm(const TrigSeries& f, double s);

/// Analytic-class norm: the Sobolev sum with the extra weight e^{2 weight_s l}.
/// Diagnostic only; no membership claims are attached to it.
double analytic_norm(const TrigSeries& f, double weight_s, double s);

// ---- symmetry group actions ------------------------------------------------

/// Translation (T_alpha f)(theta) = f(theta + alpha); exact per-mode rotation.
TrigSeries translate(const TrigSeries& f, double alpha);
DropState translate(const DropState& u, double alpha);

/// Reflection (iota f)(theta) = f(-theta).
TrigSeries reflect(const TrigSeries& f);

/// Reversibility R(xi, chi)(theta) = (xi(-theta), -chi(-theta)).
/// Fixed points have xi even and chi odd.
DropState reverse(const DropState& u);

/// Shift of the potential by a constant: (xi, chi) -> (xi, chi + amount).
DropState shift_potential(const DropState& u, double amount);

/// Keep only modes whose index is a multiple of c (mean kept); c >= 2.
TrigSeries c_fold_project(const TrigSeries& f, unsigned c);
DropState c_fold_project(const DropState& u, unsigned c);

// ---- deterministic random data (property tests, verify command) -------------

/// Uniform double in [-1, 1) from raw mt19937_64 draws; bit-reproducible
/// across platforms (no std::uniform_real_distribution involved).
double uniform_pm1(std::mt19937_64& rng);

/// Random series with coefficients of size ~ e^{-ell_decay * l}, then no
/// normalization; callers rescale to the norm they need.
TrigSeries random_series(std::size_t N, double ell_decay, std::mt19937_64& rng);

} // namespace dropwave
