#pragma once

#include "dropwave/dynamics.hpp"
#include "dropwave/trig_series.hpp"

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace dropwave {

enum class SymmetryTag { none, reversible, c_fold, both };

struct Symmetry {
  SymmetryTag tag = SymmetryTag::none;
  unsigned c = 0; // fold count, used by c_fold and both

  static Symmetry none() { return {SymmetryTag::none, 0}; }
  static Symmetry reversible() { return {SymmetryTag::reversible, 0}; }
  static Symmetry c_fold(unsigned c) { return {SymmetryTag::c_fold, c}; }
  static Symmetry both(unsigned c) { return {SymmetryTag::both, c}; }
  bool has_reversible() const {
    return tag == SymmetryTag::reversible || tag == SymmetryTag::both;
  }
  bool has_c_fold() const { return tag == SymmetryTag::c_fold || tag == SymmetryTag::both; }
};

/// A solved rotating-wave profile: xi(t,theta) = eta(theta + omega t),
/// chi(t,theta) = beta(theta + omega t).
struct RotatingWave {
  double omega = 0.0;
  TrigSeries eta;
  TrigSeries beta;
  double a = 0.0;             // angular momentum of (eta, beta)
  double residual_norm = 0.0; // L2 x L2 norm of the profile equations
  Symmetry symmetry;
};

/// Profile equations as the constrained-gradient form F = grad H - omega grad I:
///   F1 = dH/dxi + omega e^{2 eta} beta'
///   F2 = G(eta) beta - omega e^{2 eta} eta'
/// F2 has zero mean (to spectral accuracy, since e^{2 eta} eta' is an exact
/// theta-derivative); both components vanish on rotating waves.
FieldPair rotating_residual(double omega, const TrigSeries& eta, const TrigSeries& beta,
                            const PhysParams& p, const SolverGrid& grid);

/// Transport form of the same equations, F0 = (omega eta' - e^{-2eta} G(eta)beta,
/// omega beta' - [chi-equation right-hand side]). Related to the gradient form
/// by the exact rearrangements F2 = -e^{2eta} F0_1 and F1 = e^{2eta} F0_2.
FieldPair rotating_residual_transport(double omega, const TrigSeries& eta,
                                      const TrigSeries& beta, const PhysParams& p,
                                      const SolverGrid& grid);

struct NewtonOptions {
  double tol = 1e-11;      // max-of: augmented residual, constraint defects
  int max_iter = 25;
  double fd_step = 1e-7;   // forward-difference step for the F-Jacobian
  std::size_t phase_mode = 0; // mode whose eta sin-coefficient is pinned to 0; 0 = none
};

struct NewtonReport {
  int iterations = 0;
  std::vector<double> residual_history;
};

/// Solve F(omega; eta, beta) = 0 subject to I(eta,beta) = a_target, mean of
/// beta = 0 and (for symmetry-free solves) the phase pin. The unknowns are
/// (eta, beta, omega); symmetry restrictions shrink the unknown set to the
/// invariant subspace. Throws SolverError when out of iterations.
RotatingWave newton_solve(const RotatingWave& guess, double a_target, const PhysParams& p,
                          const SolverGrid& grid, const NewtonOptions& opts = {},
                          NewtonReport* report = nullptr);

/// Kernel-direction first guess at angular momentum a: the active mode is
/// ell = (c-fold ? c : 1) * ell_star, eta = eps cos(ell theta),
/// beta = -omega_* eps sin(ell theta), eps = sqrt(a / (pi omega_* ell)).
RotatingWave seed_wave(std::size_t ell_star, double sigma0, double a, Symmetry sym,
                       const SolverGrid& grid);

/// Scaling constants fitted along a branch. The branch estimate bounds
/// |omega_a - omega_*| + ||eta_a||_{H^{s+3/2}} + ||beta_a||_{H^{s+1}} by
/// C sqrt(a); the norm terms are sharp while the frequency correction is
/// quadratic in the amplitude, so the bound sum carries the stable constant
/// and the frequency part is certified through its own fitted exponent
/// (>= 1/2 means the sqrt-a bound holds with a uniform C). Norms use the
/// default regularity index s = 2.
struct BranchFit {
  double amp_exponent = 0.0;   // fitted p in ||eta_a||_{L2} ~ a^p
  double c_amp = 0.0;          // median ||eta_a||_{L2} / sqrt(a)
  double c_omega = 0.0;        // median |omega_a - omega_*| / sqrt(a)
  double omega_exponent = 0.0; // fitted q in |omega_a - omega_*| ~ a^q
  double c_bound = 0.0;        // median (bound sum) / sqrt(a)
  double c_bound_spread = 0.0; // (max-min)/median of the bound-sum ratio
};

struct BranchParams {
  std::size_t ell_star = 2;
  double sigma0 = 1.0;
  Symmetry symmetry;
};

struct Branch {
  BranchParams params;
  std::vector<RotatingWave> points; // ordered by increasing a
  BranchFit fit;
};

/// Continue the branch over the given increasing angular momenta, seeding the
/// first point from the kernel prediction and warm-starting the rest.
/// A failed point aborts with SolverError after reporting the last good one.
Branch continue_branch(std::size_t ell_star, double sigma0, const std::vector<double>& a_values,
                       Symmetry sym, const SolverGrid& grid, const NewtonOptions& opts = {});

/// Geometric ladder of angular momenta for branch runs.
std::vector<double> geometric_ladder(double a_min, double a_max, std::size_t points);

/// Best rotation aligning u onto ref: alpha minimizing ||T_alpha u - ref||
/// over the torus, found from the exact trigonometric form of the overlap.
/// Returns (alpha, T_alpha u).
std::pair<double, RotatingWave> align_phase(const RotatingWave& u, const RotatingWave& ref);

/// Integrate the profile for one pattern period 2 pi / (ell_star |omega|),
/// after which an ell_star-fold profile returns to itself (or for `horizon`
/// when omega is tiny), and return the max over recorded times of the
/// L2 x L2 distance between the evolved state and the rigidly rotated profile.
double validate_rotation(const RotatingWave& w, std::size_t ell_star, const PhysParams& p,
                         const SolverGrid& grid, double dt, double horizon = 1.0);

} // namespace dropwave
