#pragma once

#include "dropwave/trig_series.hpp"

#include <Eigen/Dense>

#include <array>
#include <cstddef>
#include <vector>

namespace dropwave {

/// 2x2 Fourier-mode block of the linearization at the static circle, acting
/// on the coefficient pair (eta_{l,m}, beta_{l,-m}) with parity m in {+1,-1}:
///
///   [ sigma0 (l^2 - 1)    omega m l ]
///   [ omega m l           l         ]
///
/// Convention note: the off-diagonal sign is fixed by differentiating the
/// rotating-wave residual in this codebase (the finite-difference Jacobian
/// test pins it); with this sign the kernel pairs are (1, -omega m) at the
/// degenerate frequency. The determinant l (sigma0 (l^2-1) - omega^2 l) does
/// not depend on the convention, nor on m.
struct SpectralBlock {
  std::size_t ell = 0;
  int m = 1;
  std::array<std::array<double, 2>, 2> entries{};

  double det() const;
};

SpectralBlock block_matrix(std::size_t ell, int m, double omega, double sigma0);

/// Frequency at which mode ell_star becomes degenerate:
/// omega_* = sqrt(sigma0 (ell_star^2 - 1) / ell_star); zero for ell_star = 1.
double bifurcation_frequency(std::size_t ell_star, double sigma0);

/// Degenerate frequency of the c-fold restricted problem: the same formula
/// with ell_star replaced by c * ell_star.
double c_fold_frequency(unsigned c, std::size_t ell_star, double sigma0);

/// Kernel of the linearization at frequency omega, scanning modes up to
/// ell_max with the singularity threshold |det| <= 1e-10 (1 + sigma0 l^3).
/// Always contains the constant-potential direction (0, phi_{0,0}); at a
/// degenerate frequency the mode-ell_star pair joins (dimension 3).
struct KernelBasis {
  std::size_t dimension = 0;
  std::vector<DropState> generators; // L2-orthonormal
  std::vector<std::size_t> singular_modes;
};

KernelBasis kernel(double omega, double sigma0, std::size_t ell_max, const SolverGrid& grid);

/// Stacked-coefficient layout used for dense operator work:
/// [xi.mean, xi.a(1..N), xi.b(1..N), chi.mean, chi.a(1..N), chi.b(1..N)],
/// dimension 4N+2.
Eigen::VectorXd flatten(const DropState& u, std::size_t N);
DropState unflatten(const Eigen::VectorXd& v, std::size_t N);

/// Dense matrix of the linearized operator
///   L = [ -sigma0 (1 + d^2/dtheta^2)   omega d/dtheta ]
///       [ -omega d/dtheta              G(0)           ]
/// over the stacked raw-coefficient layout. Block-diagonal per mode.
Eigen::MatrixXd assemble_linearization(double omega, double sigma0, const SolverGrid& grid);

} // namespace dropwave
