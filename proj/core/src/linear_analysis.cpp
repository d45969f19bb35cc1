#include "dropwave/linear_analysis.hpp"

#include "dropwave/errors.hpp"

#include <cmath>
#include <numbers>

namespace dropwave {

namespace {

// singularity threshold for a mode-l block determinant
double det_threshold(double sigma0, std::size_t ell) {
  const double ld = double(ell);
  return 1e-10 * (1.0 + sigma0 * ld * ld * ld);
}

} // namespace

double SpectralBlock::det() const {
  return entries[0][0] * entries[1][1] - entries[0][1] * entries[1][0];
}

SpectralBlock block_matrix(std::size_t ell, int m, double omega, double sigma0) {
  if (ell == 0) throw ValidationError("block_matrix: mode index must be >= 1");
  if (m != 1 && m != -1) throw ValidationError("block_matrix: parity must be +1 or -1");
  const double ld = double(ell);
  SpectralBlock blk;
  blk.ell = ell;
  blk.m = m;
  blk.entries[0][0] = sigma0 * (ld * ld - 1.0);
  blk.entries[0][1] = omega * double(m) * ld;
  blk.entries[1][0] = omega * double(m) * ld;
  blk.entries[1][1] = ld;
  return blk;
}

double bifurcation_frequency(std::size_t ell_star, double sigma0) {
  if (ell_star == 0) throw ValidationError("bifurcation_frequency: mode index must be >= 1");
  const double ld = double(ell_star);
  return std::sqrt(sigma0 * (ld * ld - 1.0) / ld);
}

double c_fold_frequency(unsigned c, std::size_t ell_star, double sigma0) {
  if (c == 0) throw ValidationError("c_fold_frequency: fold count must be >= 1");
  return bifurcation_frequency(std::size_t(c) * ell_star, sigma0);
}

KernelBasis kernel(double omega, double sigma0, std::size_t ell_max, const SolverGrid& grid) {
  const std::size_t N = grid.N;
  if (ell_max > N) throw ValidationError("kernel: scan range exceeds the grid truncation");

  KernelBasis basis;

  // the constant-potential direction is in the kernel at every frequency
  DropState constant{TrigSeries(N), TrigSeries::constant(N, 1.0 / std::sqrt(2.0 * std::numbers::pi))};
  basis.generators.push_back(std::move(constant));

  for (std::size_t ell = 1; ell <= ell_max; ++ell) {
    for (int m : {1, -1}) {
      const SpectralBlock blk = block_matrix(ell, m, omega, sigma0);
      if (std::abs(blk.det()) > det_threshold(sigma0, ell)) continue;
      basis.singular_modes.push_back(ell);

      // null vector of the symmetric 2x2 block: rows are (p q) and (q r),
      // so both (q, -p) and (r, -q) annihilate it; take the better scaled one
      const double p = blk.entries[0][0];
      const double q = blk.entries[0][1];
      const double r = blk.entries[1][1];
      double v0 = q, v1 = -p;
      if (std::hypot(r, q) > std::hypot(q, p)) {
        v0 = r;
        v1 = -q;
      }
      const double scale = 1.0 / (std::sqrt(std::numbers::pi) * std::hypot(v0, v1));
      v0 *= scale;
      v1 *= scale;

      // parity +1 couples the eta cosine to the beta sine and vice versa
      DropState g{TrigSeries(N), TrigSeries(N)};
      if (m == 1) {
        g.xi.set_a(ell, v0);
        g.chi.set_b(ell, v1);
      } else {
        g.xi.set_b(ell, v0);
        g.chi.set_a(ell, v1);
      }
      basis.generators.push_back(std::move(g));
    }
  }

  basis.dimension = basis.generators.size();
  return basis;
}

Eigen::VectorXd flatten(const DropState& u, std::size_t N) {
  Eigen::VectorXd v(4 * N + 2);
  v(0) = u.xi.mean;
  for (std::size_t l = 1; l <= N; ++l) {
    v(l) = u.xi.a(l);
    v(N + l) = u.xi.b(l);
  }
  v(2 * N + 1) = u.chi.mean;
  for (std::size_t l = 1; l <= N; ++l) {
    v(2 * N + 1 + l) = u.chi.a(l);
    v(3 * N + 1 + l) = u.chi.b(l);
  }
  return v;
}

DropState unflatten(const Eigen::VectorXd& v, std::size_t N) {
  if (v.size() != Eigen::Index(4 * N + 2))
    throw ValidationError("unflatten: vector length does not match the truncation");
  DropState u{TrigSeries(N), TrigSeries(N)};
  u.xi.mean = v(0);
  for (std::size_t l = 1; l <= N; ++l) {
    u.xi.set_a(l, v(l));
    u.xi.set_b(l, v(N + l));
  }
  u.chi.mean = v(2 * N + 1);
  for (std::size_t l = 1; l <= N; ++l) {
    u.chi.set_a(l, v(2 * N + 1 + l));
    u.chi.set_b(l, v(3 * N + 1 + l));
  }
  return u;
}

Eigen::MatrixXd assemble_linearization(double omega, double sigma0, const SolverGrid& grid) {
  const std::size_t N = grid.N;
  const std::size_t dim = 4 * N + 2;
  Eigen::MatrixXd L = Eigen::MatrixXd::Zero(dim, dim);

  // index helpers into the stacked layout
  const auto xa = [N](std::size_t l) { return Eigen::Index(l); };
  const auto xb = [N](std::size_t l) { return Eigen::Index(N + l); };
  const auto ca = [N](std::size_t l) { return Eigen::Index(2 * N + 1 + l); };
  const auto cb = [N](std::size_t l) { return Eigen::Index(3 * N + 1 + l); };

  // mean modes: -sigma0 on the elevation, nothing on the potential
  L(0, 0) = -sigma0;

  for (std::size_t l = 1; l <= N; ++l) {
    const double ld = double(l);
    const double restoring = sigma0 * (ld * ld - 1.0);

    // first row block: -sigma0 (1 + d^2) eta + omega d beta
    L(xa(l), xa(l)) = restoring;
    L(xb(l), xb(l)) = restoring;
    L(xa(l), cb(l)) = omega * ld;
    L(xb(l), ca(l)) = -omega * ld;

    // second row block: -omega d eta + G(0) beta
    L(ca(l), xb(l)) = -omega * ld;
    L(cb(l), xa(l)) = omega * ld;
    L(ca(l), ca(l)) = ld;
    L(cb(l), cb(l)) = ld;
  }
  return L;
}

} // namespace dropwave
