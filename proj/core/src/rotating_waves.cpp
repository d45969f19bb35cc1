#include "dropwave/rotating_waves.hpp"

#include "dropwave/dno.hpp"
#include "dropwave/errors.hpp"
#include "dropwave/evolution.hpp"
#include "dropwave/linear_analysis.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace dropwave {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

// Active-coordinate bookkeeping for the constrained Newton system. Columns
// index the flatten() layout; the frequency unknown is appended last by the
// solver. Rows of the profile equations use the same layout through
// flatten({F1, F2}); the mean row of F2 is always dropped because that
// component integrates to zero identically.
struct Layout {
  std::vector<Eigen::Index> cols;
  std::vector<Eigen::Index> frows;
  bool beta_mean_row = false;
  std::size_t phase = 0; // eta sin-mode pinned to zero; 0 = no pin

  std::size_t nrows() const {
    return frows.size() + (beta_mean_row ? 1 : 0) + 1 + (phase ? 1 : 0);
  }
};

Layout make_layout(std::size_t N, Symmetry sym, std::size_t phase_mode) {
  const std::size_t fold = sym.has_c_fold() ? sym.c : 1;
  if (fold == 0) throw ValidationError("newton_solve: fold count must be >= 2");
  if (fold > N) throw ValidationError("newton_solve: fold count exceeds the truncation");
  const bool rev = sym.has_reversible();

  const auto xa = [](std::size_t l) { return Eigen::Index(l); };
  const auto xb = [N](std::size_t l) { return Eigen::Index(N + l); };
  const auto ca = [N](std::size_t l) { return Eigen::Index(2 * N + 1 + l); };
  const auto cb = [N](std::size_t l) { return Eigen::Index(3 * N + 1 + l); };

  Layout lay;
  lay.cols.push_back(0); // elevation mean
  lay.frows.push_back(0);
  if (!rev) {
    lay.cols.push_back(Eigen::Index(2 * N + 1)); // potential mean, gauge-fixed
    lay.beta_mean_row = true;
  }
  for (std::size_t l = fold; l <= N; l += fold) {
    if (rev) {
      // reversible profiles: even elevation, odd potential
      lay.cols.push_back(xa(l));
      lay.cols.push_back(cb(l));
      lay.frows.push_back(xa(l));
      lay.frows.push_back(cb(l));
    } else {
      lay.cols.push_back(xa(l));
      lay.cols.push_back(xb(l));
      lay.cols.push_back(ca(l));
      lay.cols.push_back(cb(l));
      lay.frows.push_back(xa(l));
      lay.frows.push_back(xb(l));
      lay.frows.push_back(ca(l));
      lay.frows.push_back(cb(l));
    }
  }

  if (!rev && phase_mode != 0) {
    if (phase_mode > N || phase_mode % fold != 0)
      throw ValidationError("newton_solve: phase pin must be an active mode");
    lay.phase = phase_mode;
  }
  return lay;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

} // namespace

FieldPair rotating_residual(double omega, const TrigSeries& eta, const TrigSeries& beta,
                            const PhysParams& p, const SolverGrid& grid) {
  DropState u{eta, beta};
  auto gH = grad_hamiltonian(u, p, grid);
  auto gI = grad_angular_momentum(u, grid);
  return {gH.first - omega * gI.first, gH.second - omega * gI.second};
}

FieldPair rotating_residual_transport(double omega, const TrigSeries& eta,
                                      const TrigSeries& beta, const PhysParams& p,
                                      const SolverGrid& grid) {
  auto f = rhs({eta, beta}, p, grid);
  return {omega * differentiate(eta) - f.first, omega * differentiate(beta) - f.second};
}

RotatingWave newton_solve(const RotatingWave& guess, double a_target, const PhysParams& p,
                          const SolverGrid& grid, const NewtonOptions& opts,
                          NewtonReport* report) {
  const std::size_t N = grid.N;
  const Layout lay = make_layout(N, guess.symmetry, opts.phase_mode);
  const std::size_t ncols = lay.cols.size() + 1; // state block plus frequency
  const std::size_t nrows = lay.nrows();

  // state vector: active coordinates, frequency last
  Eigen::VectorXd x(ncols);
  {
    Eigen::VectorXd full = flatten({guess.eta, guess.beta}, N);
    for (std::size_t j = 0; j < lay.cols.size(); ++j) x(Eigen::Index(j)) = full(lay.cols[j]);
    x(Eigen::Index(ncols - 1)) = guess.omega;
  }

  auto scatter = [&](const Eigen::VectorXd& xs) {
    Eigen::VectorXd full = Eigen::VectorXd::Zero(4 * N + 2);
    for (std::size_t j = 0; j < lay.cols.size(); ++j) full(lay.cols[j]) = xs(Eigen::Index(j));
    return unflatten(full, N);
  };

  struct Eval {
    Eigen::VectorXd R;
    DropState u;
  };
  auto eval = [&](const Eigen::VectorXd& xs) -> Eval {
    DropState u = scatter(xs);
    const double w = xs(Eigen::Index(ncols - 1));
    auto F = rotating_residual(w, u.xi, u.chi, p, grid);
    Eigen::VectorXd fc = flatten({F.first, F.second}, N);
    Eigen::VectorXd R(nrows);
    Eigen::Index r = 0;
    for (Eigen::Index row : lay.frows) R(r++) = fc(row);
    if (lay.beta_mean_row) R(r++) = u.chi.mean;
    R(r++) = angular_momentum(u, grid) - a_target;
    if (lay.phase) R(r++) = u.xi.b(lay.phase);
    return {std::move(R), std::move(u)};
  };

  NewtonReport rep;
  for (int it = 0; it <= opts.max_iter; ++it) {
    Eval cur = eval(x);
    const double rmax = cur.R.cwiseAbs().maxCoeff();
    rep.residual_history.push_back(rmax);
    rep.iterations = it;

    if (rmax <= opts.tol) {
      auto F = rotating_residual(x(Eigen::Index(ncols - 1)), cur.u.xi, cur.u.chi, p, grid);
      RotatingWave wave;
      wave.omega = x(Eigen::Index(ncols - 1));
      wave.eta = std::move(cur.u.xi);
      wave.beta = std::move(cur.u.chi);
      wave.a = angular_momentum({wave.eta, wave.beta}, grid);
      wave.residual_norm = std::hypot(l2_norm(F.first), l2_norm(F.second));
      wave.symmetry = guess.symmetry;
      if (report) *report = std::move(rep);
      return wave;
    }
    if (it == opts.max_iter) break;

    Eigen::MatrixXd J(nrows, ncols);
    for (std::size_t j = 0; j < lay.cols.size(); ++j) {
      const double h = opts.fd_step * (1.0 + std::abs(x(Eigen::Index(j))));
      Eigen::VectorXd xp = x;
      xp(Eigen::Index(j)) += h;
      J.col(Eigen::Index(j)) = (eval(xp).R - cur.R) / h;
    }
    // frequency column: dF/domega = -grad I exactly; constraints carry none
    {
      auto gI = grad_angular_momentum(cur.u, grid);
      Eigen::VectorXd gc = flatten({gI.first, gI.second}, N);
      Eigen::VectorXd col = Eigen::VectorXd::Zero(nrows);
      Eigen::Index r = 0;
      for (Eigen::Index row : lay.frows) col(r++) = -gc(row);
      J.col(Eigen::Index(ncols - 1)) = col;
    }

    Eigen::VectorXd delta = J.colPivHouseholderQr().solve(-cur.R);
    x += delta;
  }

  throw SolverError("newton_solve: no convergence after " + std::to_string(opts.max_iter) +
                    " iterations (last residual " +
                    std::to_string(rep.residual_history.back()) + ")");
}

RotatingWave seed_wave(std::size_t ell_star, double sigma0, double a, Symmetry sym,
                       const SolverGrid& grid) {
  if (!(a > 0.0)) throw ValidationError("seed_wave: angular momentum must be positive");
  const std::size_t fold = sym.has_c_fold() ? sym.c : 1;
  if (fold == 0) throw ValidationError("seed_wave: fold count must be >= 2");
  const std::size_t ell = fold * ell_star;
  if (ell == 0 || ell > grid.N)
    throw ValidationError("seed_wave: active mode outside the truncation");
  const double omega0 = bifurcation_frequency(ell, sigma0);
  if (omega0 == 0.0)
    throw ValidationError("seed_wave: mode 1 has no rotating branch without a fold");

  const double eps = std::sqrt(a / (std::numbers::pi * omega0 * double(ell)));
  RotatingWave w;
  w.omega = omega0;
  w.eta = TrigSeries::harmonic_cos(grid.N, ell, eps);
  w.beta = TrigSeries::harmonic_sin(grid.N, ell, -omega0 * eps);
  w.symmetry = sym;
  w.a = angular_momentum({w.eta, w.beta}, grid);
  PhysParams p{sigma0};
  auto F = rotating_residual(w.omega, w.eta, w.beta, p, grid);
  w.residual_norm = std::hypot(l2_norm(F.first), l2_norm(F.second));
  return w;
}

std::vector<double> geometric_ladder(double a_min, double a_max, std::size_t points) {
  if (!(a_min > 0.0) || !(a_max >= a_min))
    throw ValidationError("geometric_ladder: need 0 < a_min <= a_max");
  if (points == 0) throw ValidationError("geometric_ladder: need at least one point");
  std::vector<double> out;
  out.reserve(points);
  if (points == 1) {
    out.push_back(a_min);
    return out;
  }
  const double ratio = std::pow(a_max / a_min, 1.0 / double(points - 1));
  double a = a_min;
  for (std::size_t k = 0; k + 1 < points; ++k) {
    out.push_back(a);
    a *= ratio;
  }
  out.push_back(a_max);
  return out;
}

Branch continue_branch(std::size_t ell_star, double sigma0, const std::vector<double>& a_values,
                       Symmetry sym, const SolverGrid& grid, const NewtonOptions& opts) {
  if (a_values.empty()) throw ValidationError("continue_branch: no angular momenta given");
  for (std::size_t k = 0; k < a_values.size(); ++k) {
    if (!(a_values[k] > 0.0) || (k > 0 && a_values[k] <= a_values[k - 1]))
      throw ValidationError("continue_branch: angular momenta must be positive and increasing");
  }

  const std::size_t fold = sym.has_c_fold() ? sym.c : 1;
  const std::size_t ell = fold * ell_star;
  const double omega0 = bifurcation_frequency(ell, sigma0);
  PhysParams p{sigma0};

  NewtonOptions local = opts;
  if (!sym.has_reversible() && local.phase_mode == 0) local.phase_mode = ell;

  Branch branch;
  branch.params = {ell_star, sigma0, sym};

  RotatingWave guess = seed_wave(ell_star, sigma0, a_values.front(), sym, grid);
  for (std::size_t k = 0; k < a_values.size(); ++k) {
    if (k > 0) {
      // leading-order predictor: amplitudes scale like sqrt(a)
      const double s = std::sqrt(a_values[k] / a_values[k - 1]);
      guess = branch.points.back();
      guess.eta = s * guess.eta;
      guess.beta = s * guess.beta;
    }
    try {
      branch.points.push_back(newton_solve(guess, a_values[k], p, grid, local));
    } catch (const SolverError& e) {
      const std::string got =
          branch.points.empty()
              ? "no converged points"
              : "last converged a = " + std::to_string(branch.points.back().a);
      throw SolverError(std::string(e.what()) + " [continuation aborted at a = " +
                        std::to_string(a_values[k]) + ", " + got + "]");
    }
  }

  // power-law fits ||eta|| ~ C a^p and |omega - omega_*| ~ K a^q, plus the
  // branch-estimate constant (|omega-omega_*| + H^{7/2} + H^3 norms) / sqrt(a)
  const std::size_t n = branch.points.size();
  std::vector<double> camp, comega, cbound;
  double sx = 0.0, sy = 0.0, sw = 0.0, sxx = 0.0, sxy = 0.0, sxw = 0.0;
  std::size_t nw = 0;
  for (const auto& w : branch.points) {
    const double na = l2_norm(w.eta);
    const double ra = std::sqrt(w.a);
    const double dw = std::abs(w.omega - omega0);
    camp.push_back(na / ra);
    comega.push_back(dw / ra);
    cbound.push_back((dw + sobolev_norm(w.eta, 3.5) + sobolev_norm(w.beta, 3.0)) / ra);
    const double lx = std::log(w.a);
    sx += lx;
    sy += std::log(na);
    sxx += lx * lx;
    sxy += lx * std::log(na);
    if (dw > 0.0) {
      sw += std::log(dw);
      sxw += lx * std::log(dw);
      ++nw;
    }
  }
  if (n >= 2) {
    const double nd = double(n);
    branch.fit.amp_exponent = (nd * sxy - sx * sy) / (nd * sxx - sx * sx);
  }
  if (nw == n && n >= 2) {
    const double nd = double(n);
    branch.fit.omega_exponent = (nd * sxw - sx * sw) / (nd * sxx - sx * sx);
  }
  branch.fit.c_amp = median(camp);
  branch.fit.c_omega = median(comega);
  branch.fit.c_bound = median(cbound);
  const auto [lo, hi] = std::minmax_element(cbound.begin(), cbound.end());
  branch.fit.c_bound_spread = branch.fit.c_bound > 0.0 ? (*hi - *lo) / branch.fit.c_bound : 0.0;
  return branch;
}

std::pair<double, RotatingWave> align_phase(const RotatingWave& u, const RotatingWave& ref) {
  // overlap <T_alpha u, ref> as a trig polynomial in alpha, summed over both
  // profile components
  const std::size_t L = std::max(std::max(u.eta.order(), u.beta.order()),
                                 std::max(ref.eta.order(), ref.beta.order()));
  std::vector<double> P(L + 1, 0.0), Q(L + 1, 0.0);
  auto accumulate = [&](const TrigSeries& f, const TrigSeries& g) {
    for (std::size_t l = 1; l <= L; ++l) {
      P[l] += std::numbers::pi * (f.a(l) * g.a(l) + f.b(l) * g.b(l));
      Q[l] += std::numbers::pi * (f.b(l) * g.a(l) - f.a(l) * g.b(l));
    }
  };
  accumulate(u.eta, ref.eta);
  accumulate(u.beta, ref.beta);

  auto overlap = [&](double alpha) {
    double v = 0.0;
    for (std::size_t l = 1; l <= L; ++l)
      v += P[l] * std::cos(double(l) * alpha) + Q[l] * std::sin(double(l) * alpha);
    return v;
  };
  auto d1 = [&](double alpha) {
    double v = 0.0;
    for (std::size_t l = 1; l <= L; ++l)
      v += double(l) * (Q[l] * std::cos(double(l) * alpha) - P[l] * std::sin(double(l) * alpha));
    return v;
  };
  auto d2 = [&](double alpha) {
    double v = 0.0;
    for (std::size_t l = 1; l <= L; ++l)
      v -= double(l) * double(l) *
           (P[l] * std::cos(double(l) * alpha) + Q[l] * std::sin(double(l) * alpha));
    return v;
  };

  const std::size_t scan = 4096;
  double best = 0.0, best_val = overlap(0.0);
  for (std::size_t j = 1; j < scan; ++j) {
    const double alpha = two_pi * double(j) / double(scan);
    const double v = overlap(alpha);
    if (v > best_val) {
      best_val = v;
      best = alpha;
    }
  }
  for (int it = 0; it < 8; ++it) {
    const double curv = d2(best);
    if (!(curv < 0.0)) break;
    best -= d1(best) / curv;
  }
  best = std::remainder(best, two_pi);

  RotatingWave aligned = u;
  aligned.eta = translate(u.eta, best);
  aligned.beta = translate(u.beta, best);
  return {best, std::move(aligned)};
}

double validate_rotation(const RotatingWave& w, std::size_t ell_star, const PhysParams& p,
                         const SolverGrid& grid, double dt, double horizon) {
  if (ell_star == 0) throw ValidationError("validate_rotation: pattern fold must be >= 1");
  const double T =
      std::abs(w.omega) > 1e-8 ? two_pi / (double(ell_star) * std::abs(w.omega)) : horizon;
  const std::size_t nsteps = std::size_t(std::ceil(T / dt));
  EvolveOptions opts;
  opts.record_every = std::max<std::size_t>(1, nsteps / 128);
  auto traj = simulate({w.eta, w.beta}, T, dt, p, grid, opts);

  double worst = 0.0;
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    const double alpha = w.omega * traj.times[i];
    const double d = std::hypot(l2_norm(traj.states[i].xi - translate(w.eta, alpha)),
                                l2_norm(traj.states[i].chi - translate(w.beta, alpha)));
    worst = std::max(worst, d);
  }
  return worst;
}

} // namespace dropwave
