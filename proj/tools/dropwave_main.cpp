#include "dropwave/dno.hpp"
#include "dropwave/dynamics.hpp"
#include "dropwave/errors.hpp"
#include "dropwave/evolution.hpp"
#include "dropwave/geometry.hpp"
#include "dropwave/linear_analysis.hpp"
#include "dropwave/rotating_waves.hpp"
#include "dropwave/state_io.hpp"
#include "dropwave/trig_series.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <limits>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace dropwave;
using nlohmann::json;

namespace {

std::ostream& open_sink(const std::string& path, std::ofstream& file) {
  if (path.empty()) return std::cout;
  file.open(path);
  if (!file) throw ValidationError("cannot open output file " + path);
  return file;
}

json series_json(const TrigSeries& f) {
  return json{{"mean", f.mean}, {"cos", f.cos_coeffs}, {"sin", f.sin_coeffs}};
}

DropState random_state(std::size_t N, double size, std::mt19937_64& rng) {
  TrigSeries xi = random_series(N, 0.6, rng);
  TrigSeries chi = random_series(N, 0.6, rng);
  return {(size / sobolev_norm(xi, 3.0)) * xi, (size / sobolev_norm(chi, 3.0)) * chi};
}

// ---- dispersion --------------------------------------------------------------

int run_dispersion(double sigma0, std::size_t ell_max, double probe_omega,
                   const std::string& out) {
  std::ofstream file;
  std::ostream& os = open_sink(out, file);
  os << "ell,omega_star,det\n";
  for (std::size_t l = 1; l <= ell_max; ++l) {
    os << l << ',' << format_g17(bifurcation_frequency(l, sigma0)) << ','
       << format_g17(block_matrix(l, 1, probe_omega, sigma0).det()) << '\n';
  }
  return 0;
}

// ---- dno-check ---------------------------------------------------------------

int run_dno_check(std::size_t N, std::size_t trials, double size, std::uint64_t seed,
                  const std::string& out) {
  SolverGrid grid = SolverGrid::standard(N);
  std::mt19937_64 rng(seed);
  std::ofstream file;
  std::ostream& os = open_sink(out, file);
  os << "trial,boundary_residual,mean_defect,symmetry_defect,pass\n";

  const double tol = 1e-10;
  bool all_pass = true;
  double worst = 0.0;
  for (std::size_t trial = 0; trial < trials; ++trial) {
    TrigSeries xi = random_series(N, 0.6, rng);
    xi = (size / sobolev_norm(xi, 3.0)) * xi;
    TrigSeries chi1 = random_series(N, 0.6, rng);
    chi1 = (1.0 / sobolev_norm(chi1, 3.0)) * chi1;
    TrigSeries chi2 = random_series(N, 0.6, rng);
    chi2 = (1.0 / sobolev_norm(chi2, 3.0)) * chi2;

    double residual = std::numeric_limits<double>::infinity();
    double mean_defect = residual, sym_defect = residual;
    bool pass = false;
    try {
      residual = harmonic_extension(xi, chi1, grid).boundary_residual;
      TrigSeries g1 = dno(xi, chi1, grid);
      TrigSeries g2 = dno(xi, chi2, grid);
      mean_defect = std::abs(g1.mean);
      sym_defect = std::abs(inner_product(chi2, g1) - inner_product(chi1, g2));
      pass = residual <= tol && mean_defect <= tol && sym_defect <= tol;
    } catch (const NumericsError& e) {
      std::cerr << "dno-check: trial " << trial << ": " << e.what() << '\n';
    }
    os << trial << ',' << format_g17(residual) << ',' << format_g17(mean_defect) << ','
       << format_g17(sym_defect) << ',' << (pass ? 1 : 0) << '\n';
    worst = std::max({worst, residual, mean_defect, sym_defect});
    all_pass = all_pass && pass;
  }
  std::cerr << "dno-check: " << (all_pass ? "PASS" : "FAIL") << " (" << trials
            << " trials, worst defect " << format_g17(worst) << ", tol 1e-10)\n";
  return all_pass ? 0 : 4;
}

// ---- verify ------------------------------------------------------------------

struct CheckResult {
  std::string name;
  double value = 0.0;
  double tol = 0.0;
  bool pass() const { return value <= tol; }
};

int run_verify(std::size_t N, double sigma0, std::uint64_t seed, const std::string& out) {
  SolverGrid grid = SolverGrid::standard(N);
  PhysParams p{sigma0};
  std::mt19937_64 rng(seed);
  std::vector<CheckResult> checks;

  // boundary collocation residual and operator structure on random shapes
  {
    double worst_res = 0.0, worst_mean = 0.0, worst_sym = 0.0;
    for (int trial = 0; trial < 5; ++trial) {
      DropState u = random_state(N, 0.2, rng);
      TrigSeries chi2 = random_series(N, 0.6, rng);
      chi2 = (0.2 / sobolev_norm(chi2, 3.0)) * chi2;
      worst_res = std::max(worst_res, harmonic_extension(u.xi, u.chi, grid).boundary_residual);
      TrigSeries g1 = dno(u.xi, u.chi, grid);
      TrigSeries g2 = dno(u.xi, chi2, grid);
      worst_mean = std::max(worst_mean, std::abs(g1.mean));
      worst_sym =
          std::max(worst_sym, std::abs(inner_product(chi2, g1) - inner_product(u.chi, g2)));
    }
    checks.push_back({"dno_boundary_residual", worst_res, 1e-10});
    checks.push_back({"dno_zero_mean", worst_mean, 1e-10});
    checks.push_back({"dno_self_adjoint", worst_sym, 1e-10});
  }

  // shape derivative against a central difference of the operator
  {
    double worst = 0.0;
    for (int trial = 0; trial < 2; ++trial) {
      DropState u = random_state(N, 0.1, rng);
      TrigSeries hat = random_series(N, 0.6, rng);
      hat = (1.0 / sobolev_norm(hat, 3.0)) * hat;
      const double h = 1e-5;
      TrigSeries fd =
          (1.0 / (2.0 * h)) * (dno(u.xi + h * hat, u.chi, grid) - dno(u.xi - h * hat, u.chi, grid));
      TrigSeries an = dno_shape_derivative(u.xi, u.chi, hat, grid);
      worst = std::max(worst, l2_norm(fd - an) / std::max(1.0, l2_norm(an)));
    }
    checks.push_back({"dno_shape_derivative_fd", worst, 1e-6});
  }

  // flow identity rhs = (e^{-2xi} dH/dchi, -e^{-2xi} dH/dxi)
  {
    double worst = 0.0;
    for (int trial = 0; trial < 3; ++trial) {
      DropState u = random_state(N, 0.1, rng);
      auto f = rhs(u, p, grid);
      auto gH = grad_hamiltonian(u, p, grid);
      TrigSeries e2m = nonlinear_map({&u.xi}, [](const double* v) { return std::exp(-2.0 * v[0]); },
                                     grid);
      worst = std::max(worst, l2_norm(f.first - product(e2m, gH.second, grid)));
      worst = std::max(worst, l2_norm(f.second + product(e2m, gH.first, grid)));
    }
    checks.push_back({"canonical_flow_identity", worst, 1e-10});
  }

  // L2 gradients against directional finite differences
  {
    double worst = 0.0;
    DropState u = random_state(N, 0.1, rng);
    DropState v = random_state(N, 1.0, rng);
    const double h = 1e-5;
    const auto dir = [&](auto&& functional, const FieldPair& grad) {
      DropState up{u.xi + h * v.xi, u.chi + h * v.chi};
      DropState um{u.xi - h * v.xi, u.chi - h * v.chi};
      const double fd = (functional(up) - functional(um)) / (2.0 * h);
      const double ip = inner_product(grad.first, v.xi) + inner_product(grad.second, v.chi);
      return std::abs(fd - ip) / std::max(1.0, std::abs(ip));
    };
    worst = std::max(worst, dir([&](const DropState& w) { return hamiltonian(w, p, grid); },
                                grad_hamiltonian(u, p, grid)));
    worst = std::max(worst, dir([&](const DropState& w) { return angular_momentum(w, grid); },
                                grad_angular_momentum(u, grid)));
    worst = std::max(worst, dir([&](const DropState& w) { return mass(w, grid); },
                                grad_mass(u, grid)));
    checks.push_back({"gradients_vs_fd", worst, 1e-6});
  }

  // conserved quantities have vanishing brackets with H
  {
    DropState u = random_state(N, 0.1, rng);
    auto gH = grad_hamiltonian(u, p, grid);
    const double bIH = poisson_bracket(grad_angular_momentum(u, grid), gH, u, grid);
    const double bMH = poisson_bracket(grad_mass(u, grid), gH, u, grid);
    checks.push_back({"poisson_brackets", std::max(std::abs(bIH), std::abs(bMH)), 1e-9});
  }

  // torus and radial-graph forms give the same dynamics
  {
    double worst = 0.0;
    for (int trial = 0; trial < 3; ++trial) {
      DropState u = random_state(N, 0.1, rng);
      worst = std::max(worst, formulation_discrepancy(u, p, grid));
    }
    checks.push_back({"formulation_equivalence", worst, 1e-9});
  }

  // short-horizon conservation drift at the default step
  {
    DropState u0{TrigSeries::harmonic_cos(N, 2, 0.05), TrigSeries::harmonic_sin(N, 3, 0.05)};
    const double dt = default_dt(N, sigma0);
    auto traj = simulate(u0, 1.0, dt, p, grid, {std::size_t(std::ceil(1.0 / dt)), false});
    const auto& first = traj.monitors.front();
    const auto& last = traj.monitors.back();
    const double dH = std::abs(last.H - first.H) / std::max(1.0, std::abs(first.H));
    const double dI = std::abs(last.I - first.I);
    const double dM = std::abs(last.M - first.M) / std::max(1.0, std::abs(first.M));
    checks.push_back({"conservation_drift", std::max({dH, dI, dM}), 1e-9});
  }

  // dense linearization against a finite-difference Hessian at the circle
  {
    SolverGrid small = SolverGrid::standard(6);
    const double omega = 0.9;
    Eigen::MatrixXd L = assemble_linearization(omega, sigma0, small);
    const std::size_t dim = 4 * small.N + 2;
    Eigen::MatrixXd Lfd(dim, dim);
    const double h = 1e-6;
    for (std::size_t j = 0; j < dim; ++j) {
      Eigen::VectorXd e = Eigen::VectorXd::Zero(dim);
      e(Eigen::Index(j)) = h;
      DropState up = unflatten(e, small.N);
      DropState um = unflatten(-e, small.N);
      auto Fp = rotating_residual(omega, up.xi, up.chi, p, small);
      auto Fm = rotating_residual(omega, um.xi, um.chi, p, small);
      Lfd.col(Eigen::Index(j)) =
          (flatten({Fp.first, Fp.second}, small.N) - flatten({Fm.first, Fm.second}, small.N)) /
          (2.0 * h);
    }
    checks.push_back({"linearization_vs_fd", (Lfd - L).cwiseAbs().maxCoeff(), 1e-6});
  }

  // degenerate frequencies are determinant roots, scaled per mode
  {
    double worst = 0.0;
    for (std::size_t l = 2; l <= 6; ++l) {
      const double det = block_matrix(l, 1, bifurcation_frequency(l, sigma0), sigma0).det();
      worst = std::max(worst, std::abs(det) / (1.0 + sigma0 * double(l * l * l)));
    }
    checks.push_back({"block_determinant_roots", worst, 1e-12});
  }

  // rotating-wave residual forms and orbit-direction orthogonality
  {
    double worst = 0.0;
    DropState u = random_state(N, 0.05, rng);
    const double omega = 0.8;
    auto F = rotating_residual(omega, u.xi, u.chi, p, grid);
    auto F0 = rotating_residual_transport(omega, u.xi, u.chi, p, grid);
    TrigSeries e2 = nonlinear_map({&u.xi}, [](const double* v) { return std::exp(2.0 * v[0]); },
                                  grid);
    worst = std::max(worst, l2_norm(F.second + product(e2, F0.first, grid)));
    worst = std::max(worst, l2_norm(F.first - product(e2, F0.second, grid)));
    worst = std::max(worst, std::abs(inner_product(F.first, differentiate(u.xi)) +
                                     inner_product(F.second, differentiate(u.chi))));
    checks.push_back({"rotating_residual_identities", worst, 1e-9});
  }

  json rep;
  rep["N"] = N;
  rep["sigma0"] = sigma0;
  rep["seed"] = seed;
  rep["checks"] = json::array();
  bool all = true;
  for (const auto& c : checks) {
    rep["checks"].push_back(
        {{"name", c.name}, {"value", c.value}, {"tol", c.tol}, {"pass", c.pass()}});
    if (!c.pass())
      std::cerr << "verify: FAIL " << c.name << " value=" << format_g17(c.value)
                << " tol=" << format_g17(c.tol) << '\n';
    all = all && c.pass();
  }
  rep["pass"] = all;

  std::ofstream file;
  std::ostream& os = open_sink(out, file);
  os << rep.dump(2) << '\n';
  std::cerr << "verify: " << (all ? "PASS" : "FAIL") << " (" << checks.size() << " checks)\n";
  return all ? 0 : 4;
}

// ---- simulate ----------------------------------------------------------------

int run_simulate(const std::string& init, std::string out, std::size_t N_flag, bool sigma0_set,
                 double sigma0_flag, double dt_flag, double T, std::size_t record_every,
                 bool filter, double norm_s) {
  DropState u0;
  double sigma0 = 1.0;
  if (is_torus_state_file(init)) {
    StateFile f = load_state(init);
    sigma0 = f.sigma0;
    u0 = f.state;
  } else {
    S1StateFile f = load_s1_state(init);
    sigma0 = f.sigma0;
    const std::size_t n0 =
        N_flag ? N_flag : std::max<std::size_t>({8, f.state.h.order(), f.state.psi.order()});
    SolverGrid conv = SolverGrid::standard(n0);
    u0 = {s1_to_torus(f.state.h, conv), f.state.psi};
  }
  if (sigma0_set) sigma0 = sigma0_flag;

  const std::size_t N =
      N_flag ? N_flag : std::max<std::size_t>({8, u0.xi.order(), u0.chi.order()});
  u0.xi.ensure_order(N);
  u0.chi.ensure_order(N);
  SolverGrid grid = SolverGrid::standard(N);
  PhysParams p{sigma0};
  const double dt = dt_flag > 0.0 ? dt_flag : default_dt(N, sigma0);

  EvolveOptions opts;
  opts.record_every = record_every;
  opts.spectral_filter = filter;
  Trajectory traj = simulate(u0, T, dt, p, grid, opts);

  const bool json_out = out.size() >= 5 && out.substr(out.size() - 5) == ".json";
  std::ofstream file;
  std::ostream& os = open_sink(out, file);
  if (json_out) {
    json rep;
    rep["sigma0"] = sigma0;
    rep["N"] = N;
    rep["dt"] = dt;
    rep["T"] = T;
    rep["norm_s"] = norm_s;
    json times = json::array(), H = json::array(), I = json::array(), M = json::array();
    json xin = json::array(), chin = json::array();
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
      times.push_back(traj.times[i]);
      H.push_back(traj.monitors[i].H);
      I.push_back(traj.monitors[i].I);
      M.push_back(traj.monitors[i].M);
      xin.push_back(sobolev_norm(traj.states[i].xi, norm_s));
      chin.push_back(sobolev_norm(traj.states[i].chi, norm_s));
    }
    rep["times"] = std::move(times);
    rep["H"] = std::move(H);
    rep["I"] = std::move(I);
    rep["M"] = std::move(M);
    rep["xi_norm_Hs"] = std::move(xin);
    rep["chi_norm_Hs"] = std::move(chin);
    rep["final"] = {{"sigma0", sigma0},
                    {"xi", series_json(traj.states.back().xi)},
                    {"chi", series_json(traj.states.back().chi)}};
    os << rep.dump(2) << '\n';
  } else {
    os << "t,H,I,M,xi_norm_Hs,chi_norm_Hs\n";
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
      os << format_g17(traj.times[i]) << ',' << format_g17(traj.monitors[i].H) << ','
         << format_g17(traj.monitors[i].I) << ',' << format_g17(traj.monitors[i].M) << ','
         << format_g17(sobolev_norm(traj.states[i].xi, norm_s)) << ','
         << format_g17(sobolev_norm(traj.states[i].chi, norm_s)) << '\n';
    }
  }
  std::cerr << "simulate: " << traj.times.size() << " records, t final "
            << format_g17(traj.times.back()) << '\n';
  return 0;
}

// ---- branch ------------------------------------------------------------------

double symmetry_defect(const RotatingWave& w, std::size_t N) {
  double d = 0.0;
  if (w.symmetry.has_reversible()) {
    d = std::max(d, std::abs(w.beta.mean));
    for (std::size_t l = 1; l <= N; ++l)
      d = std::max({d, std::abs(w.eta.b(l)), std::abs(w.beta.a(l))});
  }
  if (w.symmetry.has_c_fold()) {
    for (std::size_t l = 1; l <= N; ++l) {
      if (l % w.symmetry.c == 0) continue;
      d = std::max({d, std::abs(w.eta.a(l)), std::abs(w.eta.b(l)), std::abs(w.beta.a(l)),
                    std::abs(w.beta.b(l))});
    }
  }
  return d;
}

struct BranchJob {
  std::string csv;
  std::string summary;
};

BranchJob run_one_branch(std::size_t ell_star, double sigma0, Symmetry sym, double a_min,
                         double a_max, std::size_t points, std::size_t N, double norm_s,
                         const NewtonOptions& nopts, const std::string& wave_dir) {
  SolverGrid grid = SolverGrid::standard(N);
  PhysParams p{sigma0};
  Branch branch = continue_branch(ell_star, sigma0, geometric_ladder(a_min, a_max, points), sym,
                                  grid, nopts);

  std::ostringstream csv;
  csv << "a,omega,residual,eta_Hs_norm,beta_Hs_norm,H,I,M,sym_defect\n";
  for (std::size_t k = 0; k < branch.points.size(); ++k) {
    const auto& w = branch.points[k];
    const ConservedSet c = conserved({w.eta, w.beta}, p, grid);
    csv << format_g17(w.a) << ',' << format_g17(w.omega) << ',' << format_g17(w.residual_norm)
        << ',' << format_g17(sobolev_norm(w.eta, norm_s)) << ','
        << format_g17(sobolev_norm(w.beta, norm_s)) << ',' << format_g17(c.H) << ','
        << format_g17(c.I) << ',' << format_g17(c.M) << ','
        << format_g17(symmetry_defect(w, N)) << '\n';
    if (!wave_dir.empty()) {
      StateFile f{sigma0, {w.eta, w.beta}, w.omega};
      save_state(wave_dir + "/wave_ell" + std::to_string(ell_star) + "_" + std::to_string(k) +
                     ".json",
                 f);
    }
  }

  std::ostringstream sum;
  sum << "branch ell_star=" << ell_star << " points=" << branch.points.size()
      << " amp_exponent=" << format_g17(branch.fit.amp_exponent)
      << " c_amp=" << format_g17(branch.fit.c_amp)
      << " omega_exponent=" << format_g17(branch.fit.omega_exponent)
      << " c_bound=" << format_g17(branch.fit.c_bound)
      << " c_bound_spread=" << format_g17(branch.fit.c_bound_spread) << '\n';
  return {csv.str(), sum.str()};
}

int run_branch(std::vector<std::size_t> ells, double sigma0, unsigned c_fold,
               const std::string& sym_name, double a_min, double a_max, std::size_t points,
               std::size_t N, double norm_s, double tol, int max_iter, const std::string& out,
               const std::string& wave_dir, unsigned jobs) {
  Symmetry sym = Symmetry::none();
  if (sym_name == "reversible")
    sym = c_fold ? Symmetry::both(c_fold) : Symmetry::reversible();
  else
    sym = c_fold ? Symmetry::c_fold(c_fold) : Symmetry::none();

  if (ells.empty()) throw ValidationError("branch: need at least one --ell-star");
  if (ells.size() > 1 && out.empty())
    throw ValidationError("branch: multiple --ell-star values need --out to name the files");
  if (!wave_dir.empty()) std::filesystem::create_directories(wave_dir);

  NewtonOptions nopts;
  nopts.tol = tol;
  nopts.max_iter = max_iter;

  const auto out_name = [&](std::size_t ell) {
    if (ells.size() == 1) return out;
    const auto dot = out.rfind('.');
    const std::string stem = dot == std::string::npos ? out : out.substr(0, dot);
    const std::string ext = dot == std::string::npos ? "" : out.substr(dot);
    return stem + "_ell" + std::to_string(ell) + ext;
  };

  std::vector<std::future<BranchJob>> futs;
  const unsigned lanes = std::max(1u, jobs);
  std::vector<BranchJob> results(ells.size());
  for (std::size_t i = 0; i < ells.size(); i += lanes) {
    futs.clear();
    const std::size_t hi = std::min(ells.size(), i + lanes);
    for (std::size_t j = i; j < hi; ++j)
      futs.push_back(std::async(std::launch::async, run_one_branch, ells[j], sigma0, sym, a_min,
                                a_max, points, N, norm_s, nopts, wave_dir));
    for (std::size_t j = i; j < hi; ++j) results[j] = futs[j - i].get();
  }

  for (std::size_t j = 0; j < ells.size(); ++j) {
    std::ofstream file;
    std::ostream& os = open_sink(out_name(ells[j]), file);
    os << results[j].csv;
    std::cerr << results[j].summary;
  }
  return 0;
}

// ---- state -------------------------------------------------------------------

int run_state(const std::string& in, const std::string& out, bool to_torus, bool to_s1,
              std::size_t N_flag) {
  if (to_torus == to_s1)
    throw ValidationError("state: pass exactly one of --to-torus / --to-s1");

  const bool torus_in = is_torus_state_file(in);
  if (to_torus && torus_in) {
    save_state(out, load_state(in));
    return 0;
  }
  if (to_s1 && !torus_in) {
    save_s1_state(out, load_s1_state(in));
    return 0;
  }

  if (to_torus) {
    S1StateFile f = load_s1_state(in);
    const std::size_t N =
        N_flag ? N_flag : std::max<std::size_t>({8, f.state.h.order(), f.state.psi.order()});
    SolverGrid grid = SolverGrid::standard(N);
    StateFile g;
    g.sigma0 = f.sigma0;
    g.state = {s1_to_torus(f.state.h, grid), f.state.psi};
    g.state.chi.ensure_order(N);
    save_state(out, g);
  } else {
    StateFile f = load_state(in);
    const std::size_t N =
        N_flag ? N_flag : std::max<std::size_t>({8, f.state.xi.order(), f.state.chi.order()});
    SolverGrid grid = SolverGrid::standard(N);
    S1StateFile g;
    g.sigma0 = f.sigma0;
    g.state = {torus_to_s1(f.state.xi, grid), f.state.chi};
    g.state.psi.ensure_order(N);
    save_s1_state(out, g);
    if (f.omega)
      std::cerr << "state: omega field dropped in radial output\n";
  }
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"spectral solver for capillary drop dynamics and rotating waves"};
  app.set_config("--config", "", "key=value config file; command-line flags override");
  app.footer("exit codes: 0 ok, 1 usage error, 2 invalid input, 3 solver failure, "
             "4 check failed");
  app.require_subcommand(1);

  // dispersion
  auto* disp = app.add_subcommand("dispersion", "table of degenerate frequencies per mode");
  double d_sigma0 = 1.0, d_probe = 0.0;
  std::size_t d_ellmax = 8;
  std::string d_out;
  disp->add_option("--sigma0", d_sigma0, "surface tension coefficient")
      ->check(CLI::PositiveNumber);
  disp->add_option("--ell-max", d_ellmax, "largest mode listed")->check(CLI::Range(1, 4096));
  disp->add_option("--probe-omega", d_probe, "frequency at which the block determinant is shown");
  disp->add_option("--out", d_out, "output CSV path (default stdout)");

  // dno-check
  auto* dchk = app.add_subcommand("dno-check", "boundary-collocation property battery");
  std::size_t c_N = 64, c_trials = 20;
  double c_size = 0.2;
  std::uint64_t c_seed = 7;
  std::string c_out;
  dchk->add_option("--N", c_N, "truncation order")->check(CLI::Range(8, 4096));
  dchk->add_option("--trials", c_trials, "number of random shapes")->check(CLI::Range(1, 10000));
  dchk->add_option("--size", c_size, "Sobolev H^3 size of the random shapes")
      ->check(CLI::PositiveNumber);
  dchk->add_option("--seed", c_seed, "random seed");
  dchk->add_option("--out", c_out, "output CSV path (default stdout)");

  // verify
  auto* ver = app.add_subcommand("verify", "full invariant suite, JSON report");
  std::size_t v_N = 64;
  double v_sigma0 = 1.0;
  std::uint64_t v_seed = 7;
  std::string v_out;
  ver->add_option("--N", v_N, "truncation order")->check(CLI::Range(8, 4096));
  ver->add_option("--sigma0", v_sigma0, "surface tension coefficient")
      ->check(CLI::PositiveNumber);
  ver->add_option("--seed", v_seed, "random seed");
  ver->add_option("--out", v_out, "output JSON path (default stdout)");

  // simulate
  auto* sim = app.add_subcommand("simulate", "integrate the drop equations");
  std::string s_init, s_out;
  std::size_t s_N = 0, s_rec = 1;
  double s_sigma0 = 1.0, s_dt = 0.0, s_T = 1.0, s_norm_s = 2.0;
  bool s_filter = false;
  sim->add_option("--init", s_init, "initial state JSON (torus or radial form)")
      ->required()
      ->check(CLI::ExistingFile);
  sim->add_option("--out", s_out, "output path, .json or .csv (default stdout CSV)");
  sim->add_option("--N", s_N, "truncation order (default: from the state file)")
      ->check(CLI::Range(8, 4096));
  auto* s_sig_opt =
      sim->add_option("--sigma0", s_sigma0, "surface tension (default: from the state file)")
          ->check(CLI::PositiveNumber);
  sim->add_option("--dt", s_dt, "time step (default: stability guard 0.25/Omega_N)")
      ->check(CLI::PositiveNumber);
  sim->add_option("--T", s_T, "integration horizon")->check(CLI::NonNegativeNumber);
  sim->add_option("--record-every", s_rec, "record every k-th step");
  sim->add_flag("--filter", s_filter, "mild exponential high-mode filter");
  sim->add_option("--norm-s", s_norm_s, "Sobolev index of the reported norms");

  // branch
  auto* br = app.add_subcommand("branch", "rotating-wave branch continuation");
  std::vector<std::size_t> b_ells{2};
  double b_sigma0 = 1.0, b_amin = 1e-6, b_amax = 1e-4, b_norm_s = 2.0, b_tol = 1e-11;
  std::size_t b_points = 7, b_N = 32;
  unsigned b_cfold = 0, b_jobs = 1;
  int b_maxit = 25;
  std::string b_sym = "reversible", b_out, b_waves;
  br->add_option("--ell-star", b_ells, "bifurcation mode(s), comma separated")
      ->delimiter(',');
  br->add_option("--sigma0", b_sigma0, "surface tension coefficient")
      ->check(CLI::PositiveNumber);
  br->add_option("--c-fold", b_cfold, "fold count c (0 = no fold restriction)");
  br->add_option("--symmetry", b_sym, "profile symmetry class")
      ->check(CLI::IsMember({"none", "reversible"}));
  br->add_option("--a-min", b_amin, "smallest angular momentum")->check(CLI::PositiveNumber);
  br->add_option("--a-max", b_amax, "largest angular momentum")->check(CLI::PositiveNumber);
  br->add_option("--points", b_points, "ladder length")->check(CLI::Range(1, 10000));
  br->add_option("--N", b_N, "truncation order")->check(CLI::Range(8, 4096));
  br->add_option("--norm-s", b_norm_s, "Sobolev index of the reported norms");
  br->add_option("--tol", b_tol, "Newton tolerance")->check(CLI::PositiveNumber);
  br->add_option("--max-iter", b_maxit, "Newton iteration cap")->check(CLI::Range(1, 1000));
  br->add_option("--out", b_out, "branch CSV path (default stdout; required for several modes)");
  br->add_option("--save-waves", b_waves, "directory for per-point state JSON files");
  br->add_option("--jobs", b_jobs, "concurrent branches when several modes are given")
      ->check(CLI::Range(1, 256));

  // state
  auto* st = app.add_subcommand("state", "convert between torus and radial state files");
  std::string t_in, t_out;
  bool t_torus = false, t_s1 = false;
  std::size_t t_N = 0;
  st->add_option("--in", t_in, "input state JSON")->required()->check(CLI::ExistingFile);
  st->add_option("--out", t_out, "output state JSON")->required();
  st->add_flag("--to-torus", t_torus, "write the torus form");
  st->add_flag("--to-s1", t_s1, "write the radial-graph form");
  st->add_option("--N", t_N, "conversion truncation (default: from the input file)")
      ->check(CLI::Range(8, 4096));

  try {
    app.parse(argc, argv);

    if (app.got_subcommand(disp)) return run_dispersion(d_sigma0, d_ellmax, d_probe, d_out);
    if (app.got_subcommand(dchk)) return run_dno_check(c_N, c_trials, c_size, c_seed, c_out);
    if (app.got_subcommand(ver)) return run_verify(v_N, v_sigma0, v_seed, v_out);
    if (app.got_subcommand(sim))
      return run_simulate(s_init, s_out, s_N, s_sig_opt->count() > 0, s_sigma0, s_dt, s_T, s_rec,
                          s_filter, s_norm_s);
    if (app.got_subcommand(br))
      return run_branch(b_ells, b_sigma0, b_cfold, b_sym, b_amin, b_amax, b_points, b_N,
                        b_norm_s, b_tol, b_maxit, b_out, b_waves, b_jobs);
    if (app.got_subcommand(st)) return run_state(t_in, t_out, t_torus, t_s1, t_N);
    return 1;
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const SolverError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const NumericsError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
