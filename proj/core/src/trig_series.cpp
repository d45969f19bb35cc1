#include "dropwave/trig_series.hpp"

#include "dropwave/errors.hpp"
#include "trig_tables.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

namespace dropwave {

namespace detail {

//------------------------------------------------------------------
// Cached tables of cos(l theta_j), sin(l theta_j) on uniform grids.
// Transforms are plain quadrature sums against these tables; at the
// sizes this library runs (M <= ~1024) that is microseconds and, unlike
// planned FFTs, trivially bit-reproducible.
//------------------------------------------------------------------
std::shared_ptr<const TrigTable> trig_table(std::size_t M, std::size_t Lmax) {
  static std::mutex mu;
  static std::map<std::size_t, std::shared_ptr<const TrigTable>> cache;

  constexpr double two_pi = 2.0 * std::numbers::pi;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(M);
  if (it != cache.end() && it->second->Lmax >= Lmax) return it->second;

  auto t = std::make_shared<TrigTable>();
  t->M = M;
  t->Lmax = std::max(Lmax, it != cache.end() ? it->second->Lmax : 0);
  t->cosv.resize((t->Lmax + 1) * M);
  t->sinv.resize((t->Lmax + 1) * M);
  for (std::size_t l = 0; l <= t->Lmax; ++l) {
    for (std::size_t j = 0; j < M; ++j) {
      const double ang = two_pi * static_cast<double>(l * j % M) / static_cast<double>(M);
      t->cosv[l * M + j] = std::cos(ang);
      t->sinv[l * M + j] = std::sin(ang);
    }
  }
  cache[M] = t;
  return t;
}

} // namespace detail

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;
using detail::trig_table;

} // namespace

void TrigSeries::set_a(std::size_t l, double v) {
  ensure_order(l);
  if (l >= 1) cos_coeffs[l - 1] = v;
}

void TrigSeries::set_b(std::size_t l, double v) {
  ensure_order(l);
  if (l >= 1) sin_coeffs[l - 1] = v;
}

void TrigSeries::ensure_order(std::size_t n) {
  if (n > order()) {
    cos_coeffs.resize(n, 0.0);
    sin_coeffs.resize(n, 0.0);
  }
}

TrigSeries TrigSeries::harmonic_cos(std::size_t n, std::size_t l, double amp) {
  TrigSeries f(std::max(n, l));
  if (l == 0)
    f.mean = amp;
  else
    f.cos_coeffs[l - 1] = amp;
  return f;
}

TrigSeries TrigSeries::harmonic_sin(std::size_t n, std::size_t l, double amp) {
  TrigSeries f(std::max(n, l));
  if (l >= 1) f.sin_coeffs[l - 1] = amp;
  return f;
}

TrigSeries TrigSeries::constant(std::size_t n, double value) {
  TrigSeries f(n);
  f.mean = value;
  return f;
}

TrigSeries operator+(const TrigSeries& f, const TrigSeries& g) {
  TrigSeries h(std::max(f.order(), g.order()));
  h.mean = f.mean + g.mean;
  for (std::size_t l = 1; l <= h.order(); ++l) {
    h.cos_coeffs[l - 1] = f.a(l) + g.a(l);
    h.sin_coeffs[l - 1] = f.b(l) + g.b(l);
  }
  return h;
}

TrigSeries operator-(const TrigSeries& f, const TrigSeries& g) {
  TrigSeries h(std::max(f.order(), g.order()));
  h.mean = f.mean - g.mean;
  for (std::size_t l = 1; l <= h.order(); ++l) {
    h.cos_coeffs[l - 1] = f.a(l) - g.a(l);
    h.sin_coeffs[l - 1] = f.b(l) - g.b(l);
  }
  return h;
}

TrigSeries operator*(double c, const TrigSeries& f) {
  TrigSeries h = f;
  h.mean *= c;
  for (auto& v : h.cos_coeffs) v *= c;
  for (auto& v : h.sin_coeffs) v *= c;
  return h;
}

SolverGrid SolverGrid::standard(std::size_t N, double dealias_factor) {
  return SolverGrid{N, 2 * N + 1, dealias_factor};
}

std::size_t SolverGrid::dealias_points() const {
  const auto want = static_cast<std::size_t>(std::ceil(dealias_factor * static_cast<double>(M)));
  return std::max({want, M, 2 * N + 1});
}

double evaluate(const TrigSeries& f, double theta) {
  if (!std::isfinite(theta)) throw ValidationError("evaluate: theta is not finite");
  double s = f.mean;
  for (std::size_t l = 1; l <= f.order(); ++l) {
    const double lt = static_cast<double>(l) * theta;
    s += f.cos_coeffs[l - 1] * std::cos(lt) + f.sin_coeffs[l - 1] * std::sin(lt);
  }
  return s;
}

std::vector<double> sample(const TrigSeries& f, std::size_t M) {
  const auto t = trig_table(M, f.order());
  std::vector<double> out(M, f.mean);
  for (std::size_t l = 1; l <= f.order(); ++l) {
    const double a = f.cos_coeffs[l - 1];
    const double b = f.sin_coeffs[l - 1];
    if (a == 0.0 && b == 0.0) continue;
    const double* c = &t->cosv[l * M];
    const double* s = &t->sinv[l * M];
    for (std::size_t j = 0; j < M; ++j) out[j] += a * c[j] + b * s[j];
  }
  return out;
}

TrigSeries analyze(std::span<const double> samples, std::size_t N) {
  const std::size_t M = samples.size();
  if (M < 2 * N + 1)
    throw ValidationError("analyze: need at least 2N+1 samples for order N");
  const auto t = trig_table(M, N);
  TrigSeries f(N);
  double m = 0.0;
  for (double v : samples) m += v;
  f.mean = m / static_cast<double>(M);
  for (std::size_t l = 1; l <= N; ++l) {
    const double* c = &t->cosv[l * M];
    const double* s = &t->sinv[l * M];
    double ca = 0.0, sb = 0.0;
    for (std::size_t j = 0; j < M; ++j) {
      ca += samples[j] * c[j];
      sb += samples[j] * s[j];
    }
    f.cos_coeffs[l - 1] = 2.0 * ca / static_cast<double>(M);
    f.sin_coeffs[l - 1] = 2.0 * sb / static_cast<double>(M);
  }
  return f;
}

TrigSeries differentiate(const TrigSeries& f) {
  TrigSeries d(f.order());
  for (std::size_t l = 1; l <= f.order(); ++l) {
    const double ld = static_cast<double>(l);
    d.cos_coeffs[l - 1] = ld * f.sin_coeffs[l - 1];
    d.sin_coeffs[l - 1] = -ld * f.cos_coeffs[l - 1];
  }
  return d;
}

TrigSeries nonlinear_map(std::span<const TrigSeries* const> inputs, const PointFn& fn,
                         const SolverGrid& grid) {
  const std::size_t Md = grid.dealias_points();
  const std::size_t k = inputs.size();
  std::vector<std::vector<double>> in(k);
  for (std::size_t i = 0; i < k; ++i) in[i] = sample(*inputs[i], Md);

  std::vector<double> vals(k), out(Md);
  for (std::size_t j = 0; j < Md; ++j) {
    for (std::size_t i = 0; i < k; ++i) vals[i] = in[i][j];
    out[j] = fn(vals.data());
    if (!std::isfinite(out[j]))
      throw NumericsError("nonlinear_map: pointwise map produced a non-finite value");
  }
  return analyze(out, grid.N);
}

TrigSeries nonlinear_map(std::initializer_list<const TrigSeries*> inputs, const PointFn& fn,
                         const SolverGrid& grid) {
  std::vector<const TrigSeries*> v(inputs);
  return nonlinear_map(std::span<const TrigSeries* const>(v), fn, grid);
}

TrigSeries product(const TrigSeries& f, const TrigSeries& g, const SolverGrid& grid) {
  return nonlinear_map({&f, &g}, [](const double* v) { return v[0] * v[1]; }, grid);
}

double integral(const TrigSeries& f) { return two_pi * f.mean; }

double inner_product(const TrigSeries& f, const TrigSeries& g) {
  double s = two_pi * f.mean * g.mean;
  const std::size_t n = std::min(f.order(), g.order());
  for (std::size_t l = 1; l <= n; ++l)
    s += std::numbers::pi * (f.cos_coeffs[l - 1] * g.cos_coeffs[l - 1] +
                             f.sin_coeffs[l - 1] * g.sin_coeffs[l - 1]);
  return s;
}

double l2_norm(const TrigSeries& f) { return std::sqrt(inner_product(f, f)); }

double inner_product(const DropState& u, const DropState& v) {
  return inner_product(u.xi, v.xi) + inner_product(u.chi, v.chi);
}

double l2_norm(const DropState& u) { return std::sqrt(inner_product(u, u)); }

namespace {

double weighted_norm(const TrigSeries& f, double weight_s, double s) {
  // orthonormal coefficients: f_{0,0} = mean*sqrt(2pi), f_{l,+-1} = (a,b)*sqrt(pi)
  double sum = two_pi * f.mean * f.mean; // weight 1 on the mean mode at every s
  for (std::size_t l = 1; l <= f.order(); ++l) {
    const double ld = static_cast<double>(l);
    const double w = (1.0 + std::pow(ld, 2.0 * s)) * std::exp(2.0 * weight_s * ld);
    const double c2 = f.cos_coeffs[l - 1] * f.cos_coeffs[l - 1] +
                      f.sin_coeffs[l - 1] * f.sin_coeffs[l - 1];
    sum += w * std::numbers::pi * c2;
  }
  return std::sqrt(sum);
}

} // namespace

double sobolev_norm(const TrigSeries& f, double s) { return weighted_norm(f, 0.0, s); }

double analytic_norm(const TrigSeries& f, double weight_s, double s) {
  if (weight_s < 0.0) throw ValidationError("analytic_norm: weight must be >= 0");
  return weighted_norm(f, weight_s, s);
}

TrigSeries translate(const TrigSeries& f, double alpha) {
  TrigSeries g(f.order());
  g.mean = f.mean;
  for (std::size_t l = 1; l <= f.order(); ++l) {
    const double c = std::cos(static_cast<double>(l) * alpha);
    const double s = std::sin(static_cast<double>(l) * alpha);
    const double a = f.cos_coeffs[l - 1];
    const double b = f.sin_coeffs[l - 1];
    // f(theta + alpha): rotate each (a, b) pair by angle l*alpha
    g.cos_coeffs[l - 1] = a * c + b * s;
    g.sin_coeffs[l - 1] = -a * s + b * c;
  }
  return g;
}

DropState translate(const DropState& u, double alpha) {
  return DropState{translate(u.xi, alpha), translate(u.chi, alpha)};
}

TrigSeries reflect(const TrigSeries& f) {
  TrigSeries g = f;
  for (auto& v : g.sin_coeffs) v = -v;
  return g;
}

DropState reverse(const DropState& u) {
  return DropState{reflect(u.xi), -1.0 * reflect(u.chi)};
}

DropState shift_potential(const DropState& u, double amount) {
  DropState v = u;
  v.chi.mean += amount;
  return v;
}

TrigSeries c_fold_project(const TrigSeries& f, unsigned c) {
  if (c < 2) throw ValidationError("c_fold_project: c must be >= 2");
  TrigSeries g(f.order());
  g.mean = f.mean;
  for (std::size_t l = c; l <= f.order(); l += c) {
    g.cos_coeffs[l - 1] = f.cos_coeffs[l - 1];
    g.sin_coeffs[l - 1] = f.sin_coeffs[l - 1];
  }
  return g;
}

DropState c_fold_project(const DropState& u, unsigned c) {
  return DropState{c_fold_project(u.xi, c), c_fold_project(u.chi, c)};
}

double uniform_pm1(std::mt19937_64& rng) {
  // 53 high bits to a double in [0,1), then to [-1,1)
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return 2.0 * u - 1.0;
}

TrigSeries random_series(std::size_t N, double ell_decay, std::mt19937_64& rng) {
  TrigSeries f(N);
  f.mean = uniform_pm1(rng);
  for (std::size_t l = 1; l <= N; ++l) {
    const double w = std::exp(-ell_decay * static_cast<double>(l));
    f.cos_coeffs[l - 1] = w * uniform_pm1(rng);
    f.sin_coeffs[l - 1] = w * uniform_pm1(rng);
  }
  return f;
}

} // namespace dropwave
