// Internal: cached cos/sin tables on uniform torus grids, shared by the
// transform kernels and the collocation assembly. Not installed.
#pragma once

#include <cstddef>
#include <memory>
#include <vector>

namespace dropwave::detail {

struct TrigTable {
  std::size_t M = 0;
  std::size_t Lmax = 0;
  // row-major (Lmax+1) x M; row l holds cos/sin(l * theta_j), theta_j = 2pi j/M
  std::vector<double> cosv, sinv;

  const double* cos_row(std::size_t l) const { return &cosv[l * M]; }
  const double* sin_row(std::size_t l) const { return &sinv[l * M]; }
};

/// Shared cache, grown on demand; returned tables are immutable.
std::shared_ptr<const TrigTable> trig_table(std::size_t M, std::size_t Lmax);

} // namespace dropwave::detail
