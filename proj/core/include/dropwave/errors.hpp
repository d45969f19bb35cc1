#pragma once

#include <stdexcept>
#include <string>

namespace dropwave {

/// Invalid user-supplied data: malformed files, out-of-range parameters,
/// states that violate documented preconditions (e.g. 1+h <= 0).
class ValidationError : public std::runtime_error {
public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

/// A numerical kernel left its domain of trust: non-finite values from a
/// pointwise map, collocation residual above tolerance, conditioning guard hit.
class NumericsError : public std::runtime_error {
public:
  explicit NumericsError(const std::string& what) : std::runtime_error(what) {}
};

/// An iterative solver failed to converge (Newton out of iterations,
/// singular augmented system).
class SolverError : public std::runtime_error {
public:
  explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace dropwave
