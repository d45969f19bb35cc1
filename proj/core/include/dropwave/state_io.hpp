#pragma once

#include "dropwave/geometry.hpp"
#include "dropwave/trig_series.hpp"

#include <optional>
#include <string>

namespace dropwave {

/// Torus-form state file:
///   {"sigma0": r, "xi": {"mean": r, "cos": [...], "sin": [...]},
///    "chi": {...}, "omega": r (optional)}
/// Doubles survive a write/read round trip bit-exactly.
struct StateFile {
  double sigma0 = 1.0;
  DropState state;
  std::optional<double> omega;
};

/// Radial-graph state file: {"sigma0": r, "h": {...}, "psi": {...}}.
struct S1StateFile {
  double sigma0 = 1.0;
  S1State state;
};

StateFile load_state(const std::string& path);
void save_state(const std::string& path, const StateFile& f);

S1StateFile load_s1_state(const std::string& path);
void save_s1_state(const std::string& path, const S1StateFile& f);

/// True if the JSON file at path holds a torus-form state ("xi"/"chi" keys),
/// false for the radial form ("h"/"psi"); ValidationError otherwise.
bool is_torus_state_file(const std::string& path);

/// Decimal form of a double with at most 17 significant digits ('.' decimal
/// separator, locale-independent), parsing back bit-exactly; the shortest
/// round-trip form is preferred. Used by every CSV writer.
std::string format_g17(double v);

} // namespace dropwave
