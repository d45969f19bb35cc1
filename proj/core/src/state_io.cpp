#include "dropwave/state_io.hpp"

#include "dropwave/errors.hpp"

#include <json.hpp>

#include <charconv>
#include <fstream>
#include <string>

namespace dropwave {

namespace {

using nlohmann::json;

json series_to_json(const TrigSeries& f) {
  return json{{"mean", f.mean}, {"cos", f.cos_coeffs}, {"sin", f.sin_coeffs}};
}

TrigSeries series_from_json(const json& j, const std::string& key, const std::string& path) {
  const auto fail = [&](const std::string& what) -> ValidationError {
    return ValidationError("state file " + path + ": field '" + key + "' " + what);
  };
  if (!j.is_object()) throw fail("must be an object with mean/cos/sin");
  if (!j.contains("mean") || !j["mean"].is_number()) throw fail("needs a numeric 'mean'");
  if (!j.contains("cos") || !j["cos"].is_array()) throw fail("needs a 'cos' array");
  if (!j.contains("sin") || !j["sin"].is_array()) throw fail("needs a 'sin' array");

  TrigSeries f;
  f.mean = j["mean"].get<double>();
  for (const auto& v : j["cos"]) {
    if (!v.is_number()) throw fail("has a non-numeric 'cos' entry");
    f.cos_coeffs.push_back(v.get<double>());
  }
  for (const auto& v : j["sin"]) {
    if (!v.is_number()) throw fail("has a non-numeric 'sin' entry");
    f.sin_coeffs.push_back(v.get<double>());
  }
  if (f.cos_coeffs.size() != f.sin_coeffs.size())
    throw fail("has cos/sin arrays of different length");
  return f;
}

json parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open state file " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ValidationError("state file " + path + " is not valid JSON: " + e.what());
  }
  if (!j.is_object()) throw ValidationError("state file " + path + " must hold a JSON object");
  return j;
}

double read_sigma0(const json& j, const std::string& path) {
  if (!j.contains("sigma0") || !j["sigma0"].is_number())
    throw ValidationError("state file " + path + ": needs a numeric 'sigma0'");
  const double s = j["sigma0"].get<double>();
  if (!(s > 0.0))
    throw ValidationError("state file " + path + ": sigma0 must be positive");
  return s;
}

void write_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write state file " + path);
  out << j.dump(2) << '\n';
  if (!out) throw ValidationError("write to state file " + path + " failed");
}

} // namespace

StateFile load_state(const std::string& path) {
  const json j = parse_file(path);
  if (!j.contains("xi") || !j.contains("chi"))
    throw ValidationError("state file " + path + ": torus form needs 'xi' and 'chi'");
  StateFile f;
  f.sigma0 = read_sigma0(j, path);
  f.state.xi = series_from_json(j["xi"], "xi", path);
  f.state.chi = series_from_json(j["chi"], "chi", path);
  if (j.contains("omega")) {
    if (!j["omega"].is_number())
      throw ValidationError("state file " + path + ": 'omega' must be numeric");
    f.omega = j["omega"].get<double>();
  }
  return f;
}

void save_state(const std::string& path, const StateFile& f) {
  json j{{"sigma0", f.sigma0},
         {"xi", series_to_json(f.state.xi)},
         {"chi", series_to_json(f.state.chi)}};
  if (f.omega) j["omega"] = *f.omega;
  write_file(path, j);
}

S1StateFile load_s1_state(const std::string& path) {
  const json j = parse_file(path);
  if (!j.contains("h") || !j.contains("psi"))
    throw ValidationError("state file " + path + ": radial form needs 'h' and 'psi'");
  S1StateFile f;
  f.sigma0 = read_sigma0(j, path);
  f.state.h = series_from_json(j["h"], "h", path);
  f.state.psi = series_from_json(j["psi"], "psi", path);
  return f;
}

void save_s1_state(const std::string& path, const S1StateFile& f) {
  write_file(path, json{{"sigma0", f.sigma0},
                        {"h", series_to_json(f.state.h)},
                        {"psi", series_to_json(f.state.psi)}});
}

bool is_torus_state_file(const std::string& path) {
  const json j = parse_file(path);
  const bool torus = j.contains("xi") && j.contains("chi");
  const bool radial = j.contains("h") && j.contains("psi");
  if (torus == radial)
    throw ValidationError("state file " + path +
                          ": expected either 'xi'/'chi' or 'h'/'psi' fields");
  return torus;
}

std::string format_g17(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  std::string s(buf, res.ptr);

  // shortest form can spell out exact high integers with 18 digits; the file
  // format caps significant digits at 17, so such values fall back to the
  // rounded general form (still a binary64 round trip)
  std::string mantissa;
  for (char c : s) {
    if (c == 'e' || c == 'E') break;
    if (c >= '0' && c <= '9') mantissa += c;
  }
  const auto first = mantissa.find_first_not_of('0');
  const auto last = mantissa.find_last_not_of('0');
  if (first != std::string::npos && last - first + 1 > 17) {
    const auto res17 = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    s.assign(buf, res17.ptr);
  }
  return s;
}

} // namespace dropwave
