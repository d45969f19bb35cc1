#include "dropwave/state_io.hpp"

#include "dropwave/errors.hpp"

#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>
#include <string>

using namespace dropwave;

namespace {

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
}

} // namespace

TEST_SUITE_BEGIN("state_files");

TEST_CASE("torus state survives a round trip bit-exactly") {
  StateFile f;
  f.sigma0 = 1.0 / 3.0;
  f.state.xi = TrigSeries(4);
  f.state.chi = TrigSeries(4);
  f.state.xi.mean = 0.1; // not exactly representable
  f.state.xi.set_a(1, std::numbers::pi);
  f.state.xi.set_b(3, -1e-308); // subnormal-adjacent magnitude
  f.state.chi.set_a(4, std::nextafter(1.0, 2.0));
  f.state.chi.set_b(2, -7.0 / 11.0);
  f.omega = std::sqrt(1.5);

  const std::string path = temp_path("dropwave_roundtrip.json");
  save_state(path, f);
  const StateFile g = load_state(path);

  CHECK(g.sigma0 == f.sigma0);
  CHECK(g.state.xi.mean == f.state.xi.mean);
  CHECK(g.state.xi.a(1) == f.state.xi.a(1));
  CHECK(g.state.xi.b(3) == f.state.xi.b(3));
  CHECK(g.state.chi.a(4) == f.state.chi.a(4));
  CHECK(g.state.chi.b(2) == f.state.chi.b(2));
  REQUIRE(g.omega.has_value());
  CHECK(*g.omega == *f.omega);
  std::remove(path.c_str());
}

TEST_CASE("random doubles round trip through the file format") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> mant(-1.0, 1.0);
  std::uniform_int_distribution<int> expo(-30, 30);

  StateFile f;
  f.state.xi = TrigSeries(16);
  f.state.chi = TrigSeries(16);
  for (std::size_t l = 1; l <= 16; ++l) {
    f.state.xi.set_a(l, std::ldexp(mant(rng), expo(rng)));
    f.state.xi.set_b(l, std::ldexp(mant(rng), expo(rng)));
    f.state.chi.set_a(l, std::ldexp(mant(rng), expo(rng)));
    f.state.chi.set_b(l, std::ldexp(mant(rng), expo(rng)));
  }
  const std::string path = temp_path("dropwave_random.json");
  save_state(path, f);
  const StateFile g = load_state(path);
  for (std::size_t l = 1; l <= 16; ++l) {
    CHECK(g.state.xi.a(l) == f.state.xi.a(l));
    CHECK(g.state.xi.b(l) == f.state.xi.b(l));
    CHECK(g.state.chi.a(l) == f.state.chi.a(l));
    CHECK(g.state.chi.b(l) == f.state.chi.b(l));
  }
  CHECK_FALSE(g.omega.has_value());
  std::remove(path.c_str());
}

TEST_CASE("radial state round trip and form detection") {
  S1StateFile f;
  f.sigma0 = 2.5;
  f.state.h = TrigSeries(3);
  f.state.psi = TrigSeries(3);
  f.state.h.set_a(2, 0.125);
  f.state.psi.set_b(1, -0.3);

  const std::string radial = temp_path("dropwave_radial.json");
  save_s1_state(radial, f);
  const S1StateFile g = load_s1_state(radial);
  CHECK(g.sigma0 == 2.5);
  CHECK(g.state.h.a(2) == 0.125);
  CHECK(g.state.psi.b(1) == -0.3);
  CHECK_FALSE(is_torus_state_file(radial));

  const std::string torus = temp_path("dropwave_torus.json");
  save_state(torus, StateFile{1.0, {TrigSeries(2), TrigSeries(2)}, std::nullopt});
  CHECK(is_torus_state_file(torus));

  std::remove(radial.c_str());
  std::remove(torus.c_str());
}

TEST_CASE("malformed files are rejected with context") {
  CHECK_THROWS_AS((void)load_state(temp_path("dropwave_missing.json")), ValidationError);

  const std::string path = temp_path("dropwave_bad.json");

  write_text(path, "{ not json");
  CHECK_THROWS_AS((void)load_state(path), ValidationError);
  CHECK_THROWS_AS((void)is_torus_state_file(path), ValidationError);

  write_text(path, "[1, 2, 3]");
  CHECK_THROWS_AS((void)load_state(path), ValidationError);

  // neither torus nor radial keys
  write_text(path, R"({"sigma0": 1.0})");
  CHECK_THROWS_AS((void)is_torus_state_file(path), ValidationError);

  // cos/sin length mismatch
  write_text(path, R"({"sigma0": 1.0,
    "xi": {"mean": 0.0, "cos": [1.0, 2.0], "sin": [0.0]},
    "chi": {"mean": 0.0, "cos": [], "sin": []}})");
  CHECK_THROWS_AS((void)load_state(path), ValidationError);

  // missing sigma0
  write_text(path, R"({"xi": {"mean": 0.0, "cos": [], "sin": []},
                       "chi": {"mean": 0.0, "cos": [], "sin": []}})");
  CHECK_THROWS_AS((void)load_state(path), ValidationError);

  // non-positive sigma0
  write_text(path, R"({"sigma0": -1.0,
    "xi": {"mean": 0.0, "cos": [], "sin": []},
    "chi": {"mean": 0.0, "cos": [], "sin": []}})");
  CHECK_THROWS_AS((void)load_state(path), ValidationError);

  // non-numeric omega
  write_text(path, R"({"sigma0": 1.0, "omega": "fast",
    "xi": {"mean": 0.0, "cos": [], "sin": []},
    "chi": {"mean": 0.0, "cos": [], "sin": []}})");
  CHECK_THROWS_AS((void)load_state(path), ValidationError);

  std::remove(path.c_str());
}

TEST_CASE("decimal formatting is shortest and round-trips") {
  CHECK(format_g17(0.1) == "0.1");
  CHECK(format_g17(1.0) == "1");
  CHECK(format_g17(-2.5) == "-2.5");
  CHECK(format_g17(0.0) == "0");

  // exact high integers would need 18 digits in fixed notation; the format
  // caps at 17 significant digits and must still round-trip
  const double big = 444891949863436736.0;
  CHECK(std::strtod(format_g17(big).c_str(), nullptr) == big);

  std::mt19937_64 rng(123);
  std::uniform_real_distribution<double> mant(-1.0, 1.0);
  std::uniform_int_distribution<int> expo(-300, 300);
  for (int k = 0; k < 200; ++k) {
    const double v = std::ldexp(mant(rng), expo(rng));
    const std::string s = format_g17(v);
    CHECK(std::strtod(s.c_str(), nullptr) == v);
    // at most 17 significant digits; leading and trailing zeros of fixed
    // notation are magnitude padding, not information
    std::string mantissa;
    for (char c : s) {
      if (c == 'e' || c == 'E') break;
      if (c >= '0' && c <= '9') mantissa += c;
    }
    const auto first = mantissa.find_first_not_of('0');
    const auto last = mantissa.find_last_not_of('0');
    const std::size_t digits = first == std::string::npos ? 0 : last - first + 1;
    CHECK(digits <= 17);
  }
}

TEST_SUITE_END();
