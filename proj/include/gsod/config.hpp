#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "gsod/constants.hpp"
#include "gsod/euler_assembly.hpp"
#include "gsod/profile.hpp"

namespace gsod {

/// Either a named built-in ("fixture-a", "fixture-b") or explicit polynomial
/// coefficients (increasing degree) for F̃ and H.
struct ProfileSpec {
  std::string builtin;
  ProfileFamily family = ProfileFamily::generic;
  std::vector<double> ftilde;
  std::vector<double> h;

  ProfileFunctions functions() const;
  bool operator==(const ProfileSpec&) const = default;
};

struct RunConfig {
  ProfileSpec profile{"fixture-a", ProfileFamily::generic, {}, {}};
  double R = 2.0;
  std::optional<double> eps = 0.01;
  std::vector<double> eps_list = {0.04, 0.02, 0.01};
  std::vector<double> R_list;  // sweep only; empty means {R}
  int n_theta = 24;
  int n_rho = 24;
  double newton_tol = 1e-11;
  int newton_max_iter = 25;
  double shape_tol = 1e-9;
  int shape_max_iter = 40;
  double eps_max = 0.05;
  GridSpec grid;
  std::string out_dir = "out";
  std::uint64_t seed = 1;
  int weak_tests = 20;
  bool write_vtk = false;
  std::array<int, 3> vtk_dims = {128, 128, 16};
  int threads = 1;

  ProfileFunctions profile_functions() const { return profile.functions(); }
  ProblemConstants constants(double eps_value) const;
  NewtonOptions newton_options() const { return {newton_tol, newton_max_iter}; }
  ShapeOptions shape_options() const;
  /// Throws Config for malformed values; make_constants errors propagate.
  void validate() const;

  bool operator==(const RunConfig&) const = default;
};

/// Missing keys keep their defaults. A built-in profile without an explicit
/// "R" takes the fixture's radius. The result is validated.
RunConfig parse_config(const nlohmann::json& j);
RunConfig load_config(const std::string& path);
nlohmann::json to_json(const RunConfig& c);

}  // namespace gsod
