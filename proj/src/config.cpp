#include "gsod/config.hpp"

#include <fstream>

#include <nlohmann/json.hpp>

#include "gsod/errors.hpp"
#include "gsod/validation.hpp"

namespace gsod {

ProfileFunctions ProfileSpec::functions() const {
  if (!builtin.empty()) return fixture_by_name(builtin).profile;
  return ProfileFunctions::make(Polynomial(ftilde), Polynomial(h), family);
}

ProblemConstants RunConfig::constants(double eps_value) const {
  return make_constants(profile_functions(), R, eps_value);
}

ShapeOptions RunConfig::shape_options() const {
  ShapeOptions o;
  o.tol = shape_tol;
  o.max_iter = shape_max_iter;
  o.eps_max = eps_max;
  return o;
}

void RunConfig::validate() const {
  auto bad = [](const std::string& msg) { fail(ErrorKind::Config, msg); };
  if (!(newton_tol > 0) || !(shape_tol > 0)) bad("tolerances must be strictly positive");
  if (newton_max_iter < 1 || shape_max_iter < 1) bad("iteration limits must be positive");
  if (n_theta < 2 || n_rho < 2) bad("resolutions must be at least 2");
  if (!(eps_max > 0)) bad("eps_max must be positive");
  if (grid.nr < 2 || grid.nz < 2 || !(grid.margin >= 0)) bad("grid needs nr, nz >= 2 and margin >= 0");
  if (weak_tests < 1) bad("weak_tests must be positive");
  if (threads < 1) bad("threads must be positive");
  for (int d : vtk_dims)
    if (d < 2) bad("vtk dimensions must be at least 2");
  if (eps && (!(*eps >= 0) || *eps > eps_max)) bad("eps must lie in [0, eps_max]");
  for (double e : eps_list)
    if (!(e > 0) || e > eps_max) bad("eps_list entries must lie in (0, eps_max]");
  const ProfileFunctions prof = profile_functions();
  (void)make_constants(prof, R, eps.value_or(0.0));
  for (double r : R_list) (void)make_constants(prof, r, eps.value_or(0.0));
}

RunConfig parse_config(const nlohmann::json& j) {
  RunConfig c;
  try {
    if (!j.is_object()) fail(ErrorKind::Config, "config must be a JSON object");
    bool r_given = j.contains("R");
    if (j.contains("profile")) {
      const auto& p = j.at("profile");
      c.profile = ProfileSpec{};
      if (p.is_string()) {
        c.profile.builtin = p.get<std::string>();
      } else {
        c.profile.builtin = p.value("builtin", std::string{});
        c.profile.family = family_from_string(p.value("family", std::string("generic")));
        c.profile.ftilde = p.value("ftilde", std::vector<double>{});
        c.profile.h = p.value("h", std::vector<double>{});
      }
    }
    if (!c.profile.builtin.empty()) {
      const Fixture f = fixture_by_name(c.profile.builtin);
      c.profile.builtin = f.name;
      if (!r_given) c.R = f.R;
    }
    c.R = j.value("R", c.R);
    if (j.contains("eps")) {
      if (j.at("eps").is_null())
        c.eps.reset();
      else
        c.eps = j.at("eps").get<double>();
    }
    c.eps_list = j.value("eps_list", c.eps_list);
    c.R_list = j.value("R_list", c.R_list);
    c.n_theta = j.value("n_theta", c.n_theta);
    c.n_rho = j.value("n_rho", c.n_rho);
    c.newton_tol = j.value("newton_tol", c.newton_tol);
    c.newton_max_iter = j.value("newton_max_iter", c.newton_max_iter);
    c.shape_tol = j.value("shape_tol", c.shape_tol);
    c.shape_max_iter = j.value("shape_max_iter", c.shape_max_iter);
    c.eps_max = j.value("eps_max", c.eps_max);
    if (j.contains("grid")) {
      const auto& g = j.at("grid");
      c.grid.nr = g.value("nr", c.grid.nr);
      c.grid.nz = g.value("nz", c.grid.nz);
      c.grid.margin = g.value("margin", c.grid.margin);
    }
    c.out_dir = j.value("out_dir", c.out_dir);
    c.seed = j.value("seed", c.seed);
    c.weak_tests = j.value("weak_tests", c.weak_tests);
    c.write_vtk = j.value("write_vtk", c.write_vtk);
    c.vtk_dims = j.value("vtk_dims", c.vtk_dims);
    c.threads = j.value("threads", c.threads);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::Config, std::string("malformed config: ") + e.what());
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::InvalidArgument) fail(ErrorKind::Config, e.what());
    throw;
  }
  c.validate();
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Config, "cannot open config '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::Config, "config '" + path + "' is not valid JSON: " + e.what());
  }
  return parse_config(j);
}

nlohmann::json to_json(const RunConfig& c) {
  nlohmann::json j;
  if (!c.profile.builtin.empty()) {
    j["profile"] = c.profile.builtin;
  } else {
    j["profile"] = {{"family", to_string(c.profile.family)}, {"ftilde", c.profile.ftilde}, {"h", c.profile.h}};
  }
  j["R"] = c.R;
  j["eps"] = c.eps ? nlohmann::json(*c.eps) : nlohmann::json(nullptr);
  j["eps_list"] = c.eps_list;
  j["R_list"] = c.R_list;
  j["n_theta"] = c.n_theta;
  j["n_rho"] = c.n_rho;
  j["newton_tol"] = c.newton_tol;
  j["newton_max_iter"] = c.newton_max_iter;
  j["shape_tol"] = c.shape_tol;
  j["shape_max_iter"] = c.shape_max_iter;
  j["eps_max"] = c.eps_max;
  j["grid"] = {{"nr", c.grid.nr}, {"nz", c.grid.nz}, {"margin", c.grid.margin}};
  j["out_dir"] = c.out_dir;
  j["seed"] = c.seed;
  j["weak_tests"] = c.weak_tests;
  j["write_vtk"] = c.write_vtk;
  j["vtk_dims"] = c.vtk_dims;
  j["threads"] = c.threads;
  return j;
}

}  // namespace gsod
