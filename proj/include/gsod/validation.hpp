#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "gsod/shape_solver.hpp"

namespace gsod {

/// Asymptotic statements checked by order fitting:
///   CL1 φ_{εB} two-term expansion, CL2 shape derivative Φ_ε, CL3 its boundary
///   trace, CL4 𝓕(ε,0) - κ, CL5 boundary curve / ‖B‖, CL6 c = ε²c_{ε,B},
///   CL7 ψ quadratic expansion, CL8 leading terms of c1 and c2.
enum class ClaimId { CL1 = 1, CL2, CL3, CL4, CL5, CL6, CL7, CL8 };

std::string to_string(ClaimId id);
ClaimId claim_from_string(const std::string& name);
std::vector<ClaimId> all_claims();
double expected_order(ClaimId id);
std::string claim_description(ClaimId id);

struct Fixture {
  std::string name;
  ProfileFunctions profile;
  double R = 0;
};

/// "fixture-a" (H = ψ, F̃ = -2ψ, R = 2) or "fixture-b" (H = ψ, F̃ = ψ², R = 1, degenerate).
Fixture fixture_by_name(const std::string& name);

enum class Verdict { pass, fail, inconclusive };
std::string to_string(Verdict v);

struct SweepReport {
  ClaimId claim = ClaimId::CL1;
  std::string fixture;
  std::vector<double> eps;
  std::vector<double> errors;
  double slope = 0;
  double expected = 0;
  double band = 0.3;
  Verdict verdict = Verdict::inconclusive;
  std::string note;  // solver error text for inconclusive claims
};

nlohmann::json to_json(const SweepReport& r);

struct SweepOptions {
  int order = 24;
  int n_rho = 24;
  int threads = 1;
  ShapeOptions shape = {};
  NewtonOptions newton = {};
};

/// Throws InvalidArgument unless the list has >= 3 positive values spanning a
/// factor >= 4, all within eps_max.
void validate_eps_list(const std::vector<double>& eps, double eps_max = 0.05);

/// Least-squares slope of log(error) against log(ε).
double fit_slope(const std::vector<double>& eps, const std::vector<double>& errors);

/// The error norm a claim measures at a single ε.
double claim_error(ClaimId claim, const Fixture& fixture, double eps, const SweepOptions& options);

SweepReport run_claim(ClaimId claim, const Fixture& fixture, const std::vector<double>& eps,
                      const SweepOptions& options = {});

/// All claims for one fixture; shape solves are shared between claims.
std::vector<SweepReport> run_all(const Fixture& fixture, const std::vector<double>& eps,
                                 const SweepOptions& options = {});

struct Scorecard {
  std::vector<SweepReport> reports;
  bool all_pass() const;
  int exit_code() const { return all_pass() ? 0 : 2; }
  std::vector<std::string> failing() const;
  nlohmann::json json() const;
  std::string table() const;
};

Scorecard scorecard(std::vector<SweepReport> reports);

std::vector<double> fast_eps_list();
std::vector<double> thorough_eps_list();

}  // namespace gsod
