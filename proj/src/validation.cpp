#include "gsod/validation.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <iomanip>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>

#include <nlohmann/json.hpp>

#include "gsod/errors.hpp"
#include "gsod/spectral_ops.hpp"

namespace gsod {

std::string to_string(ClaimId id) { return "CL" + std::to_string(static_cast<int>(id)); }

ClaimId claim_from_string(const std::string& name) {
  for (ClaimId c : all_claims())
    if (to_string(c) == name) return c;
  fail(ErrorKind::InvalidArgument, "unknown claim '" + name + "'");
}

std::vector<ClaimId> all_claims() {
  return {ClaimId::CL1, ClaimId::CL2, ClaimId::CL3, ClaimId::CL4,
          ClaimId::CL5, ClaimId::CL6, ClaimId::CL7, ClaimId::CL8};
}

double expected_order(ClaimId id) {
  switch (id) {
    case ClaimId::CL1: return 2;
    case ClaimId::CL2: return 3;
    case ClaimId::CL3: return 3;
    case ClaimId::CL4: return 2;
    case ClaimId::CL5: return 1;
    case ClaimId::CL6: return 3;
    case ClaimId::CL7: return 3;
    case ClaimId::CL8: return 1;
  }
  return 0;
}

std::string claim_description(ClaimId id) {
  switch (id) {
    case ClaimId::CL1: return "phi two-term expansion, B in {0, 0.3cos2t}";
    case ClaimId::CL2: return "shape derivative vs eps^2-accurate formula";
    case ClaimId::CL3: return "boundary normal derivative of shape derivative";
    case ClaimId::CL4: return "|F(eps,0) - kappa|";
    case ClaimId::CL5: return "sup|(1+eps B)^2 - 1|/eps at solved B";
    case ClaimId::CL6: return "|eps^2 c - eps^2 4A0A1/R|";
    case ClaimId::CL7: return "eps^2 |phi - A0(rho^2-1)| at solved B";
    case ClaimId::CL8: return "c1, c2 relative to leading terms";
  }
  return {};
}

Fixture fixture_by_name(const std::string& name) {
  std::string n = name;
  std::transform(n.begin(), n.end(), n.begin(), [](unsigned char c) { return std::tolower(c); });
  if (n == "fixture-a" || n == "a") return {"fixture-a", fixture_a_profile(), 2.0};
  if (n == "fixture-b" || n == "b") return {"fixture-b", fixture_b_profile(), 1.0};
  fail(ErrorKind::InvalidArgument, "unknown fixture '" + name + "'");
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::inconclusive: return "inconclusive";
  }
  return {};
}

nlohmann::json to_json(const SweepReport& r) {
  nlohmann::json j;
  j["claim"] = to_string(r.claim);
  j["fixture"] = r.fixture;
  j["eps"] = r.eps;
  j["errors"] = r.errors;
  j["slope"] = std::isfinite(r.slope) ? nlohmann::json(r.slope) : nlohmann::json(nullptr);
  j["expected"] = r.expected;
  j["band"] = r.band;
  j["verdict"] = to_string(r.verdict);
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

void validate_eps_list(const std::vector<double>& eps, double eps_max) {
  if (eps.size() < 3) fail(ErrorKind::InvalidArgument, "need ≥3 epsilons");
  for (double e : eps)
    if (!(e > 0.0) || e > eps_max)
      fail(ErrorKind::InvalidArgument, "every epsilon must lie in (0, " + std::to_string(eps_max) + "]");
  const auto [lo, hi] = std::minmax_element(eps.begin(), eps.end());
  if (*hi < 4.0 * *lo) fail(ErrorKind::InvalidArgument, "epsilons must span a factor of at least 4");
}

double fit_slope(const std::vector<double>& eps, const std::vector<double>& errors) {
  if (eps.size() != errors.size() || eps.size() < 2)
    fail(ErrorKind::InvalidArgument, "slope fit needs matching lists of length >= 2");
  const auto n = static_cast<double>(eps.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < eps.size(); ++i) {
    const double x = std::log(eps[i]), y = std::log(errors[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

namespace {

GridPtr grid_for(const SweepOptions& o) { return make_grid(o.order, o.n_rho); }

double sup(const Eigen::MatrixXd& m) { return m.cwiseAbs().maxCoeff(); }

// φ_{εB} - [A0(P² - 1) + ε(A1(P³ - P)cos θ - 2A0 ℙ_{εB}B)] at the nodes.
double cl1_defect(const GsDirichlet& d, const FourierSeries& b) {
  const auto& k = d.constants();
  const auto& g = *d.grid();
  const DirichletSolution sol = d.solve(b);
  const DiskField ext = poisson_domain(b, b, k.eps, d.grid());
  double worst = 0;
  for (int j = 0; j < g.n_theta(); ++j)
    for (int i = 0; i < g.n_rho(); ++i) {
      const double th = g.theta(j);
      const double p = sol.map.physical_radius(g.rho(i), th);
      const double model = k.A0 * (p * p - 1.0) +
                           k.eps * (k.A1 * (p * p * p - p) * std::cos(th) - 2.0 * k.A0 * ext(i, j));
      worst = std::max(worst, std::abs(sol.phi(i, j) - model));
    }
  return worst;
}

FourierSeries bdot_cos2() {
  FourierSeries b = FourierSeries::cosine(2);
  b.mark_X();
  return b;
}

// Shared shape solves: CL5..CL8 all read the converged state at the same ε.
struct ShapeResult {
  ShapeState state;
  DirichletSolution solution;
};

ShapeResult solve_shape_at(const Fixture& f, double eps, const SweepOptions& o) {
  const ProblemConstants k = make_constants(f.profile, f.R, eps);
  const GsDirichlet d(k, f.profile, grid_for(o), o.newton);
  const ShapeSolver s(d, o.shape);
  ShapeState st = s.solve();
  DirichletSolution sol = d.solve(st.B);
  return {std::move(st), std::move(sol)};
}

double shape_claim_error(ClaimId claim, const Fixture& f, double eps, const ShapeResult& res) {
  const ProblemConstants k = make_constants(f.profile, f.R, eps);
  switch (claim) {
    case ClaimId::CL5: {
      const auto v = res.state.B.sample(512);
      double worst = 0;
      for (double b : v) worst = std::max(worst, std::abs((1.0 + eps * b) * (1.0 + eps * b) - 1.0) / eps);
      return worst;
    }
    case ClaimId::CL6:
      return std::abs(eps * eps * res.state.c_eps_B - eps * eps * k.c_limit());
    case ClaimId::CL7: {
      const auto& g = res.solution.phi.grid();
      double worst = 0;
      for (int j = 0; j < g.n_theta(); ++j)
        for (int i = 0; i < g.n_rho(); ++i) {
          const double p = res.solution.map.physical_radius(g.rho(i), g.theta(j));
          worst = std::max(worst, eps * eps * std::abs(res.solution.phi(i, j) - k.A0 * (p * p - 1.0)));
        }
      return worst;
    }
    case ClaimId::CL8: {
      const double r1 = res.state.parts.c1 / (8.0 * std::numbers::pi * eps * k.A0 * k.A1);
      const double r2 = res.state.parts.c2 / (2.0 * std::numbers::pi * eps * k.R);
      return std::max(std::abs(r1 - 1.0), std::abs(r2 - 1.0));
    }
    default:
      break;
  }
  fail(ErrorKind::InvalidArgument, "not a shape claim");
}

bool is_shape_claim(ClaimId c) { return static_cast<int>(c) >= 5; }

SweepReport finish(ClaimId claim, const Fixture& f, const std::vector<double>& eps,
                   std::vector<double> errors) {
  SweepReport r;
  r.claim = claim;
  r.fixture = f.name;
  r.eps = eps;
  r.errors = std::move(errors);
  r.expected = expected_order(claim);
  for (double e : r.errors)
    if (!(e > 0.0) || !std::isfinite(e)) {
      r.slope = std::numeric_limits<double>::quiet_NaN();
      r.note = "error norm not positive and finite";
      return r;
    }
  r.slope = fit_slope(r.eps, r.errors);
  // Monotone: the error shrinks with ε.
  std::vector<std::size_t> idx(r.eps.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](auto a, auto b) { return r.eps[a] > r.eps[b]; });
  bool monotone = true;
  for (std::size_t i = 1; i < idx.size(); ++i)
    if (!(r.errors[idx[i]] < r.errors[idx[i - 1]])) monotone = false;
  r.verdict = (r.slope >= r.expected - r.band && monotone) ? Verdict::pass : Verdict::fail;
  if (!monotone) r.note = "errors not monotone in eps";
  return r;
}

SweepReport inconclusive(ClaimId claim, const Fixture& f, const std::vector<double>& eps,
                         const std::string& why) {
  SweepReport r;
  r.claim = claim;
  r.fixture = f.name;
  r.eps = eps;
  r.expected = expected_order(claim);
  r.slope = std::numeric_limits<double>::quiet_NaN();
  r.verdict = Verdict::inconclusive;
  r.note = why;
  return r;
}

template <class F>
auto parallel_map(std::size_t n, int threads, F&& fn) {
  using T = decltype(fn(std::size_t{0}));
  std::vector<T> out(n);
  if (threads <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
    return out;
  }
  std::vector<std::future<void>> jobs;
  std::mutex m;
  std::size_t next = 0;
  for (int t = 0; t < std::min<int>(threads, static_cast<int>(n)); ++t)
    jobs.push_back(std::async(std::launch::async, [&] {
      for (;;) {
        std::size_t i;
        {
          std::lock_guard lock(m);
          if (next >= n) return;
          i = next++;
        }
        out[i] = fn(i);
      }
    }));
  for (auto& j : jobs) j.get();
  return out;
}

}  // namespace

double claim_error(ClaimId claim, const Fixture& f, double eps, const SweepOptions& o) {
  if (is_shape_claim(claim)) return shape_claim_error(claim, f, eps, solve_shape_at(f, eps, o));

  const ProblemConstants k = make_constants(f.profile, f.R, eps);
  const GridPtr grid = grid_for(o);
  const GsDirichlet d(k, f.profile, grid, o.newton);
  switch (claim) {
    case ClaimId::CL1: {
      FourierSeries b2 = FourierSeries::cosine(2, 0.3);
      b2.mark_X();
      return std::max(cl1_defect(d, FourierSeries(0)), cl1_defect(d, b2));
    }
    case ClaimId::CL2: {
      const FourierSeries bd = bdot_cos2();
      const DiskField phi_dot = d.shape_derivative(bd);
      const DiskField model = poisson_disk(bd, grid) * (-2.0 * eps * k.A0) +
                              (op_T(bd, grid) * (k.A0 / (2.0 * k.R)) -
                               poisson_disk(bd.times_cos(), grid) * (2.0 * k.A1)) *
                                  (eps * eps);
      return sup(phi_dot.values() - model.values());
    }
    case ClaimId::CL3: {
      const FourierSeries bd = bdot_cos2();
      const DiskField phi_dot = d.shape_derivative(bd);
      const Eigen::MatrixXd dr = grid->apply_d_rho(phi_dot.values());
      const FourierSeries model = dn_map_disk(bd) * (-2.0 * eps * k.A0) -
                                  (op_Tprime(bd) * (k.A0 / k.R) + dn_map_disk(bd.times_cos()) * k.A1) *
                                      (2.0 * eps * eps);
      double worst = 0;
      for (int j = 0; j < grid->n_theta(); ++j)
        worst = std::max(worst, std::abs(dr(0, j) - model(grid->theta(j))));
      return worst;
    }
    case ClaimId::CL4: {
      const ShapeSolver s(d);
      const DirichletSolution sol = d.solve(FourierSeries(0));
      const Eigen::VectorXd fn = s.functional_F_nodes(sol, s.neumann_parts(sol).c);
      return (fn.array() - k.kappa).abs().maxCoeff();
    }
    default:
      break;
  }
  fail(ErrorKind::InvalidArgument, "unhandled claim");
}

SweepReport run_claim(ClaimId claim, const Fixture& f, const std::vector<double>& eps,
                      const SweepOptions& o) {
  validate_eps_list(eps, o.shape.eps_max);
  try {
    auto errors = parallel_map(eps.size(), o.threads,
                               [&](std::size_t i) { return claim_error(claim, f, eps[i], o); });
    return finish(claim, f, eps, std::move(errors));
  } catch (const Error& e) {
    return inconclusive(claim, f, eps, e.what());
  }
}

std::vector<SweepReport> run_all(const Fixture& f, const std::vector<double>& eps,
                                 const SweepOptions& o) {
  validate_eps_list(eps, o.shape.eps_max);
  const auto claims = all_claims();

  // Shape solves once per ε; a failure marks every shape claim inconclusive.
  struct Shared {
    std::optional<ShapeResult> res;
    std::string error;
  };
  auto shared = parallel_map(eps.size(), o.threads, [&](std::size_t i) {
    Shared s;
    try {
      s.res = solve_shape_at(f, eps[i], o);
    } catch (const Error& e) {
      s.error = e.what();
    }
    return s;
  });

  auto reports = parallel_map(claims.size(), o.threads, [&](std::size_t c) {
    const ClaimId id = claims[c];
    std::vector<double> errors;
    try {
      for (std::size_t i = 0; i < eps.size(); ++i) {
        if (!is_shape_claim(id)) {
          errors.push_back(claim_error(id, f, eps[i], o));
          continue;
        }
        if (!shared[i].res) return inconclusive(id, f, eps, shared[i].error);
        errors.push_back(shape_claim_error(id, f, eps[i], *shared[i].res));
      }
    } catch (const Error& e) {
      return inconclusive(id, f, eps, e.what());
    }
    return finish(id, f, eps, std::move(errors));
  });
  return reports;
}

bool Scorecard::all_pass() const {
  if (reports.empty()) return false;
  return std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.verdict == Verdict::pass; });
}

std::vector<std::string> Scorecard::failing() const {
  std::vector<std::string> out;
  for (const auto& r : reports)
    if (r.verdict != Verdict::pass) out.push_back(to_string(r.claim) + "/" + r.fixture);
  return out;
}

nlohmann::json Scorecard::json() const {
  nlohmann::json j;
  j["claims"] = nlohmann::json::array();
  for (const auto& r : reports) j["claims"].push_back(to_json(r));
  j["all_pass"] = all_pass();
  j["failing"] = failing();
  std::map<std::string, int> coverage;
  for (const auto& r : reports) coverage[to_string(r.claim)] += 1;
  j["coverage"] = coverage;
  return j;
}

std::string Scorecard::table() const {
  std::ostringstream os;
  os << std::left << std::setw(6) << "claim" << std::setw(11) << "fixture" << std::setw(10) << "slope"
     << std::setw(10) << "expected" << std::setw(14) << "verdict" << "errors\n";
  for (const auto& r : reports) {
    std::ostringstream slope;
    if (std::isfinite(r.slope))
      slope << std::fixed << std::setprecision(2) << r.slope;
    else
      slope << "-";
    os << std::left << std::setw(6) << to_string(r.claim) << std::setw(11) << r.fixture << std::setw(10)
       << slope.str() << std::setw(10) << r.expected << std::setw(14) << to_string(r.verdict);
    for (double e : r.errors) os << std::scientific << std::setprecision(3) << e << ' ';
    if (!r.note.empty()) os << " (" << r.note << ')';
    os << std::defaultfloat << '\n';
  }
  return os.str();
}

Scorecard scorecard(std::vector<SweepReport> reports) { return Scorecard{std::move(reports)}; }

std::vector<double> fast_eps_list() { return {0.04, 0.02, 0.01}; }
std::vector<double> thorough_eps_list() { return {0.04, 0.02, 0.01, 0.005, 0.0025}; }

}  // namespace gsod
