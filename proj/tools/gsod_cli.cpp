// gsod: solve, validate, export and sweep overdetermined Grad–Shafranov equilibria.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <iomanip>
#include <iostream>
#include <mutex>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "gsod/config.hpp"
#include "gsod/errors.hpp"
#include "gsod/export.hpp"
#include "gsod/validation.hpp"
#include "gsod/weak_form.hpp"

namespace fs = std::filesystem;
using namespace gsod;

namespace {

constexpr int kExitConfig = 1;
constexpr int kExitValidate = 2;
constexpr int kExitDiverged = 3;
constexpr int kExitAssembly = 4;

int exit_code_for(ErrorKind k) {
  switch (k) {
    case ErrorKind::NewtonDiverged:
    case ErrorKind::ShapeDiverged:
    case ErrorKind::MapDegenerate:
    case ErrorKind::NotInvertible:
    case ErrorKind::DegenerateDenominator:
      return kExitDiverged;
    case ErrorKind::NegativeRadicand:
    case ErrorKind::GridTooCoarse:
      return kExitAssembly;
    default:
      return kExitConfig;
  }
}

struct Overrides {
  std::string config;
  std::optional<double> eps, R;
  std::optional<std::string> out;
  std::optional<int> threads;
  std::optional<std::uint64_t> seed;
  bool thorough = false;
};

void add_common(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--config", o.config, "Config JSON file");
  cmd->add_option("--eps", o.eps, "Aspect ratio epsilon");
  cmd->add_option("--R", o.R, "Major radius");
  cmd->add_option("--out", o.out, "Output directory");
  cmd->add_option("--threads", o.threads, "Worker threads")->check(CLI::PositiveNumber);
  cmd->add_option("--seed", o.seed, "Seed for the random weak-form test fields");
}

RunConfig make_config(const Overrides& o) {
  nlohmann::json j = nlohmann::json::object();
  if (!o.config.empty()) {
    std::ifstream in(o.config);
    if (!in) fail(ErrorKind::Config, "cannot open config '" + o.config + "'");
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      fail(ErrorKind::Config, "config '" + o.config + "' is not valid JSON: " + e.what());
    }
  }
  if (o.eps) j["eps"] = *o.eps;
  if (o.R) j["R"] = *o.R;
  if (o.out) j["out_dir"] = *o.out;
  if (o.threads) j["threads"] = *o.threads;
  if (o.seed) j["seed"] = *o.seed;
  return parse_config(j);
}

void print_constants(const ProblemConstants& k) {
  std::cout << "family  " << to_string(k.family) << '\n'
            << std::setprecision(12) << "R       " << k.R << '\n'
            << "eps     " << k.eps << '\n'
            << "A0      " << k.A0 << '\n'
            << "A1      " << k.A1 << '\n'
            << "kappa   " << k.kappa << '\n'
            << "F_R     " << k.FR << '\n'
            << "c_lim   " << k.c_limit() << '\n';
}

int cmd_solve(const Overrides& o) {
  const RunConfig cfg = make_config(o);
  if (!cfg.eps || *cfg.eps <= 0) fail(ErrorKind::Config, "solve needs eps > 0");
  const ProblemConstants k = cfg.constants(*cfg.eps);
  const ProfileFunctions prof = cfg.profile_functions();
  print_constants(k);

  fs::create_directories(cfg.out_dir);
  const GridPtr grid = make_grid(cfg.n_theta, cfg.n_rho);
  const GsDirichlet dirichlet(k, prof, grid, cfg.newton_options());
  std::ofstream diag(fs::path(cfg.out_dir) / "shape_iterations.csv");
  ShapeOptions so = cfg.shape_options();
  so.diagnostics = &diag;
  const auto t0 = std::chrono::steady_clock::now();
  const ShapeState st = ShapeSolver(dirichlet, so).solve();
  spdlog::info("shape iteration converged in {} steps, |G| = {:.3e}, {:.2f} s", st.iter, st.G_sup,
               std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  std::cout << "c_eps_B " << st.c_eps_B << '\n'
            << "c       " << k.eps * k.eps * st.c_eps_B << '\n'
            << "iters   " << st.iter << '\n'
            << "|G|     " << st.G_sup << '\n';

  const Assembly as = assemble(st, k, prof, grid, cfg.grid);
  const FieldChecks ch = check_fields(*as.bundle, as.field);
  spdlog::info("streamline {:.2e}, steady residual {:.2e}, pressure jump {:.2e}, tangency {:.2e}",
               ch.streamline, ch.steady_residual, ch.pressure_jump, ch.tangency);
  spdlog::info("Neumann spread {:.2e}, min F {:.4e}, localizability {:.3e}", ch.neumann_spread,
               ch.min_swirl, ch.localizability);
  const WeakReport weak = verify_weak(as.field, cfg.weak_tests, cfg.seed);
  spdlog::info("weak residuals: momentum {:.2e}, divergence {:.2e}", weak.max_momentum, weak.max_divergence);

  write_solution((fs::path(cfg.out_dir) / "solution.json").string(), cfg, k, st);
  write_csv((fs::path(cfg.out_dir) / "fields.csv").string(), as.field);
  if (cfg.write_vtk) write_vtk((fs::path(cfg.out_dir) / "fields.vtk").string(), as.field, k.R, cfg.vtk_dims);

  nlohmann::json checks = {{"streamline", ch.streamline},
                           {"steady_residual", ch.steady_residual},
                           {"pressure_jump", ch.pressure_jump},
                           {"tangency", ch.tangency},
                           {"neumann_spread", ch.neumann_spread},
                           {"min_swirl", ch.min_swirl},
                           {"localizability", ch.localizability},
                           {"weak_momentum", weak.max_momentum},
                           {"weak_divergence", weak.max_divergence}};
  std::ofstream(fs::path(cfg.out_dir) / "checks.json") << checks.dump(2) << '\n';
  std::cout << "wrote   " << cfg.out_dir << '\n';
  return 0;
}

Fixture fixture_from(const RunConfig& cfg) {
  return {cfg.profile.builtin.empty() ? std::string("custom") : cfg.profile.builtin, cfg.profile_functions(),
          cfg.R};
}

int cmd_validate(const Overrides& o) {
  const RunConfig cfg = make_config(o);
  const std::vector<double> eps = o.thorough ? thorough_eps_list() : cfg.eps_list;
  if (eps.size() < 3) fail(ErrorKind::Config, "need ≥3 epsilons");
  try {
    validate_eps_list(eps, cfg.eps_max);
  } catch (const Error& e) {
    fail(ErrorKind::Config, e.what());
  }
  SweepOptions so;
  so.order = cfg.n_theta;
  so.n_rho = cfg.n_rho;
  so.threads = cfg.threads;
  so.shape = cfg.shape_options();
  so.newton = cfg.newton_options();
  const auto t0 = std::chrono::steady_clock::now();
  const Scorecard sc = scorecard(run_all(fixture_from(cfg), eps, so));
  spdlog::info("validation took {:.2f} s",
               std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  std::cout << sc.table();
  fs::create_directories(cfg.out_dir);
  std::ofstream(fs::path(cfg.out_dir) / "scorecard.json") << sc.json().dump(2) << '\n';
  if (!sc.all_pass()) {
    std::cout << "not passing:";
    for (const auto& f : sc.failing()) std::cout << ' ' << f;
    std::cout << '\n';
  }
  return sc.exit_code() == 0 ? 0 : kExitValidate;
}

int cmd_export(const Overrides& o, const std::string& solution_path) {
  const SolutionFile sol = read_solution(solution_path);
  RunConfig cfg = sol.config;
  if (!o.config.empty()) {
    // The config supplies output settings and the sampling grid; the physics comes from the file.
    const RunConfig req = make_config(o);
    cfg.grid = req.grid;
    cfg.out_dir = req.out_dir;
    cfg.vtk_dims = req.vtk_dims;
  } else if (o.out) {
    cfg.out_dir = *o.out;
  }
  const GridPtr grid = make_grid(cfg.n_theta, cfg.n_rho);
  const Assembly as = assemble(sol.shape, sol.constants, cfg.profile_functions(), grid, cfg.grid);
  fs::create_directories(cfg.out_dir);
  write_csv((fs::path(cfg.out_dir) / "fields.csv").string(), as.field);
  write_vtk((fs::path(cfg.out_dir) / "fields.vtk").string(), as.field, sol.constants.R, cfg.vtk_dims);
  std::cout << "wrote   " << cfg.out_dir << '\n';
  return 0;
}

std::string param_hash(double R, double eps) {
  // FNV-1a over the shortest decimal forms.
  const std::string key = "R=" + format_double(R) + ";eps=" + format_double(eps);
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : key) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

int cmd_sweep(const Overrides& o) {
  const RunConfig cfg = make_config(o);
  const std::vector<double> radii = cfg.R_list.empty() ? std::vector<double>{cfg.R} : cfg.R_list;
  if (cfg.eps_list.empty()) fail(ErrorKind::Config, "sweep needs a non-empty eps_list");
  struct Job {
    double R, eps;
  };
  std::vector<Job> jobs;
  for (double R : radii)
    for (double e : cfg.eps_list) jobs.push_back({R, e});
  const ProfileFunctions prof = cfg.profile_functions();
  const fs::path dir = fs::path(cfg.out_dir) / "sweep";
  fs::create_directories(dir);

  struct Row {
    std::string status = "ok", file;
    double c = 0, g = 0;
    int iters = 0;
  };
  std::vector<Row> rows(jobs.size());
  std::mutex m;
  std::size_t next = 0;
  auto worker = [&] {
    for (;;) {
      std::size_t i;
      {
        std::lock_guard lock(m);
        if (next >= jobs.size()) return;
        i = next++;
      }
      const Job jb = jobs[i];
      Row& row = rows[i];
      try {
        RunConfig local = cfg;
        local.R = jb.R;
        local.eps = jb.eps;
        const ProblemConstants k = make_constants(prof, jb.R, jb.eps);
        const GsDirichlet d(k, prof, make_grid(cfg.n_theta, cfg.n_rho), cfg.newton_options());
        const ShapeState st = ShapeSolver(d, cfg.shape_options()).solve();
        row.file = param_hash(jb.R, jb.eps) + ".json";
        write_solution((dir / row.file).string(), local, k, st);
        row.c = jb.eps * jb.eps * st.c_eps_B;
        row.g = st.G_sup;
        row.iters = st.iter;
      } catch (const Error& e) {
        row.status = to_string(e.kind());
        spdlog::warn("R={} eps={}: {}", jb.R, jb.eps, e.what());
      }
    }
  };
  std::vector<std::future<void>> pool;
  for (int t = 0; t < std::max(1, cfg.threads); ++t) pool.push_back(std::async(std::launch::async, worker));
  for (auto& f : pool) f.get();

  std::ofstream csv(fs::path(cfg.out_dir) / "sweep.csv");
  csv << "R,eps,status,iterations,G_sup,c,file\n";
  bool ok = true;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    const auto& r = rows[i];
    ok = ok && r.status == "ok";
    csv << format_double(jobs[i].R) << ',' << format_double(jobs[i].eps) << ',' << r.status << ',' << r.iters
        << ',' << format_double(r.g) << ',' << format_double(r.c) << ',' << r.file << '\n';
    std::cout << "R=" << jobs[i].R << " eps=" << jobs[i].eps << " " << r.status << '\n';
  }
  return ok ? 0 : kExitDiverged;
}

void setup_logging() {
  auto logger = spdlog::stderr_color_mt("gsod");
  spdlog::set_default_logger(logger);
  spdlog::set_pattern("[%l] %v");
  const char* env = std::getenv("GSOD_LOG");
  const std::string level = env ? env : "error";
  if (level == "debug")
    spdlog::set_level(spdlog::level::debug);
  else if (level == "info")
    spdlog::set_level(spdlog::level::info);
  else
    spdlog::set_level(spdlog::level::err);
}

}  // namespace

int main(int argc, char** argv) {
  setup_logging();
  CLI::App app{"Overdetermined Grad-Shafranov equilibria and compactly supported Euler flows"};
  app.require_subcommand(1);
  Overrides o;
  std::string solution_path;

  auto* solve = app.add_subcommand("solve", "Solve the free-boundary problem and write fields");
  add_common(solve, o);
  auto* validate = app.add_subcommand("validate", "Fit convergence orders for every asymptotic claim");
  add_common(validate, o);
  validate->add_flag("--thorough", o.thorough, "Use the five-point epsilon list");
  auto* exp = app.add_subcommand("export", "Re-assemble a stored solution to CSV and VTK");
  add_common(exp, o);
  exp->add_option("--solution", solution_path, "Solution JSON written by solve")->required();
  auto* sweep = app.add_subcommand("sweep", "Solve over the eps_list × R_list grid of the config");
  add_common(sweep, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitConfig;
  }

  try {
    if (solve->parsed()) return cmd_solve(o);
    if (validate->parsed()) return cmd_validate(o);
    if (exp->parsed()) return cmd_export(o, solution_path);
    if (sweep->parsed()) return cmd_sweep(o);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  }
  return kExitConfig;
}
