#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <nlohmann/json.hpp>

#include "gsod/config.hpp"
#include "gsod/errors.hpp"
#include "gsod/export.hpp"
#include "gsod/validation.hpp"
#include "gsod/weak_form.hpp"

namespace py = pybind11;
using namespace gsod;

namespace {

RunConfig config_from(const std::string& text) { return parse_config(nlohmann::json::parse(text)); }

py::array_t<double> array2d(const std::vector<double>& v, int nr, int nz) {
  py::array_t<double> a({nz, nr});
  std::copy(v.begin(), v.end(), a.mutable_data());
  return a;
}

py::dict constants_dict(const ProblemConstants& k) {
  py::dict d;
  d["family"] = to_string(k.family);
  d["R"] = k.R;
  d["eps"] = k.eps;
  d["a"] = k.a;
  d["b"] = k.b;
  d["A0"] = k.A0;
  d["A1"] = k.A1;
  d["kappa"] = k.kappa;
  d["F_R"] = k.FR;
  d["c_limit"] = k.c_limit();
  return d;
}

py::dict shape_coeffs(const FourierSeries& b) {
  py::dict d;
  for (int n = 0; n <= b.order(); ++n) d[py::int_(n)] = b[n].real();
  return d;
}

FourierSeries shape_from(const std::map<int, double>& cos_amplitudes) {
  FourierSeries f(0);
  for (const auto& [n, a] : cos_amplitudes) {
    if (n < 0) fail(ErrorKind::InvalidArgument, "mode numbers must be >= 0");
    f += n == 0 ? FourierSeries::constant(a) : FourierSeries::cosine(n, a);
  }
  return f;
}

/// A converged solution with its flow evaluator.
class Solution {
 public:
  explicit Solution(const std::string& config_json) : cfg_(config_from(config_json)) {
    if (!cfg_.eps) fail(ErrorKind::Config, "eps is required");
    k_ = cfg_.constants(*cfg_.eps);
    grid_ = make_grid(cfg_.n_theta, cfg_.n_rho);
    const GsDirichlet d(k_, cfg_.profile_functions(), grid_, cfg_.newton_options());
    state_ = ShapeSolver(d, cfg_.shape_options()).solve();
    bundle_ = make_bundle(state_, k_, cfg_.profile_functions(), grid_);
  }

  py::dict constants() const { return constants_dict(k_); }
  double c() const { return bundle_->c_phys(); }
  double c_eps_B() const { return state_.c_eps_B; }
  double G_sup() const { return state_.G_sup; }
  int iterations() const { return state_.iter; }
  py::dict B() const { return shape_coeffs(state_.B); }
  double outside_pressure() const { return bundle_->outside_pressure(); }
  double half_width() const { return bundle_->half_width(); }

  py::dict sample(double r, double z) const {
    const FlowSample s = bundle_->at(r, z);
    py::dict d;
    d["inside"] = s.inside;
    d["psi"] = s.psi;
    d["swirl"] = s.swirl;
    d["u"] = py::make_tuple(s.u_r, s.u_phi, s.u_z);
    d["p"] = s.p;
    d["omega"] = py::make_tuple(s.omega_r, s.omega_phi, s.omega_z);
    return d;
  }

  AxiField field(int nr, int nz, double margin) const { return sample_field(bundle_, {nr, nz, margin}); }

  py::dict field_dict(int nr, int nz, double margin) const {
    const AxiField f = field(nr, nz, margin);
    py::dict d;
    d["r"] = py::array_t<double>(f.r.size(), f.r.data());
    d["z"] = py::array_t<double>(f.z.size(), f.z.data());
    std::vector<double> mask(f.inside.begin(), f.inside.end());
    d["inside"] = array2d(mask, f.nr, f.nz);
    d["u_r"] = array2d(f.u_r, f.nr, f.nz);
    d["u_phi"] = array2d(f.u_phi, f.nr, f.nz);
    d["u_z"] = array2d(f.u_z, f.nr, f.nz);
    d["p"] = array2d(f.p, f.nr, f.nz);
    d["omega_r"] = array2d(f.omega_r, f.nr, f.nz);
    d["omega_phi"] = array2d(f.omega_phi, f.nr, f.nz);
    d["omega_z"] = array2d(f.omega_z, f.nr, f.nz);
    d["psi"] = array2d(f.psi, f.nr, f.nz);
    return d;
  }

  py::dict checks(int nr, int nz) const {
    const FieldChecks ch = check_fields(*bundle_, field(nr, nz, 0.25));
    py::dict d;
    d["streamline"] = ch.streamline;
    d["steady_residual"] = ch.steady_residual;
    d["pressure_jump"] = ch.pressure_jump;
    d["tangency"] = ch.tangency;
    d["neumann_spread"] = ch.neumann_spread;
    d["min_swirl"] = ch.min_swirl;
    d["localizability"] = ch.localizability;
    return d;
  }

  py::dict weak(int n_tests, std::uint64_t seed, int n) const {
    const WeakReport rep = verify_weak(field(n, n, 0.25), n_tests, seed);
    py::dict d;
    d["momentum"] = rep.momentum;
    d["divergence"] = rep.divergence;
    d["max_momentum"] = rep.max_momentum;
    d["max_divergence"] = rep.max_divergence;
    return d;
  }

  void write(const std::string& dir, int nr, int nz) const {
    RunConfig c = cfg_;
    c.out_dir = dir;
    write_solution(dir + "/solution.json", c, k_, state_);
    write_csv(dir + "/fields.csv", field(nr, nz, 0.25));
  }

 private:
  RunConfig cfg_;
  ProblemConstants k_;
  GridPtr grid_;
  ShapeState state_;
  BundlePtr bundle_;
};

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Overdetermined Grad-Shafranov solver and compactly supported Euler flows";

  static py::exception<Error> error(m, "GsodError", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = error;
      py::object inst = exc(std::string(e.what()));
      inst.attr("kind") = to_string(e.kind());
      PyErr_SetObject(error.ptr(), inst.ptr());
    }
  });

  m.def(
      "constants", [](const std::string& cfg) {
        const RunConfig c = config_from(cfg);
        return constants_dict(c.constants(c.eps.value_or(0.0)));
      },
      py::arg("config_json"));

  m.def(
      "solve_dirichlet",
      [](const std::string& cfg, const std::map<int, double>& shape) {
        const RunConfig c = config_from(cfg);
        const ProblemConstants k = c.constants(c.eps.value_or(0.0));
        const GridPtr grid = make_grid(c.n_theta, c.n_rho);
        const DirichletSolution sol =
            GsDirichlet(k, c.profile_functions(), grid, c.newton_options()).solve(shape_from(shape));
        py::dict d;
        d["rho"] = py::array_t<double>(grid->n_rho(), grid->rho_nodes().data());
        d["theta"] = py::array_t<double>(grid->n_theta(), grid->theta_nodes().data());
        const auto& v = sol.phi.values();  // column-major n_rho × n_theta
        py::array_t<double> phi({grid->n_theta(), grid->n_rho()});
        std::copy(v.data(), v.data() + v.size(), phi.mutable_data());
        d["phi"] = phi;
        d["iterations"] = sol.iterations;
        d["residual"] = sol.residual;
        return d;
      },
      py::arg("config_json"), py::arg("shape") = std::map<int, double>{});

  m.def(
      "run_claim",
      [](const std::string& claim, const std::string& fixture, const std::vector<double>& eps) {
        const SweepReport r = run_claim(claim_from_string(claim), fixture_by_name(fixture), eps);
        return to_json(r).dump();
      },
      py::arg("claim"), py::arg("fixture"), py::arg("eps"));

  m.def(
      "scorecard",
      [](const std::string& fixture, const std::vector<double>& eps) {
        validate_eps_list(eps);
        return scorecard(run_all(fixture_by_name(fixture), eps)).json().dump();
      },
      py::arg("fixture"), py::arg("eps"));

  py::class_<Solution>(m, "Solution")
      .def(py::init<const std::string&>(), py::arg("config_json"))
      .def_property_readonly("constants", &Solution::constants)
      .def_property_readonly("c", &Solution::c)
      .def_property_readonly("c_eps_B", &Solution::c_eps_B)
      .def_property_readonly("G_sup", &Solution::G_sup)
      .def_property_readonly("iterations", &Solution::iterations)
      .def_property_readonly("B", &Solution::B)
      .def_property_readonly("outside_pressure", &Solution::outside_pressure)
      .def_property_readonly("half_width", &Solution::half_width)
      .def("sample", &Solution::sample, py::arg("r"), py::arg("z"))
      .def("field", &Solution::field_dict, py::arg("nr") = 129, py::arg("nz") = 129, py::arg("margin") = 0.25)
      .def("checks", &Solution::checks, py::arg("nr") = 129, py::arg("nz") = 129)
      .def("weak", &Solution::weak, py::arg("n_tests") = 20, py::arg("seed") = 1, py::arg("n") = 256)
      .def("write", &Solution::write, py::arg("directory"), py::arg("nr") = 129, py::arg("nz") = 129);
}
