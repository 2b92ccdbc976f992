#include "gsod/export.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "gsod/errors.hpp"
#include "gsod/spectral_ops.hpp"

namespace gsod {

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

nlohmann::json solution_json(const RunConfig& config, const ProblemConstants& k, const ShapeState& st) {
  nlohmann::json j;
  j["format"] = "gsod-solution";
  j["version"] = 1;
  RunConfig cfg = config;
  cfg.eps = k.eps;
  cfg.R = k.R;
  j["config"] = to_json(cfg);
  j["constants"] = {{"R", k.R},   {"eps", k.eps},   {"a", k.a},         {"b", k.b},
                    {"A0", k.A0}, {"A1", k.A1},     {"kappa", k.kappa}, {"F_R", k.FR},
                    {"family", to_string(k.family)}, {"c_limit", k.c_limit()}};
  j["B"] = to_json(st.B);
  j["c_eps_B"] = st.c_eps_B;
  j["c"] = k.eps * k.eps * st.c_eps_B;
  j["c1"] = st.parts.c1;
  j["c2"] = st.parts.c2;
  j["G_sup"] = st.G_sup;
  j["iterations"] = st.iter;
  j["converged"] = st.converged;
  return j;
}

void write_solution(const std::string& path, const RunConfig& config, const ProblemConstants& consts,
                    const ShapeState& state) {
  std::ofstream out(path);
  if (!out) fail(ErrorKind::Io, "cannot write '" + path + "'");
  out << solution_json(config, consts, state).dump(2) << '\n';
}

SolutionFile read_solution(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Io, "cannot open solution file '" + path + "'");
  try {
    nlohmann::json j;
    in >> j;
    if (j.value("format", std::string{}) != "gsod-solution") fail(ErrorKind::Io, "not a solution file");
    SolutionFile s;
    s.config = parse_config(j.at("config"));
    if (!s.config.eps) fail(ErrorKind::Io, "solution file lacks eps");
    s.constants = s.config.constants(*s.config.eps);
    s.shape.B = fourier_from_json(j.at("B"));
    s.shape.B = project_X(s.shape.B);
    s.shape.c_eps_B = j.at("c_eps_B").get<double>();
    s.shape.parts = {j.value("c1", 0.0), j.value("c2", 0.0), s.shape.c_eps_B};
    s.shape.G_sup = j.value("G_sup", 0.0);
    s.shape.iter = j.value("iterations", 0);
    s.shape.converged = j.value("converged", false);
    if (!s.shape.converged) fail(ErrorKind::Io, "solution file holds an unconverged state");
    return s;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::Io, "corrupt solution file '" + path + "': " + e.what());
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Io) throw;
    fail(ErrorKind::Io, "corrupt solution file '" + path + "': " + e.what());
  }
}

namespace {
const char* kCsvHeader = "r,z,inside,u_r,u_phi,u_z,p,omega_r,omega_phi,omega_z,psi";
}

void write_csv(std::ostream& out, const AxiField& f) {
  out << kCsvHeader << '\n';
  for (int j = 0; j < f.nz; ++j)
    for (int i = 0; i < f.nr; ++i) {
      const auto k = static_cast<std::size_t>(f.index(i, j));
      out << format_double(f.r[static_cast<std::size_t>(i)]) << ',' << format_double(f.z[static_cast<std::size_t>(j)])
          << ',' << int(f.inside[k]);
      for (const auto* v : {&f.u_r, &f.u_phi, &f.u_z, &f.p, &f.omega_r, &f.omega_phi, &f.omega_z, &f.psi})
        out << ',' << format_double((*v)[k]);
      out << '\n';
    }
}

void write_csv(const std::string& path, const AxiField& f) {
  std::ofstream out(path);
  if (!out) fail(ErrorKind::Io, "cannot write '" + path + "'");
  write_csv(out, f);
}

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Io, "cannot open '" + path + "'");
  CsvTable t;
  std::string line;
  if (!std::getline(in, line)) fail(ErrorKind::Io, "empty CSV '" + path + "'");
  std::stringstream hs(line);
  for (std::string cell; std::getline(hs, cell, ',');) t.header.push_back(cell);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    const char* p = line.data();
    const char* end = p + line.size();
    while (p <= end) {
      const char* comma = std::find(p, end, ',');
      double v = 0;
      const auto res = std::from_chars(p, comma, v);
      if (res.ec != std::errc{} || res.ptr != comma) fail(ErrorKind::Io, "bad CSV number in '" + path + "'");
      row.push_back(v);
      p = comma + 1;
    }
    if (row.size() != t.header.size()) fail(ErrorKind::Io, "ragged CSV row in '" + path + "'");
    t.rows.push_back(std::move(row));
  }
  return t;
}

namespace {

struct Meridional {
  double u_r = 0, u_phi = 0, u_z = 0, p = 0;
};

Meridional bilinear(const AxiField& f, double r, double z) {
  Meridional out{0, 0, 0, f.outside_pressure};
  const double dr = f.dr(), dz = f.dz();
  const double a = (r - f.r.front()) / dr, b = (z - f.z.front()) / dz;
  if (!(a >= 0 && b >= 0 && a <= f.nr - 1 && b <= f.nz - 1)) return out;
  const int i = std::min(static_cast<int>(a), f.nr - 2), j = std::min(static_cast<int>(b), f.nz - 2);
  const double s = a - i, t = b - j;
  auto mix = [&](const std::vector<double>& v) {
    auto at = [&](int ii, int jj) { return v[static_cast<std::size_t>(f.index(ii, jj))]; };
    return (1 - s) * (1 - t) * at(i, j) + s * (1 - t) * at(i + 1, j) + (1 - s) * t * at(i, j + 1) +
           s * t * at(i + 1, j + 1);
  };
  return {mix(f.u_r), mix(f.u_phi), mix(f.u_z), mix(f.p)};
}

}  // namespace

void write_vtk(std::ostream& out, const AxiField& f, double major_radius, std::array<int, 3> dims) {
  const double w = std::max(-f.z.front(), f.z.back());
  const double xmax = major_radius + w;
  const double sx = 2.0 * xmax / (dims[0] - 1), sy = 2.0 * xmax / (dims[1] - 1), sz = 2.0 * w / (dims[2] - 1);
  const long n = static_cast<long>(dims[0]) * dims[1] * dims[2];
  out << "# vtk DataFile Version 3.0\n"
      << "gsod axisymmetric Euler flow, zero-extended\n"
      << "ASCII\n"
      << "DATASET STRUCTURED_POINTS\n"
      << "DIMENSIONS " << dims[0] << ' ' << dims[1] << ' ' << dims[2] << '\n'
      << "ORIGIN " << format_double(-xmax) << ' ' << format_double(-xmax) << ' ' << format_double(-w) << '\n'
      << "SPACING " << format_double(sx) << ' ' << format_double(sy) << ' ' << format_double(sz) << '\n'
      << "POINT_DATA " << n << '\n';
  std::vector<Meridional> samples;
  samples.reserve(static_cast<std::size_t>(n));
  for (int k = 0; k < dims[2]; ++k)
    for (int j = 0; j < dims[1]; ++j)
      for (int i = 0; i < dims[0]; ++i) {
        const double x = -xmax + i * sx, y = -xmax + j * sy, z = -w + k * sz;
        samples.push_back(bilinear(f, std::hypot(x, y), z));
      }
  out << "SCALARS pressure double 1\nLOOKUP_TABLE default\n";
  for (const auto& m : samples) out << format_double(m.p) << '\n';
  out << "VECTORS velocity double\n";
  std::size_t q = 0;
  for (int k = 0; k < dims[2]; ++k)
    for (int j = 0; j < dims[1]; ++j)
      for (int i = 0; i < dims[0]; ++i, ++q) {
        const double x = -xmax + i * sx, y = -xmax + j * sy;
        const double r = std::hypot(x, y);
        const double c = r > 0 ? x / r : 1.0, s = r > 0 ? y / r : 0.0;
        const auto& m = samples[q];
        out << format_double(m.u_r * c - m.u_phi * s) << ' ' << format_double(m.u_r * s + m.u_phi * c) << ' '
            << format_double(m.u_z) << '\n';
      }
}

void write_vtk(const std::string& path, const AxiField& f, double major_radius, std::array<int, 3> dims) {
  std::ofstream out(path);
  if (!out) fail(ErrorKind::Io, "cannot write '" + path + "'");
  write_vtk(out, f, major_radius, dims);
}

}  // namespace gsod
