#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "gsod/config.hpp"
#include "gsod/euler_assembly.hpp"

namespace gsod {

/// Shortest decimal text that parses back to the same double.
std::string format_double(double v);

/// Everything needed to rebuild a solution: profile, R, ε, B and resolution.
struct SolutionFile {
  RunConfig config;
  ProblemConstants constants;
  ShapeState shape;
};

nlohmann::json solution_json(const RunConfig& config, const ProblemConstants& consts,
                             const ShapeState& state);
void write_solution(const std::string& path, const RunConfig& config, const ProblemConstants& consts,
                    const ShapeState& state);
/// Throws Io for missing or corrupt files.
SolutionFile read_solution(const std::string& path);

/// Columns r, z, inside, u_r, u_phi, u_z, p, omega_r, omega_phi, omega_z, psi.
void write_csv(std::ostream& out, const AxiField& field);
void write_csv(const std::string& path, const AxiField& field);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};
CsvTable read_csv(const std::string& path);

/// Legacy-VTK structured points over the box [-(R+w), R+w]² × [-w, w] with the
/// meridional field rotated about the axis and sampled bilinearly in (r, z).
void write_vtk(std::ostream& out, const AxiField& field, double major_radius, std::array<int, 3> dims);
void write_vtk(const std::string& path, const AxiField& field, double major_radius, std::array<int, 3> dims);

}  // namespace gsod
