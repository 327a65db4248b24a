#pragma once

#include <string>
#include <vector>

#include "ksfem/mesh.hpp"
#include "ksfem/solver.hpp"

namespace ksfem {

/// One of the built-in experiments: domain, mesh parameters, initial data and
/// time discretization.
struct Preset {
  std::string name;

  enum class Domain { rectangle, disk } domain = Domain::rectangle;

  // rectangle
  double xmin = 0.0, xmax = 1.0, ymin = 0.0, ymax = 1.0;
  int nx = 1, ny = 1;
  CellKind cell_kind = CellKind::q1_quadrilateral;
  std::optional<double> grading_hmin;  // target minimum node spacing
  Point grading_focus{0.0, 0.0};

  // disk
  Point disk_center{0.0, 0.0};
  double disk_radius = 1.0;
  int rings = 1, sectors = 3;

  ScalarFunction u0;
  ScalarFunction v0;

  double k = 0.02;
  double T = 1.0;
  Algorithm algorithm = Algorithm::alg1;
  int gamma = 1;

  int default_steps() const {
    return static_cast<int>(std::llround(T / k));
  }

  Mesh build_mesh() const;
};

/// smooth_coalescence, center_blowup or boundary_blowup.
Preset resolve_preset(const std::string& name);
std::vector<std::string> preset_names();

}  // namespace ksfem
