#include "ksfem/presets.hpp"

#include <cmath>

namespace ksfem {

Mesh Preset::build_mesh() const {
  if (domain == Domain::disk) {
    return build_disk_mesh(disk_center, disk_radius, rings, sectors);
  }
  std::optional<GradingSpec> grading;
  if (grading_hmin) {
    const double beta = solve_grading_exponent(xmin, xmax, ymin, ymax, nx, ny,
                                               grading_focus, *grading_hmin);
    grading = GradingSpec{grading_focus, beta};
  }
  return build_rect_grid(xmin, xmax, ymin, ymax, nx, ny, cell_kind, grading);
}

Preset resolve_preset(const std::string& name) {
  Preset p;
  p.name = name;
  if (name == "smooth_coalescence") {
    p.domain = Preset::Domain::rectangle;
    p.xmin = -M_PI;
    p.xmax = M_PI;
    p.ymin = -M_PI;
    p.ymax = M_PI;
    p.nx = p.ny = 40;
    p.cell_kind = CellKind::q1_quadrilateral;
    p.u0 = [](double x, double y) {
      const double sx = std::sin(x), sy = std::sin(y);
      return sx * sx * sy * sy;
    };
    p.v0 = [](double x, double y) { return std::cos(x) + std::cos(y) + 2.0; };
    p.k = 0.02;
    p.T = 2.0;
    return p;
  }
  if (name == "center_blowup") {
    p.domain = Preset::Domain::rectangle;
    p.xmin = 0.0;
    p.xmax = 1.0;
    p.ymin = 0.0;
    p.ymax = 1.0;
    p.nx = p.ny = 80;
    p.cell_kind = CellKind::q1_quadrilateral;
    p.grading_hmin = 0.003359;
    p.grading_focus = {0.5, 0.5};
    p.u0 = [](double x, double y) {
      const double r2 = (x - 0.5) * (x - 0.5) + (y - 0.5) * (y - 0.5);
      return 840.0 * std::exp(-84.0 * r2);
    };
    p.v0 = [](double x, double y) {
      const double r2 = (x - 0.5) * (x - 0.5) + (y - 0.5) * (y - 0.5);
      return 420.0 * std::exp(-42.0 * r2);
    };
    p.k = 1e-5;
    p.T = 5e-3;
    return p;
  }
  if (name == "boundary_blowup") {
    p.domain = Preset::Domain::disk;
    p.disk_center = {0.0, 0.1};
    p.disk_radius = 0.5;
    p.rings = 57;
    p.sectors = 200;
    p.u0 = [](double x, double y) {
      return 1000.0 * std::exp(-100.0 * (x * x + y * y));
    };
    p.v0 = [](double, double) { return 0.0; };
    p.k = 1e-4;
    p.T = 0.2;
    return p;
  }
  throw ConfigError("unknown preset '" + name + "'");
}

std::vector<std::string> preset_names() {
  return {"smooth_coalescence", "center_blowup", "boundary_blowup"};
}

}  // namespace ksfem
