#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ksfem/errors.hpp"

namespace ksfem {

using Point = std::array<double, 2>;

enum class CellKind { p1_triangle, q1_quadrilateral };

/// Power-law node clustering toward a focus point. exponent == 1 keeps the
/// grid uniform; larger exponents pull nodes toward the focus.
struct GradingSpec {
  Point focus{0.0, 0.0};
  double exponent = 1.0;  // >= 1
};

/// Conforming 2D mesh of triangles or quadrilaterals with node coordinates,
/// cell connectivity and the derived boundary node set. Immutable after
/// construction; all builders validate the invariants below.
class Mesh {
 public:
  Mesh(CellKind kind, std::vector<Point> nodes, std::vector<int> cell_nodes);

  CellKind kind() const { return kind_; }
  int num_nodes() const { return static_cast<int>(nodes_.size()); }
  int num_cells() const { return num_cells_; }
  int nodes_per_cell() const { return kind_ == CellKind::p1_triangle ? 3 : 4; }

  const Point& node(int i) const { return nodes_[static_cast<size_t>(i)]; }
  const std::vector<Point>& nodes() const { return nodes_; }

  std::span<const int> cell(int c) const {
    const int m = nodes_per_cell();
    return {cell_nodes_.data() + static_cast<size_t>(c) * m,
            static_cast<size_t>(m)};
  }

  bool is_boundary_node(int i) const {
    return boundary_flag_[static_cast<size_t>(i)] != 0;
  }
  /// Sorted indices of the nodes lying on the domain boundary.
  const std::vector<int>& boundary_nodes() const { return boundary_nodes_; }

  /// Cells incident to each node, ascending cell index.
  const std::vector<std::vector<int>>& node_cells() const {
    return node_cells_;
  }

  double cell_area(int c) const;

 private:
  void validate() const;

  CellKind kind_;
  std::vector<Point> nodes_;
  std::vector<int> cell_nodes_;
  int num_cells_ = 0;
  std::vector<char> boundary_flag_;
  std::vector<int> boundary_nodes_;
  std::vector<std::vector<int>> node_cells_;
};

/// Structured grid of nx-by-ny quadrilaterals on [xmin,xmax]x[ymin,ymax],
/// optionally graded toward a focus and optionally split into triangles.
/// Triangle diagonals point toward the grading focus (or toward (xmin,ymin)
/// when no grading is given) so the refined region stays isotropic.
Mesh build_rect_grid(double xmin, double xmax, double ymin, double ymax,
                     int nx, int ny, CellKind kind,
                     const std::optional<GradingSpec>& grading = std::nullopt);

/// Solves for the grading exponent that makes the smallest node spacing of
/// build_rect_grid match target_min_edge, by bisection on [1, 16].
double solve_grading_exponent(double xmin, double xmax, double ymin,
                              double ymax, int nx, int ny, const Point& focus,
                              double target_min_edge);

/// Deterministic triangulation of a disk: n_rings concentric rings of
/// n_sectors nodes each around a center node. Cell count is
/// n_sectors * (2*n_rings - 1).
Mesh build_disk_mesh(const Point& center, double radius, int n_rings,
                     int n_sectors);

/// Reads the ASCII format "mesh 2 <tri|quad> <n_nodes> <n_cells>" followed by
/// node coordinate lines and zero-based cell connectivity lines.
Mesh load_mesh(const std::string& path);
void save_mesh(const Mesh& mesh, const std::string& path);

/// Interpolation data for the point where the ray from a neighbor through the
/// star center exits the macroelement boundary. Weights are convex and refer
/// to mesh nodes on that boundary.
struct SymStencil {
  double anchor_length = 0.0;  // |a_j - a_i|
  double sym_length = 0.0;     // |a_ij_sym - a_i|
  int num_interp = 0;
  std::array<int, 2> interp_nodes{-1, -1};
  std::array<double, 2> interp_weights{0.0, 0.0};
};

struct NodeStar {
  int center = -1;
  std::vector<int> neighbors;  // ascending, nodes sharing a cell with center
  std::vector<std::optional<SymStencil>> sym;  // parallel to neighbors
};

NodeStar node_star(const Mesh& mesh, int i);
std::vector<NodeStar> build_node_stars(const Mesh& mesh);

struct AcutenessReport {
  bool weakly_acute = false;
  std::vector<std::pair<int, int>> offenders;  // (i, j) with i < j
};

/// A mesh is weakly acute when every off-diagonal entry of the assembled
/// stiffness matrix is <= 1e-14. Uses its own pairwise accumulation rather
/// than the fem assembly path.
AcutenessReport is_weakly_acute(const Mesh& mesh);

/// Minimum over cells of the cell diameter (largest vertex-to-vertex
/// distance within the cell).
double min_mesh_size(const Mesh& mesh);
double max_mesh_size(const Mesh& mesh);
/// Minimum cell edge length; the measure used for grading targets and the
/// locking bound, where the relevant scale is the nodal spacing.
double min_edge_length(const Mesh& mesh);

}  // namespace ksfem
