#include "ksfem/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <set>
#include <sstream>

namespace ksfem {

namespace {

double cross2(const Point& a, const Point& b) {
  return a[0] * b[1] - a[1] * b[0];
}

double dot2(const Point& a, const Point& b) {
  return a[0] * b[0] + a[1] * b[1];
}

Point sub(const Point& a, const Point& b) { return {a[0] - b[0], a[1] - b[1]}; }

double norm2(const Point& a) { return std::sqrt(dot2(a, a)); }

double dist(const Point& a, const Point& b) { return norm2(sub(a, b)); }

// Signed area of a CCW polygon given by cell vertices.
double signed_area(const Mesh&, std::span<const Point> pts) {
  double s = 0.0;
  const size_t m = pts.size();
  for (size_t a = 0; a < m; ++a) {
    const Point& p = pts[a];
    const Point& q = pts[(a + 1) % m];
    s += cross2(p, q);
  }
  return 0.5 * s;
}

struct EdgeKey {
  int a, b;  // a < b
  bool operator<(const EdgeKey& o) const {
    return a != o.a ? a < o.a : b < o.b;
  }
};

EdgeKey make_edge(int u, int v) { return {std::min(u, v), std::max(u, v)}; }

}  // namespace

Mesh::Mesh(CellKind kind, std::vector<Point> nodes, std::vector<int> cell_nodes)
    : kind_(kind), nodes_(std::move(nodes)), cell_nodes_(std::move(cell_nodes)) {
  const int m = nodes_per_cell();
  if (cell_nodes_.size() % static_cast<size_t>(m) != 0) {
    throw MeshError("cell connectivity length is not a multiple of " +
                    std::to_string(m));
  }
  num_cells_ = static_cast<int>(cell_nodes_.size()) / m;
  validate();

  node_cells_.assign(nodes_.size(), {});
  for (int c = 0; c < num_cells_; ++c) {
    for (int v : cell(c)) node_cells_[static_cast<size_t>(v)].push_back(c);
  }

  // Boundary nodes: endpoints of edges owned by exactly one cell.
  std::map<EdgeKey, int> edge_count;
  for (int c = 0; c < num_cells_; ++c) {
    auto cn = cell(c);
    const size_t mm = cn.size();
    for (size_t a = 0; a < mm; ++a) {
      ++edge_count[make_edge(cn[a], cn[(a + 1) % mm])];
    }
  }
  boundary_flag_.assign(nodes_.size(), 0);
  for (const auto& [e, count] : edge_count) {
    if (count == 1) {
      boundary_flag_[static_cast<size_t>(e.a)] = 1;
      boundary_flag_[static_cast<size_t>(e.b)] = 1;
    }
  }
  for (int i = 0; i < num_nodes(); ++i) {
    if (boundary_flag_[static_cast<size_t>(i)]) boundary_nodes_.push_back(i);
  }
}

double Mesh::cell_area(int c) const {
  auto cn = cell(c);
  std::array<Point, 4> pts;
  for (size_t a = 0; a < cn.size(); ++a) pts[a] = node(cn[a]);
  return signed_area(*this, std::span<const Point>(pts.data(), cn.size()));
}

void Mesh::validate() const {
  const int n = num_nodes();
  const int m = nodes_per_cell();
  if (n < m) throw MeshError("mesh has fewer nodes than one cell needs");

  std::map<EdgeKey, int> edge_count;
  for (int c = 0; c < num_cells_; ++c) {
    auto cn = cell(c);
    for (int a = 0; a < m; ++a) {
      if (cn[a] < 0 || cn[a] >= n) {
        throw MeshError("cell " + std::to_string(c) +
                        " references invalid node " + std::to_string(cn[a]));
      }
      for (int b = a + 1; b < m; ++b) {
        if (cn[a] == cn[b]) {
          throw MeshError("degenerate cell " + std::to_string(c) +
                          ": repeated node index " + std::to_string(cn[a]));
        }
      }
    }
    std::array<Point, 4> pts;
    for (int a = 0; a < m; ++a) pts[static_cast<size_t>(a)] = node(cn[a]);
    const double area =
        signed_area(*this, std::span<const Point>(pts.data(), m));
    if (!(area > 0.0)) {
      throw MeshError("degenerate cell " + std::to_string(c) +
                      ": nonpositive area " + std::to_string(area));
    }
    if (kind_ == CellKind::q1_quadrilateral) {
      // Corner Jacobians of the bilinear map must stay positive (convexity).
      for (int a = 0; a < 4; ++a) {
        const Point& p = pts[static_cast<size_t>(a)];
        const Point& q = pts[static_cast<size_t>((a + 1) % 4)];
        const Point& r = pts[static_cast<size_t>((a + 3) % 4)];
        if (!(cross2(sub(q, p), sub(r, p)) > 0.0)) {
          throw MeshError("non-convex quadrilateral cell " + std::to_string(c));
        }
      }
    }
    for (int a = 0; a < m; ++a) {
      ++edge_count[make_edge(cn[a], cn[(a + 1) % m])];
    }
  }
  for (const auto& [e, count] : edge_count) {
    if (count > 2) {
      throw MeshError("non-conforming mesh: edge (" + std::to_string(e.a) +
                      "," + std::to_string(e.b) + ") shared by " +
                      std::to_string(count) + " cells");
    }
  }
  std::map<std::pair<double, double>, int> seen;
  for (int i = 0; i < n; ++i) {
    auto [it, inserted] = seen.insert({{nodes_[static_cast<size_t>(i)][0],
                                        nodes_[static_cast<size_t>(i)][1]},
                                       i});
    if (!inserted) {
      throw MeshError("nodes " + std::to_string(it->second) + " and " +
                      std::to_string(i) + " have identical coordinates");
    }
  }
}

namespace {

// Power-law stretch of the uniform parameter t in [0,1] about t_f.
double graded_param(double t, double t_f, double beta) {
  if (t >= t_f) {
    const double w = 1.0 - t_f;
    if (w <= 0.0) return t;
    return t_f + w * std::pow((t - t_f) / w, beta);
  }
  const double w = t_f;
  if (w <= 0.0) return t;
  return t_f - w * std::pow((t_f - t) / w, beta);
}

std::vector<double> axis_coords(double lo, double hi, int n, double focus,
                                double beta) {
  std::vector<double> x(static_cast<size_t>(n) + 1);
  const double t_f = std::clamp((focus - lo) / (hi - lo), 0.0, 1.0);
  for (int i = 0; i <= n; ++i) {
    const double t = static_cast<double>(i) / n;
    const double s = (beta == 1.0) ? t : graded_param(t, t_f, beta);
    x[static_cast<size_t>(i)] = lo + s * (hi - lo);
  }
  x.front() = lo;
  x.back() = hi;
  return x;
}

}  // namespace

Mesh build_rect_grid(double xmin, double xmax, double ymin, double ymax,
                     int nx, int ny, CellKind kind,
                     const std::optional<GradingSpec>& grading) {
  if (nx < 1 || ny < 1) {
    throw MeshError("build_rect_grid: cell counts must be >= 1");
  }
  if (!(xmin < xmax) || !(ymin < ymax)) {
    throw MeshError("build_rect_grid: invalid bounds");
  }
  if (grading && !(grading->exponent >= 1.0) ) {
    throw MeshError("build_rect_grid: grading exponent must be >= 1");
  }
  if (grading && !std::isfinite(grading->exponent)) {
    throw MeshError("build_rect_grid: grading exponent must be finite");
  }

  const Point focus =
      grading ? grading->focus : Point{xmin, ymin};
  const double beta = grading ? grading->exponent : 1.0;
  const auto xs = axis_coords(xmin, xmax, nx, focus[0], beta);
  const auto ys = axis_coords(ymin, ymax, ny, focus[1], beta);

  std::vector<Point> nodes;
  nodes.reserve(static_cast<size_t>(nx + 1) * (ny + 1));
  for (int iy = 0; iy <= ny; ++iy) {
    for (int ix = 0; ix <= nx; ++ix) {
      nodes.push_back({xs[static_cast<size_t>(ix)], ys[static_cast<size_t>(iy)]});
    }
  }
  auto id = [nx](int ix, int iy) { return iy * (nx + 1) + ix; };

  std::vector<int> cells;
  if (kind == CellKind::q1_quadrilateral) {
    cells.reserve(static_cast<size_t>(nx) * ny * 4);
    for (int iy = 0; iy < ny; ++iy) {
      for (int ix = 0; ix < nx; ++ix) {
        cells.insert(cells.end(), {id(ix, iy), id(ix + 1, iy),
                                   id(ix + 1, iy + 1), id(ix, iy + 1)});
      }
    }
  } else {
    cells.reserve(static_cast<size_t>(nx) * ny * 6);
    for (int iy = 0; iy < ny; ++iy) {
      for (int ix = 0; ix < nx; ++ix) {
        const int n00 = id(ix, iy), n10 = id(ix + 1, iy);
        const int n11 = id(ix + 1, iy + 1), n01 = id(ix, iy + 1);
        // Diagonal incident to the cell corner nearest the focus.
        const Point c00 = nodes[static_cast<size_t>(n00)];
        const Point c10 = nodes[static_cast<size_t>(n10)];
        const Point c11 = nodes[static_cast<size_t>(n11)];
        const Point c01 = nodes[static_cast<size_t>(n01)];
        const double d00 = dot2(sub(c00, focus), sub(c00, focus));
        const double d10 = dot2(sub(c10, focus), sub(c10, focus));
        const double d11 = dot2(sub(c11, focus), sub(c11, focus));
        const double d01 = dot2(sub(c01, focus), sub(c01, focus));
        const bool main_diag = std::min(d00, d11) <= std::min(d10, d01);
        if (main_diag) {
          cells.insert(cells.end(), {n00, n10, n11});
          cells.insert(cells.end(), {n00, n11, n01});
        } else {
          cells.insert(cells.end(), {n00, n10, n01});
          cells.insert(cells.end(), {n10, n11, n01});
        }
      }
    }
  }
  return Mesh(kind, std::move(nodes), std::move(cells));
}

double solve_grading_exponent(double xmin, double xmax, double ymin,
                              double ymax, int nx, int ny, const Point& focus,
                              double target_min_edge) {
  if (!(target_min_edge > 0.0)) {
    throw MeshError("solve_grading_exponent: target must be positive");
  }
  auto min_edge_for = [&](double beta) {
    GradingSpec g{focus, beta};
    try {
      const Mesh mesh = build_rect_grid(xmin, xmax, ymin, ymax, nx, ny,
                                        CellKind::q1_quadrilateral, g);
      return min_edge_length(mesh);
    } catch (const MeshError&) {
      return 0.0;  // grading so strong that spacings collapse
    }
  };
  double lo = 1.0, hi = 16.0;
  if (min_edge_for(lo) <= target_min_edge) return lo;
  if (min_edge_for(hi) >= target_min_edge) {
    throw MeshError("solve_grading_exponent: target below reachable range");
  }
  for (int it = 0; it < 100; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (min_edge_for(mid) > target_min_edge) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo < 1e-13) break;
  }
  return 0.5 * (lo + hi);
}

Mesh build_disk_mesh(const Point& center, double radius, int n_rings,
                     int n_sectors) {
  if (n_rings < 1 || n_sectors < 3 || !(radius > 0.0)) {
    throw MeshError("build_disk_mesh: need n_rings >= 1, n_sectors >= 3, "
                    "radius > 0");
  }
  std::vector<Point> nodes;
  nodes.reserve(1 + static_cast<size_t>(n_rings) * n_sectors);
  nodes.push_back(center);
  for (int m = 1; m <= n_rings; ++m) {
    const double r = radius * static_cast<double>(m) / n_rings;
    for (int s = 0; s < n_sectors; ++s) {
      const double th = 2.0 * M_PI * static_cast<double>(s) / n_sectors;
      nodes.push_back({center[0] + r * std::cos(th),
                       center[1] + r * std::sin(th)});
    }
  }
  auto ring_id = [n_sectors](int ring, int s) {
    return 1 + (ring - 1) * n_sectors + (s % n_sectors);
  };
  std::vector<int> cells;
  cells.reserve(static_cast<size_t>(n_sectors) * (2 * n_rings - 1) * 3);
  for (int s = 0; s < n_sectors; ++s) {
    cells.insert(cells.end(), {0, ring_id(1, s), ring_id(1, s + 1)});
  }
  for (int m = 1; m < n_rings; ++m) {
    for (int s = 0; s < n_sectors; ++s) {
      const int i0 = ring_id(m, s), i1 = ring_id(m, s + 1);
      const int o0 = ring_id(m + 1, s), o1 = ring_id(m + 1, s + 1);
      cells.insert(cells.end(), {i0, o0, o1});
      cells.insert(cells.end(), {i0, o1, i1});
    }
  }
  return Mesh(CellKind::p1_triangle, std::move(nodes), std::move(cells));
}

namespace {

[[noreturn]] void parse_fail(const std::string& path, int line,
                             const std::string& what) {
  throw IoError(path + ":" + std::to_string(line) + ": " + what);
}

}  // namespace

Mesh load_mesh(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open mesh file: " + path);
  std::string line;
  int lineno = 0;
  auto next_line = [&]() -> std::string& {
    if (!std::getline(in, line)) parse_fail(path, lineno + 1, "unexpected end of file");
    ++lineno;
    return line;
  };

  std::istringstream header(next_line());
  std::string magic, kind_str;
  int dim = 0, n_nodes = 0, n_cells = 0;
  if (!(header >> magic >> dim >> kind_str >> n_nodes >> n_cells) ||
      magic != "mesh") {
    parse_fail(path, lineno, "expected header 'mesh 2 <tri|quad> <n_nodes> <n_cells>'");
  }
  if (dim != 2) parse_fail(path, lineno, "only 2D meshes are supported");
  CellKind kind;
  if (kind_str == "tri") {
    kind = CellKind::p1_triangle;
  } else if (kind_str == "quad") {
    kind = CellKind::q1_quadrilateral;
  } else {
    parse_fail(path, lineno, "unknown cell kind '" + kind_str + "'");
  }
  if (n_nodes <= 0 || n_cells <= 0) parse_fail(path, lineno, "nonpositive counts");

  std::vector<Point> nodes(static_cast<size_t>(n_nodes));
  for (int i = 0; i < n_nodes; ++i) {
    std::istringstream ls(next_line());
    if (!(ls >> nodes[static_cast<size_t>(i)][0] >> nodes[static_cast<size_t>(i)][1])) {
      parse_fail(path, lineno, "expected two coordinates");
    }
  }
  const int m = kind == CellKind::p1_triangle ? 3 : 4;
  std::vector<int> cells(static_cast<size_t>(n_cells) * m);
  for (int c = 0; c < n_cells; ++c) {
    std::istringstream ls(next_line());
    for (int a = 0; a < m; ++a) {
      if (!(ls >> cells[static_cast<size_t>(c) * m + a])) {
        parse_fail(path, lineno, "expected " + std::to_string(m) + " node indices");
      }
    }
  }
  try {
    return Mesh(kind, std::move(nodes), std::move(cells));
  } catch (const MeshError& e) {
    throw MeshError(path + ": " + e.what());
  }
}

void save_mesh(const Mesh& mesh, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path);
  const char* kind = mesh.kind() == CellKind::p1_triangle ? "tri" : "quad";
  out << "mesh 2 " << kind << ' ' << mesh.num_nodes() << ' '
      << mesh.num_cells() << '\n';
  char buf[64];
  for (int i = 0; i < mesh.num_nodes(); ++i) {
    const Point& p = mesh.node(i);
    std::snprintf(buf, sizeof(buf), "%.17g %.17g", p[0], p[1]);
    out << buf << '\n';
  }
  for (int c = 0; c < mesh.num_cells(); ++c) {
    auto cn = mesh.cell(c);
    for (size_t a = 0; a < cn.size(); ++a) {
      out << cn[a] << (a + 1 < cn.size() ? ' ' : '\n');
    }
  }
  if (!out) throw IoError("write failed: " + path);
}

NodeStar node_star(const Mesh& mesh, int i) {
  if (i < 0 || i >= mesh.num_nodes()) {
    throw MeshError("node_star: invalid node index");
  }
  NodeStar star;
  star.center = i;
  const auto& patch = mesh.node_cells()[static_cast<size_t>(i)];

  std::set<int> nb;
  for (int c : patch) {
    for (int v : mesh.cell(c)) {
      if (v != i) nb.insert(v);
    }
  }
  star.neighbors.assign(nb.begin(), nb.end());
  star.sym.resize(star.neighbors.size());

  // Boundary of the macroelement: cell edges owned by exactly one patch cell.
  std::map<EdgeKey, int> count;
  for (int c : patch) {
    auto cn = mesh.cell(c);
    const size_t m = cn.size();
    for (size_t a = 0; a < m; ++a) {
      ++count[make_edge(cn[a], cn[(a + 1) % m])];
    }
  }
  std::vector<EdgeKey> boundary;
  for (const auto& [e, cnt] : count) {
    if (cnt == 1) boundary.push_back(e);
  }

  const Point ai = mesh.node(i);
  double patch_scale = 0.0;
  for (int j : star.neighbors) {
    patch_scale = std::max(patch_scale, dist(ai, mesh.node(j)));
  }

  for (size_t idx = 0; idx < star.neighbors.size(); ++idx) {
    const int j = star.neighbors[idx];
    const Point aj = mesh.node(j);
    const Point d = sub(ai, aj);  // ray from a_j through a_i
    const double dn = norm2(d);
    const double t_tol = 1e-9;
    double best_t = std::numeric_limits<double>::infinity();
    int bp = -1, bq = -1;
    double bs = 0.0;
    for (const auto& e : boundary) {
      const Point P = mesh.node(e.a);
      const Point Q = mesh.node(e.b);
      const Point pq = sub(Q, P);
      const double denom = cross2(d, pq);
      const double par_eps = 1e-14 * dn * norm2(pq);
      if (std::abs(denom) > par_eps) {
        const Point w = sub(P, ai);
        const double t = cross2(w, pq) / denom;
        double s = cross2(w, d) / denom;
        const double s_tol = 1e-10;
        if (t > t_tol && s >= -s_tol && s <= 1.0 + s_tol && t < best_t) {
          best_t = t;
          bp = e.a;
          bq = e.b;
          bs = std::clamp(s, 0.0, 1.0);
        }
      } else {
        // Parallel; usable only if the segment lies on the ray's line.
        const Point w = sub(P, ai);
        if (std::abs(cross2(w, d)) <= 1e-12 * dn * std::max(patch_scale, norm2(w))) {
          const double tP = dot2(w, d) / (dn * dn);
          const double tQ = dot2(sub(Q, ai), d) / (dn * dn);
          if (tP > t_tol && tP < best_t) {
            best_t = tP; bp = e.a; bq = e.b; bs = 0.0;
          }
          if (tQ > t_tol && tQ < best_t) {
            best_t = tQ; bp = e.a; bq = e.b; bs = 1.0;
          }
        }
      }
    }
    if (bp < 0) continue;  // ray leaves the domain: stencil absent

    SymStencil st;
    st.anchor_length = dn;
    st.sym_length = best_t * dn;
    const double snap = 1e-12;
    if (bs <= snap) {
      st.num_interp = 1;
      st.interp_nodes[0] = bp;
      st.interp_weights[0] = 1.0;
    } else if (bs >= 1.0 - snap) {
      st.num_interp = 1;
      st.interp_nodes[0] = bq;
      st.interp_weights[0] = 1.0;
    } else {
      st.num_interp = 2;
      st.interp_nodes = {bp, bq};
      st.interp_weights = {1.0 - bs, bs};
    }
    star.sym[idx] = st;
  }
  return star;
}

std::vector<NodeStar> build_node_stars(const Mesh& mesh) {
  std::vector<NodeStar> stars;
  stars.reserve(static_cast<size_t>(mesh.num_nodes()));
  for (int i = 0; i < mesh.num_nodes(); ++i) stars.push_back(node_star(mesh, i));
  return stars;
}

namespace {

// Local stiffness kernels used by the acuteness check only; the fem module
// assembles through its own path so the two can cross-check each other.

void tri_local_stiffness(const std::array<Point, 3>& p, double K[3][3]) {
  const double b[3] = {p[1][1] - p[2][1], p[2][1] - p[0][1], p[0][1] - p[1][1]};
  const double c[3] = {p[2][0] - p[1][0], p[0][0] - p[2][0], p[1][0] - p[0][0]};
  const double area2 = b[0] * c[1] - b[1] * c[0];  // 2*area
  const double f = 1.0 / (2.0 * area2);
  for (int a = 0; a < 3; ++a) {
    for (int bb = 0; bb < 3; ++bb) {
      K[a][bb] = f * (b[a] * b[bb] + c[a] * c[bb]);
    }
  }
}

void quad_local_stiffness(const std::array<Point, 4>& p, double K[4][4]) {
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) K[a][b] = 0.0;
  }
  static const double gp[3] = {-std::sqrt(0.6), 0.0, std::sqrt(0.6)};
  static const double gw[3] = {5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};
  for (int qx = 0; qx < 3; ++qx) {
    for (int qy = 0; qy < 3; ++qy) {
      const double xi = gp[qx], eta = gp[qy];
      const double dNdxi[4] = {-(1 - eta) / 4, (1 - eta) / 4, (1 + eta) / 4,
                               -(1 + eta) / 4};
      const double dNdeta[4] = {-(1 - xi) / 4, -(1 + xi) / 4, (1 + xi) / 4,
                                (1 - xi) / 4};
      double J[2][2] = {{0, 0}, {0, 0}};
      for (int a = 0; a < 4; ++a) {
        J[0][0] += dNdxi[a] * p[static_cast<size_t>(a)][0];
        J[0][1] += dNdxi[a] * p[static_cast<size_t>(a)][1];
        J[1][0] += dNdeta[a] * p[static_cast<size_t>(a)][0];
        J[1][1] += dNdeta[a] * p[static_cast<size_t>(a)][1];
      }
      const double det = J[0][0] * J[1][1] - J[0][1] * J[1][0];
      const double w = gw[qx] * gw[qy] * det;
      double gx[4], gy[4];
      for (int a = 0; a < 4; ++a) {
        gx[a] = (J[1][1] * dNdxi[a] - J[0][1] * dNdeta[a]) / det;
        gy[a] = (-J[1][0] * dNdxi[a] + J[0][0] * dNdeta[a]) / det;
      }
      for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) {
          K[a][b] += w * (gx[a] * gx[b] + gy[a] * gy[b]);
        }
      }
    }
  }
}

}  // namespace

AcutenessReport is_weakly_acute(const Mesh& mesh) {
  std::map<EdgeKey, double> offdiag;
  const int m = mesh.nodes_per_cell();
  for (int c = 0; c < mesh.num_cells(); ++c) {
    auto cn = mesh.cell(c);
    double K[4][4];
    if (mesh.kind() == CellKind::p1_triangle) {
      std::array<Point, 3> p{mesh.node(cn[0]), mesh.node(cn[1]),
                             mesh.node(cn[2])};
      double Kt[3][3];
      tri_local_stiffness(p, Kt);
      for (int a = 0; a < 3; ++a) {
        for (int b = 0; b < 3; ++b) K[a][b] = Kt[a][b];
      }
    } else {
      std::array<Point, 4> p{mesh.node(cn[0]), mesh.node(cn[1]),
                             mesh.node(cn[2]), mesh.node(cn[3])};
      quad_local_stiffness(p, K);
    }
    for (int a = 0; a < m; ++a) {
      for (int b = a + 1; b < m; ++b) {
        offdiag[make_edge(cn[a], cn[b])] += K[a][b];
      }
    }
  }
  AcutenessReport report;
  for (const auto& [e, value] : offdiag) {
    if (value > 1e-14) report.offenders.emplace_back(e.a, e.b);
  }
  report.weakly_acute = report.offenders.empty();
  return report;
}

double min_mesh_size(const Mesh& mesh) {
  double h = std::numeric_limits<double>::infinity();
  for (int c = 0; c < mesh.num_cells(); ++c) {
    auto cn = mesh.cell(c);
    double diam = 0.0;
    for (size_t a = 0; a < cn.size(); ++a) {
      for (size_t b = a + 1; b < cn.size(); ++b) {
        diam = std::max(diam, dist(mesh.node(cn[a]), mesh.node(cn[b])));
      }
    }
    h = std::min(h, diam);
  }
  return h;
}

double max_mesh_size(const Mesh& mesh) {
  double h = 0.0;
  for (int c = 0; c < mesh.num_cells(); ++c) {
    auto cn = mesh.cell(c);
    for (size_t a = 0; a < cn.size(); ++a) {
      for (size_t b = a + 1; b < cn.size(); ++b) {
        h = std::max(h, dist(mesh.node(cn[a]), mesh.node(cn[b])));
      }
    }
  }
  return h;
}

double min_edge_length(const Mesh& mesh) {
  double h = std::numeric_limits<double>::infinity();
  for (int c = 0; c < mesh.num_cells(); ++c) {
    auto cn = mesh.cell(c);
    const size_t m = cn.size();
    for (size_t a = 0; a < m; ++a) {
      h = std::min(h, dist(mesh.node(cn[a]), mesh.node(cn[(a + 1) % m])));
    }
  }
  return h;
}

}  // namespace ksfem
