#include "ksfem/fem.hpp"

#include <array>
#include <cmath>

namespace ksfem {

namespace {

struct TriQuadrature {
  // 7-point degree-5 rule in barycentric coordinates, weights sum to 1.
  std::array<std::array<double, 3>, 7> bary;
  std::array<double, 7> weight;
};

const TriQuadrature& tri_rule() {
  static const TriQuadrature rule = [] {
    TriQuadrature r{};
    const double s15 = std::sqrt(15.0);
    const double a1 = (6.0 - s15) / 21.0, w1 = (155.0 - s15) / 1200.0;
    const double a2 = (6.0 + s15) / 21.0, w2 = (155.0 + s15) / 1200.0;
    r.bary[0] = {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
    r.weight[0] = 9.0 / 40.0;
    const double b1 = 1.0 - 2.0 * a1;
    r.bary[1] = {a1, a1, b1};
    r.bary[2] = {a1, b1, a1};
    r.bary[3] = {b1, a1, a1};
    r.weight[1] = r.weight[2] = r.weight[3] = w1;
    const double b2 = 1.0 - 2.0 * a2;
    r.bary[4] = {a2, a2, b2};
    r.bary[5] = {a2, b2, a2};
    r.bary[6] = {b2, a2, a2};
    r.weight[4] = r.weight[5] = r.weight[6] = w2;
    return r;
  }();
  return rule;
}

struct Gauss1D {
  std::vector<double> p, w;
};

const Gauss1D& gauss3() {
  static const Gauss1D g{{-std::sqrt(0.6), 0.0, std::sqrt(0.6)},
                         {5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0}};
  return g;
}

const Gauss1D& gauss4() {
  static const Gauss1D g = [] {
    const double r1 = std::sqrt(3.0 / 7.0 - 2.0 / 7.0 * std::sqrt(6.0 / 5.0));
    const double r2 = std::sqrt(3.0 / 7.0 + 2.0 / 7.0 * std::sqrt(6.0 / 5.0));
    const double w1 = (18.0 + std::sqrt(30.0)) / 36.0;
    const double w2 = (18.0 - std::sqrt(30.0)) / 36.0;
    return Gauss1D{{-r2, -r1, r1, r2}, {w2, w1, w1, w2}};
  }();
  return g;
}

struct TriGeom {
  double area;
  std::array<double, 3> b, c;  // grad phi_a = (b_a, c_a) / (2 area)
};

TriGeom tri_geom(const Mesh& mesh, std::span<const int> cn) {
  const Point& p0 = mesh.node(cn[0]);
  const Point& p1 = mesh.node(cn[1]);
  const Point& p2 = mesh.node(cn[2]);
  TriGeom g;
  g.b = {p1[1] - p2[1], p2[1] - p0[1], p0[1] - p1[1]};
  g.c = {p2[0] - p1[0], p0[0] - p2[0], p1[0] - p0[0]};
  g.area = 0.5 * (g.b[0] * g.c[1] - g.b[1] * g.c[0]);
  return g;
}

struct QuadPointData {
  std::array<double, 4> shape;
  std::array<double, 4> gx, gy;
  double jxw;  // |J| * quadrature weight
  double x, y;
};

// Evaluates bilinear shapes and physical gradients at one reference point.
QuadPointData quad_point(const Mesh& mesh, std::span<const int> cn, double xi,
                         double eta, double w) {
  QuadPointData d;
  d.shape = {0.25 * (1 - xi) * (1 - eta), 0.25 * (1 + xi) * (1 - eta),
             0.25 * (1 + xi) * (1 + eta), 0.25 * (1 - xi) * (1 + eta)};
  const std::array<double, 4> dxi = {-(1 - eta) / 4, (1 - eta) / 4,
                                     (1 + eta) / 4, -(1 + eta) / 4};
  const std::array<double, 4> deta = {-(1 - xi) / 4, -(1 + xi) / 4,
                                      (1 + xi) / 4, (1 - xi) / 4};
  double j00 = 0, j01 = 0, j10 = 0, j11 = 0;
  d.x = d.y = 0.0;
  for (int a = 0; a < 4; ++a) {
    const Point& p = mesh.node(cn[a]);
    j00 += dxi[static_cast<size_t>(a)] * p[0];
    j01 += dxi[static_cast<size_t>(a)] * p[1];
    j10 += deta[static_cast<size_t>(a)] * p[0];
    j11 += deta[static_cast<size_t>(a)] * p[1];
    d.x += d.shape[static_cast<size_t>(a)] * p[0];
    d.y += d.shape[static_cast<size_t>(a)] * p[1];
  }
  const double det = j00 * j11 - j01 * j10;
  d.jxw = det * w;
  for (int a = 0; a < 4; ++a) {
    d.gx[static_cast<size_t>(a)] =
        (j11 * dxi[static_cast<size_t>(a)] - j01 * deta[static_cast<size_t>(a)]) / det;
    d.gy[static_cast<size_t>(a)] =
        (-j10 * dxi[static_cast<size_t>(a)] + j00 * deta[static_cast<size_t>(a)]) / det;
  }
  return d;
}

std::shared_ptr<const SparsePattern> pattern_or_adjacency(
    const Mesh& mesh, std::shared_ptr<const SparsePattern> pattern) {
  return pattern ? pattern : SparsePattern::node_adjacency(mesh);
}

}  // namespace

SparseOperator assemble_mass(const Mesh& mesh,
                             std::shared_ptr<const SparsePattern> pattern) {
  SparseOperator M(pattern_or_adjacency(mesh, std::move(pattern)), true);
  if (mesh.kind() == CellKind::p1_triangle) {
    for (int c = 0; c < mesh.num_cells(); ++c) {
      auto cn = mesh.cell(c);
      const double A = tri_geom(mesh, cn).area;
      for (int a = 0; a < 3; ++a) {
        for (int b = 0; b < 3; ++b) {
          M.add(cn[a], cn[b], (a == b ? 2.0 : 1.0) * A / 12.0);
        }
      }
    }
  } else {
    const auto& g = gauss3();
    for (int c = 0; c < mesh.num_cells(); ++c) {
      auto cn = mesh.cell(c);
      for (size_t qx = 0; qx < g.p.size(); ++qx) {
        for (size_t qy = 0; qy < g.p.size(); ++qy) {
          const auto d = quad_point(mesh, cn, g.p[qx], g.p[qy], g.w[qx] * g.w[qy]);
          for (int a = 0; a < 4; ++a) {
            for (int b = 0; b < 4; ++b) {
              M.add(cn[a], cn[b],
                    d.jxw * d.shape[static_cast<size_t>(a)] *
                        d.shape[static_cast<size_t>(b)]);
            }
          }
        }
      }
    }
  }
  return M;
}

std::vector<double> assemble_lumped_mass(const Mesh& mesh) {
  return assemble_mass(mesh).row_sums();
}

SparseOperator assemble_stiffness(const Mesh& mesh,
                                  std::shared_ptr<const SparsePattern> pattern) {
  SparseOperator K(pattern_or_adjacency(mesh, std::move(pattern)), true);
  if (mesh.kind() == CellKind::p1_triangle) {
    for (int c = 0; c < mesh.num_cells(); ++c) {
      auto cn = mesh.cell(c);
      const auto g = tri_geom(mesh, cn);
      const double f = 1.0 / (4.0 * g.area);
      for (int a = 0; a < 3; ++a) {
        for (int b = 0; b < 3; ++b) {
          K.add(cn[a], cn[b],
                f * (g.b[static_cast<size_t>(a)] * g.b[static_cast<size_t>(b)] +
                     g.c[static_cast<size_t>(a)] * g.c[static_cast<size_t>(b)]));
        }
      }
    }
  } else {
    const auto& g = gauss3();
    for (int c = 0; c < mesh.num_cells(); ++c) {
      auto cn = mesh.cell(c);
      for (size_t qx = 0; qx < g.p.size(); ++qx) {
        for (size_t qy = 0; qy < g.p.size(); ++qy) {
          const auto d = quad_point(mesh, cn, g.p[qx], g.p[qy], g.w[qx] * g.w[qy]);
          for (int a = 0; a < 4; ++a) {
            for (int b = 0; b < 4; ++b) {
              K.add(cn[a], cn[b],
                    d.jxw * (d.gx[static_cast<size_t>(a)] * d.gx[static_cast<size_t>(b)] +
                             d.gy[static_cast<size_t>(a)] * d.gy[static_cast<size_t>(b)]));
            }
          }
        }
      }
    }
  }
  return K;
}

SparseOperator assemble_drift(const Mesh& mesh, const FeField& v,
                              std::shared_ptr<const SparsePattern> pattern) {
  if (&v.mesh() != &mesh) throw Error("assemble_drift: field on another mesh");
  SparseOperator D(pattern_or_adjacency(mesh, std::move(pattern)), false);
  if (mesh.kind() == CellKind::p1_triangle) {
    for (int c = 0; c < mesh.num_cells(); ++c) {
      auto cn = mesh.cell(c);
      const auto g = tri_geom(mesh, cn);
      const double inv2A = 1.0 / (2.0 * g.area);
      double vx = 0.0, vy = 0.0;
      for (int a = 0; a < 3; ++a) {
        vx += v[cn[a]] * g.b[static_cast<size_t>(a)] * inv2A;
        vy += v[cn[a]] * g.c[static_cast<size_t>(a)] * inv2A;
      }
      for (int a = 0; a < 3; ++a) {
        const double gva = (vx * g.b[static_cast<size_t>(a)] +
                            vy * g.c[static_cast<size_t>(a)]) * inv2A;
        const double val = gva * g.area / 3.0;  // int phi_b = area/3
        for (int b = 0; b < 3; ++b) D.add(cn[a], cn[b], val);
      }
    }
  } else {
    const auto& g = gauss3();
    for (int c = 0; c < mesh.num_cells(); ++c) {
      auto cn = mesh.cell(c);
      for (size_t qx = 0; qx < g.p.size(); ++qx) {
        for (size_t qy = 0; qy < g.p.size(); ++qy) {
          const auto d = quad_point(mesh, cn, g.p[qx], g.p[qy], g.w[qx] * g.w[qy]);
          double vx = 0.0, vy = 0.0;
          for (int a = 0; a < 4; ++a) {
            vx += v[cn[a]] * d.gx[static_cast<size_t>(a)];
            vy += v[cn[a]] * d.gy[static_cast<size_t>(a)];
          }
          for (int a = 0; a < 4; ++a) {
            const double gva = vx * d.gx[static_cast<size_t>(a)] +
                               vy * d.gy[static_cast<size_t>(a)];
            for (int b = 0; b < 4; ++b) {
              D.add(cn[a], cn[b], d.jxw * d.shape[static_cast<size_t>(b)] * gva);
            }
          }
        }
      }
    }
  }
  return D;
}

double lumped_inner(const FeField& x, const FeField& y) {
  if (!x.same_mesh(y)) throw Error("lumped_inner: fields on different meshes");
  const auto m = assemble_lumped_mass(x.mesh());
  double s = 0.0;
  for (int i = 0; i < x.size(); ++i) {
    s += m[static_cast<size_t>(i)] * x[i] * y[i];
  }
  return s;
}

FeField averaged_interpolate(const Mesh& mesh, const ScalarFunction& psi) {
  FeField out(mesh);
  for (int i = 0; i < mesh.num_nodes(); ++i) {
    const int c = mesh.node_cells()[static_cast<size_t>(i)].front();
    auto cn = mesh.cell(c);
    double num = 0.0, den = 0.0;
    if (mesh.kind() == CellKind::p1_triangle) {
      const auto& rule = tri_rule();
      const Point& p0 = mesh.node(cn[0]);
      const Point& p1 = mesh.node(cn[1]);
      const Point& p2 = mesh.node(cn[2]);
      const double A = tri_geom(mesh, cn).area;
      for (size_t q = 0; q < rule.weight.size(); ++q) {
        const auto& l = rule.bary[q];
        const double x = l[0] * p0[0] + l[1] * p1[0] + l[2] * p2[0];
        const double y = l[0] * p0[1] + l[1] * p1[1] + l[2] * p2[1];
        const double w = rule.weight[q] * A;
        num += w * psi(x, y);
        den += w;
      }
    } else {
      const auto& g = gauss4();
      for (size_t qx = 0; qx < g.p.size(); ++qx) {
        for (size_t qy = 0; qy < g.p.size(); ++qy) {
          const auto d = quad_point(mesh, cn, g.p[qx], g.p[qy], g.w[qx] * g.w[qy]);
          num += d.jxw * psi(d.x, d.y);
          den += d.jxw;
        }
      }
    }
    out[i] = num / den;
  }
  return out;
}

FeField nodal_interpolate(const Mesh& mesh, const ScalarFunction& psi) {
  FeField out(mesh);
  for (int i = 0; i < mesh.num_nodes(); ++i) {
    const Point& p = mesh.node(i);
    out[i] = psi(p[0], p[1]);
  }
  return out;
}

double integrate_of_field(const FeField& w,
                          const std::function<double(double)>& g) {
  const Mesh& mesh = w.mesh();
  double total = 0.0;
  if (mesh.kind() == CellKind::p1_triangle) {
    const auto& rule = tri_rule();
    for (int c = 0; c < mesh.num_cells(); ++c) {
      auto cn = mesh.cell(c);
      const double A = tri_geom(mesh, cn).area;
      for (size_t q = 0; q < rule.weight.size(); ++q) {
        const auto& l = rule.bary[q];
        const double val = l[0] * w[cn[0]] + l[1] * w[cn[1]] + l[2] * w[cn[2]];
        total += rule.weight[q] * A * g(val);
      }
    }
  } else {
    const auto& gr = gauss4();
    for (int c = 0; c < mesh.num_cells(); ++c) {
      auto cn = mesh.cell(c);
      for (size_t qx = 0; qx < gr.p.size(); ++qx) {
        for (size_t qy = 0; qy < gr.p.size(); ++qy) {
          const auto d = quad_point(mesh, cn, gr.p[qx], gr.p[qy],
                                    gr.w[qx] * gr.w[qy]);
          double val = 0.0;
          for (int a = 0; a < 4; ++a) {
            val += d.shape[static_cast<size_t>(a)] * w[cn[a]];
          }
          total += d.jxw * g(val);
        }
      }
    }
  }
  return total;
}

}  // namespace ksfem
