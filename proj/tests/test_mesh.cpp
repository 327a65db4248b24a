#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "ksfem/fem.hpp"
#include "ksfem/mesh.hpp"
#include "support.hpp"

using namespace ksfem;

namespace {

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("rect grid node and cell counts") {
  const Mesh m = build_rect_grid(-M_PI, M_PI, -M_PI, M_PI, 40, 40,
                                 CellKind::q1_quadrilateral);
  CHECK(m.num_nodes() == 1681);
  CHECK(m.num_cells() == 1600);

  const Mesh single = build_rect_grid(0, 1, 0, 1, 1, 1,
                                      CellKind::q1_quadrilateral);
  CHECK(single.num_nodes() == 4);
  CHECK(single.num_cells() == 1);
  CHECK(single.boundary_nodes().size() == 4);

  const Mesh tri = build_rect_grid(0, 1, 0, 1, 3, 2, CellKind::p1_triangle);
  CHECK(tri.num_cells() == 2 * 3 * 2);
}

TEST_CASE("rect grid rejects bad input") {
  CHECK_THROWS_AS(build_rect_grid(0, 1, 0, 1, 0, 1, CellKind::q1_quadrilateral),
                  MeshError);
  CHECK_THROWS_AS(build_rect_grid(1, 0, 0, 1, 2, 2, CellKind::q1_quadrilateral),
                  MeshError);
  CHECK_THROWS_AS(build_rect_grid(0, 1, 0, 1, 2, 2, CellKind::q1_quadrilateral,
                                  GradingSpec{{0.5, 0.5}, 0.5}),
                  MeshError);
}

TEST_CASE("grading exponent hits the requested minimum spacing") {
  const double target = 0.003359;
  const double beta =
      solve_grading_exponent(0, 1, 0, 1, 80, 80, {0.5, 0.5}, target);
  CHECK(beta > 1.0);
  const Mesh m = build_rect_grid(0, 1, 0, 1, 80, 80, CellKind::q1_quadrilateral,
                                 GradingSpec{{0.5, 0.5}, beta});
  CHECK(m.num_nodes() == 81 * 81);
  CHECK(min_edge_length(m) == doctest::Approx(target).epsilon(1e-6));
  // Cells at the focus are squares, so the smallest diameter is the diagonal.
  CHECK(min_mesh_size(m) ==
        doctest::Approx(target * std::sqrt(2.0)).epsilon(1e-6));
}

TEST_CASE("grading with exponent 1 is equispaced") {
  const Mesh m = build_rect_grid(0, 2, 0, 1, 8, 4, CellKind::q1_quadrilateral,
                                 GradingSpec{{0.7, 0.3}, 1.0});
  const double hx = 2.0 / 8, hy = 1.0 / 4;
  for (int iy = 0; iy <= 4; ++iy) {
    for (int ix = 0; ix <= 8; ++ix) {
      const Point& p = m.node(iy * 9 + ix);
      CHECK(std::abs(p[0] - ix * hx) <= 1e-14);
      CHECK(std::abs(p[1] - iy * hy) <= 1e-14);
    }
  }
}

TEST_CASE("disk mesh fan and count formula") {
  const Mesh fan = build_disk_mesh({0, 0}, 1.0, 1, 6);
  CHECK(fan.num_nodes() == 7);
  CHECK(fan.num_cells() == 6);

  // Count oracle: enumerate the construction bands directly.
  for (int nr : {1, 2, 3, 5}) {
    for (int ns : {3, 4, 7, 12}) {
      int expected = ns;                      // central fan
      for (int b = 1; b < nr; ++b) expected += 2 * ns;  // ring bands
      CHECK(expected == ns * (2 * nr - 1));
      const Mesh m = build_disk_mesh({1, 2}, 0.7, nr, ns);
      CHECK(m.num_cells() == expected);
      CHECK(m.num_nodes() == 1 + nr * ns);
      for (int c = 0; c < m.num_cells(); ++c) CHECK(m.cell_area(c) > 0.0);
    }
  }
}

TEST_CASE("disk mesh area approximates the disk") {
  const Mesh m = build_disk_mesh({0, 0}, 1.0, 32, 32);
  double area = 0.0;
  for (int c = 0; c < m.num_cells(); ++c) area += m.cell_area(c);
  CHECK(area == doctest::Approx(M_PI).epsilon(0.02));
}

TEST_CASE("disk mesh rejects degenerate parameters") {
  CHECK_THROWS_AS(build_disk_mesh({0, 0}, 0.0, 3, 8), MeshError);
  CHECK_THROWS_AS(build_disk_mesh({0, 0}, 1.0, 0, 8), MeshError);
  CHECK_THROWS_AS(build_disk_mesh({0, 0}, 1.0, 3, 2), MeshError);
}

TEST_CASE("mesh file load, validation and round trip") {
  const std::string path = temp_path("ksfem_unit_square.mesh");
  {
    std::ofstream out(path);
    out << "mesh 2 tri 4 2\n0 0\n1 0\n1 1\n0 1\n0 1 2\n0 2 3\n";
  }
  const Mesh m = load_mesh(path);
  CHECK(m.num_nodes() == 4);
  CHECK(m.num_cells() == 2);
  CHECK(m.boundary_nodes().size() == 4);

  const std::string out1 = temp_path("ksfem_rt1.mesh");
  const std::string out2 = temp_path("ksfem_rt2.mesh");
  const Mesh graded = build_rect_grid(0, 1, 0, 1, 5, 4, CellKind::p1_triangle,
                                      GradingSpec{{0.37, 0.61}, 1.7});
  save_mesh(graded, out1);
  const Mesh reloaded = load_mesh(out1);
  REQUIRE(reloaded.num_nodes() == graded.num_nodes());
  for (int i = 0; i < graded.num_nodes(); ++i) {
    CHECK(reloaded.node(i)[0] == graded.node(i)[0]);
    CHECK(reloaded.node(i)[1] == graded.node(i)[1]);
  }
  save_mesh(reloaded, out2);
  CHECK(read_file(out1) == read_file(out2));
}

TEST_CASE("mesh file errors carry a location") {
  const std::string repeated = temp_path("ksfem_repeated.mesh");
  {
    std::ofstream out(repeated);
    out << "mesh 2 tri 4 2\n0 0\n1 0\n1 1\n0 1\n0 1 1\n0 2 3\n";
  }
  CHECK_THROWS_WITH_AS(load_mesh(repeated),
                       doctest::Contains("repeated node index"), MeshError);

  const std::string truncated = temp_path("ksfem_truncated.mesh");
  {
    std::ofstream out(truncated);
    out << "mesh 2 tri 4 2\n0 0\n1 0\n";
  }
  CHECK_THROWS_WITH_AS(load_mesh(truncated), doctest::Contains(":4"), IoError);

  const std::string nonconforming = temp_path("ksfem_nonconforming.mesh");
  {
    // Edge (0,1) belongs to three cells.
    std::ofstream out(nonconforming);
    out << "mesh 2 tri 5 3\n0 0\n1 0\n1 1\n0 1\n0.5 -1\n0 1 2\n0 1 3\n0 1 4\n";
  }
  CHECK_THROWS_AS(load_mesh(nonconforming), MeshError);
}

TEST_CASE("node star of a uniform quadrilateral grid") {
  const Mesh m = build_rect_grid(0, 1, 0, 1, 4, 4, CellKind::q1_quadrilateral);
  const int center = 2 * 5 + 2;  // (ix, iy) = (2, 2)
  const NodeStar star = node_star(m, center);
  REQUIRE(star.neighbors.size() == 8);

  const int east = center + 1, west = center - 1;
  const auto it = std::find(star.neighbors.begin(), star.neighbors.end(), east);
  REQUIRE(it != star.neighbors.end());
  const size_t idx = static_cast<size_t>(it - star.neighbors.begin());
  REQUIRE(star.sym[idx].has_value());
  const SymStencil& st = *star.sym[idx];
  CHECK(st.num_interp == 1);
  CHECK(st.interp_nodes[0] == west);
  CHECK(st.interp_weights[0] == doctest::Approx(1.0));
  CHECK(st.anchor_length == doctest::Approx(0.25));
  CHECK(st.sym_length == doctest::Approx(0.25));
}

TEST_CASE("node star of a uniform triangle grid has six neighbors") {
  const Mesh m = build_rect_grid(0, 1, 0, 1, 4, 4, CellKind::p1_triangle);
  const int center = 2 * 5 + 2;
  const NodeStar star = node_star(m, center);
  CHECK(star.neighbors.size() == 6);
  for (const auto& st : star.sym) CHECK(st.has_value());
}

TEST_CASE("corner node has an absent stencil") {
  const Mesh m = build_rect_grid(0, 1, 0, 1, 2, 2, CellKind::q1_quadrilateral);
  const NodeStar star = node_star(m, 0);
  bool absent = false;
  for (const auto& st : star.sym) absent = absent || !st.has_value();
  CHECK(absent);
}

TEST_CASE("stencils reproduce affine functions at the symmetric node") {
  std::mt19937 rng(1234);
  for (int trial = 0; trial < 10; ++trial) {
    const Mesh m = ksfem_test::random_small_mesh(rng);
    auto affine = [](double x, double y) { return 3.0 + 2.0 * x - 5.0 * y; };
    const FeField f = nodal_interpolate(m, affine);
    for (int i = 0; i < m.num_nodes(); ++i) {
      const NodeStar star = node_star(m, i);
      for (size_t idx = 0; idx < star.neighbors.size(); ++idx) {
        if (!star.sym[idx]) continue;
        const SymStencil& st = *star.sym[idx];
        const Point& ai = m.node(i);
        const Point& aj = m.node(star.neighbors[idx]);
        const double dn = st.anchor_length;
        const Point sym{ai[0] + (ai[0] - aj[0]) / dn * st.sym_length,
                        ai[1] + (ai[1] - aj[1]) / dn * st.sym_length};
        double interp = 0.0;
        for (int a = 0; a < st.num_interp; ++a) {
          interp += st.interp_weights[static_cast<size_t>(a)] *
                    f[st.interp_nodes[static_cast<size_t>(a)]];
        }
        CHECK(interp == doctest::Approx(affine(sym[0], sym[1])).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("neighbor sets are symmetric") {
  std::mt19937 rng(99);
  const Mesh m = ksfem_test::random_small_mesh(rng);
  std::vector<NodeStar> stars = build_node_stars(m);
  for (int i = 0; i < m.num_nodes(); ++i) {
    for (int j : stars[static_cast<size_t>(i)].neighbors) {
      const auto& nb = stars[static_cast<size_t>(j)].neighbors;
      CHECK(std::find(nb.begin(), nb.end(), i) != nb.end());
    }
  }
}

TEST_CASE("weak acuteness of standard grids") {
  const Mesh tri = build_rect_grid(0, 1, 0, 1, 4, 4, CellKind::p1_triangle);
  CHECK(is_weakly_acute(tri).weakly_acute);

  const Mesh quad = build_rect_grid(0, 1, 0, 1, 4, 4, CellKind::q1_quadrilateral);
  CHECK(is_weakly_acute(quad).weakly_acute);

  const Mesh stretched =
      build_rect_grid(0, 8, 0, 2, 2, 2, CellKind::q1_quadrilateral);
  const auto report = is_weakly_acute(stretched);
  CHECK_FALSE(report.weakly_acute);
  CHECK_FALSE(report.offenders.empty());
}

TEST_CASE("acuteness agrees with a stiffness matrix scan") {
  std::mt19937 rng(4321);
  for (int trial = 0; trial < 8; ++trial) {
    const Mesh m = ksfem_test::random_small_mesh(rng);
    const auto report = is_weakly_acute(m);
    const SparseOperator K = assemble_stiffness(m);
    std::set<std::pair<int, int>> brute;
    for (int i = 0; i < m.num_nodes(); ++i) {
      for (int p = K.pattern().row_begin(i); p < K.pattern().row_end(i); ++p) {
        const int j = K.pattern().col(p);
        if (j > i && K.value_at(p) > 1e-14) brute.insert({i, j});
      }
    }
    CHECK(report.weakly_acute == brute.empty());
    std::set<std::pair<int, int>> ours(report.offenders.begin(),
                                       report.offenders.end());
    CHECK(ours == brute);
  }
}

TEST_CASE("mesh size measures") {
  const Mesh unit = build_rect_grid(0, 1, 0, 1, 1, 1, CellKind::q1_quadrilateral);
  CHECK(min_mesh_size(unit) == doctest::Approx(std::sqrt(2.0)));

  const Mesh ten = build_rect_grid(0, 1, 0, 1, 10, 10, CellKind::q1_quadrilateral);
  CHECK(min_mesh_size(ten) == doctest::Approx(std::sqrt(2.0) / 10));
  CHECK(min_edge_length(ten) == doctest::Approx(0.1));

  const Mesh disk = build_disk_mesh({0.3, -0.2}, 1.0, 4, 16);
  CHECK(min_mesh_size(disk) > 0.0);
  CHECK(min_mesh_size(disk) <= 2 * M_PI / 16 + 0.05);
}
