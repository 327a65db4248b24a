// Shared helpers for the test suites: seeded random fields and meshes plus a
// dense Gaussian-elimination oracle kept independent of the library solver.
#pragma once

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "ksfem/fe_field.hpp"
#include "ksfem/mesh.hpp"
#include "ksfem/sparse.hpp"

namespace ksfem_test {

inline std::vector<double> random_vector(std::mt19937& rng, int n, double lo,
                                         double hi) {
  std::uniform_real_distribution<double> dist(lo, hi);
  std::vector<double> v(static_cast<size_t>(n));
  for (auto& x : v) x = dist(rng);
  return v;
}

/// Random small mesh: a rectangle grid (tri or quad, interior nodes jittered
/// for triangles) or a small disk triangulation.
inline ksfem::Mesh random_small_mesh(std::mt19937& rng) {
  std::uniform_int_distribution<int> pick(0, 2);
  const int which = pick(rng);
  std::uniform_int_distribution<int> counts(2, 5);
  if (which == 0) {
    return ksfem::build_rect_grid(0.0, 1.0, 0.0, 1.0, counts(rng), counts(rng),
                                  ksfem::CellKind::q1_quadrilateral);
  }
  if (which == 1) {
    const int nx = counts(rng), ny = counts(rng);
    ksfem::Mesh base = ksfem::build_rect_grid(0.0, 1.0, 0.0, 1.0, nx, ny,
                                              ksfem::CellKind::p1_triangle);
    // Jitter interior nodes by a fraction of the spacing; stays conforming.
    std::vector<ksfem::Point> nodes = base.nodes();
    std::uniform_real_distribution<double> jitter(-0.2, 0.2);
    const double hx = 1.0 / nx, hy = 1.0 / ny;
    for (int i = 0; i < base.num_nodes(); ++i) {
      if (base.is_boundary_node(i)) continue;
      nodes[static_cast<size_t>(i)][0] += jitter(rng) * hx;
      nodes[static_cast<size_t>(i)][1] += jitter(rng) * hy;
    }
    std::vector<int> cells;
    for (int c = 0; c < base.num_cells(); ++c) {
      for (int v : base.cell(c)) cells.push_back(v);
    }
    return ksfem::Mesh(ksfem::CellKind::p1_triangle, std::move(nodes),
                       std::move(cells));
  }
  std::uniform_int_distribution<int> rings(1, 4), sectors(4, 10);
  return ksfem::build_disk_mesh({0.0, 0.0}, 1.0, rings(rng), sectors(rng));
}

/// Dense Gaussian elimination with partial pivoting; the oracle for the
/// sparse direct solver.
inline std::vector<double> dense_solve(std::vector<std::vector<double>> A,
                                       std::vector<double> b) {
  const int n = static_cast<int>(b.size());
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r) {
      if (std::abs(A[static_cast<size_t>(r)][static_cast<size_t>(col)]) >
          std::abs(A[static_cast<size_t>(piv)][static_cast<size_t>(col)])) {
        piv = r;
      }
    }
    if (A[static_cast<size_t>(piv)][static_cast<size_t>(col)] == 0.0) {
      throw std::runtime_error("dense_solve: singular");
    }
    std::swap(A[static_cast<size_t>(piv)], A[static_cast<size_t>(col)]);
    std::swap(b[static_cast<size_t>(piv)], b[static_cast<size_t>(col)]);
    for (int r = col + 1; r < n; ++r) {
      const double f = A[static_cast<size_t>(r)][static_cast<size_t>(col)] /
                       A[static_cast<size_t>(col)][static_cast<size_t>(col)];
      if (f == 0.0) continue;
      for (int c2 = col; c2 < n; ++c2) {
        A[static_cast<size_t>(r)][static_cast<size_t>(c2)] -=
            f * A[static_cast<size_t>(col)][static_cast<size_t>(c2)];
      }
      b[static_cast<size_t>(r)] -= f * b[static_cast<size_t>(col)];
    }
  }
  std::vector<double> z(static_cast<size_t>(n), 0.0);
  for (int r = n - 1; r >= 0; --r) {
    double acc = b[static_cast<size_t>(r)];
    for (int c2 = r + 1; c2 < n; ++c2) {
      acc -= A[static_cast<size_t>(r)][static_cast<size_t>(c2)] *
             z[static_cast<size_t>(c2)];
    }
    z[static_cast<size_t>(r)] = acc / A[static_cast<size_t>(r)][static_cast<size_t>(r)];
  }
  return z;
}

inline std::vector<std::vector<double>> densify(const ksfem::SparseOperator& A) {
  const int n = A.rows();
  std::vector<std::vector<double>> d(static_cast<size_t>(n),
                                     std::vector<double>(static_cast<size_t>(n), 0.0));
  for (int i = 0; i < n; ++i) {
    for (int p = A.pattern().row_begin(i); p < A.pattern().row_end(i); ++p) {
      d[static_cast<size_t>(i)][static_cast<size_t>(A.pattern().col(p))] =
          A.value_at(p);
    }
  }
  return d;
}

}  // namespace ksfem_test
