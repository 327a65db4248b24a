#include <doctest.h>

#include <cmath>
#include <random>

#include "ksfem/fem.hpp"
#include "ksfem/stab.hpp"
#include "support.hpp"

using namespace ksfem;

TEST_CASE("entropy regularization branches join continuously") {
  const EntropyParams eps{1e-6};
  const double e = eps.epsilon;
  const EntropyValue below = entropy_reg(e, eps);
  CHECK(below.g == doctest::Approx(e * std::log(e) - e).epsilon(1e-14));
  CHECK(below.dg == doctest::Approx(std::log(e)).epsilon(1e-14));
  const EntropyValue above = entropy_reg(e * (1 + 1e-9), eps);
  CHECK(above.g == doctest::Approx(below.g).epsilon(1e-6));
  CHECK(above.dg == doctest::Approx(below.dg).epsilon(1e-6));

  CHECK(entropy_reg(1.0, eps).dg == doctest::Approx(0.0));
  CHECK(entropy_reg(-2.0, eps).ddg == doctest::Approx(1e6));
  CHECK(entropy_reg(2.0, eps).ddg == doctest::Approx(0.5));
}

TEST_CASE("gamma coefficient") {
  const EntropyParams eps{1e-6};
  CHECK(gamma_coeff(2.0, 2.0, eps) == 2.0);
  CHECK(gamma_coeff(-3.0, -3.0, eps) == 0.0);
  CHECK(gamma_coeff(1.0, 2.0, eps) ==
        doctest::Approx(1.0 / std::log(2.0)).epsilon(1e-14));
  CHECK(gamma_coeff(2.0, 1.0, eps) == gamma_coeff(1.0, 2.0, eps));

  // Logarithmic mean lies between the two arguments when both exceed eps.
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> dist(1e-3, 10.0);
  for (int trial = 0; trial < 500; ++trial) {
    const double a = dist(rng), b = dist(rng);
    const double g = gamma_coeff(a, b, eps);
    CHECK(g >= std::min(a, b) - 1e-12);
    CHECK(g <= std::max(a, b) + 1e-12);
    CHECK(g >= 0.0);
  }
  // Always nonnegative, also across the regularized branch.
  std::uniform_real_distribution<double> wide(-5.0, 5.0);
  for (int trial = 0; trial < 500; ++trial) {
    CHECK(gamma_coeff(wide(rng), wide(rng), eps) >= 0.0);
  }
}

TEST_CASE("shock detector at planted extrema") {
  const Mesh m = build_rect_grid(0, 1, 0, 1, 4, 4, CellKind::q1_quadrilateral);
  const auto stars = build_node_stars(m);
  const int center = 2 * 5 + 2;

  FeField spike(m);
  spike[center] = 1.0;
  const DetectorParams extrema{2.0, DetectorMode::extrema};
  const DetectorParams minima{2.0, DetectorMode::minima_only};

  const auto a_max = shock_detector(spike, stars, extrema);
  CHECK(a_max[static_cast<size_t>(center)] == 1.0);
  const auto a_max_min = shock_detector(spike, stars, minima);
  CHECK(a_max_min[static_cast<size_t>(center)] == 0.0);

  FeField dip(m);
  dip[center] = -1.0;
  const auto a_dip = shock_detector(dip, stars, minima);
  CHECK(a_dip[static_cast<size_t>(center)] == 1.0);
}

TEST_CASE("shock detector vanishes on affine fields") {
  const Mesh quad = build_rect_grid(0, 1, 0, 1, 4, 4, CellKind::q1_quadrilateral);
  const Mesh tri = build_rect_grid(0, 1, 0, 1, 4, 4, CellKind::p1_triangle);
  for (const Mesh* m : {&quad, &tri}) {
    const auto stars = build_node_stars(*m);
    const FeField w = nodal_interpolate(
        *m, [](double x, double y) { return 0.3 + 1.7 * x - 0.9 * y; });
    const auto alpha = shock_detector(w, stars, {2.0, DetectorMode::extrema});
    for (int i = 0; i < m->num_nodes(); ++i) {
      if (m->is_boundary_node(i)) continue;
      CHECK(alpha[static_cast<size_t>(i)] <= 1e-12);
    }
  }
}

TEST_CASE("shock detector stays within the unit interval") {
  std::mt19937 rng(4);
  for (int trial = 0; trial < 50; ++trial) {
    const Mesh m = ksfem_test::random_small_mesh(rng);
    const auto stars = build_node_stars(m);
    for (int rep = 0; rep < 20; ++rep) {
      const FeField w(m, ksfem_test::random_vector(rng, m.num_nodes(), -5, 5));
      for (auto mode : {DetectorMode::extrema, DetectorMode::minima_only}) {
        const auto alpha = shock_detector(w, stars, {2.0, mode});
        for (double a : alpha) {
          CHECK(a >= 0.0);
          CHECK(a <= 1.0);
        }
      }
    }
  }
}

TEST_CASE("detector is zero on locally constant fields") {
  const Mesh m = build_rect_grid(0, 1, 0, 1, 3, 3, CellKind::q1_quadrilateral);
  const auto stars = build_node_stars(m);
  const FeField w = nodal_interpolate(m, [](double, double) { return 7.0; });
  for (double a : shock_detector(w, stars, {2.0, DetectorMode::extrema})) {
    CHECK(a == 0.0);
  }
}

TEST_CASE("star chemotaxis vector") {
  std::mt19937 rng(5);
  const EntropyParams eps{1e-6};
  for (int trial = 0; trial < 10; ++trial) {
    const Mesh m = ksfem_test::random_small_mesh(rng);
    const SparseOperator K = assemble_stiffness(m);

    // Constant v: zero vector.
    const FeField u(m, ksfem_test::random_vector(rng, m.num_nodes(), 0.1, 3.0));
    const FeField vc = nodal_interpolate(m, [](double, double) { return 2.0; });
    for (double r : star_chemo_vector(u, vc, K, eps)) CHECK(std::abs(r) <= 1e-13);

    // Constant u > eps: reduces to c * K v.
    const double c = 1.7;
    const FeField uc = nodal_interpolate(m, [&](double, double) { return c; });
    const FeField v(m, ksfem_test::random_vector(rng, m.num_nodes(), -1, 1));
    const auto r = star_chemo_vector(uc, v, K, eps);
    const auto kv = K.apply(v.values());
    for (int i = 0; i < m.num_nodes(); ++i) {
      CHECK(std::abs(r[static_cast<size_t>(i)] - c * kv[static_cast<size_t>(i)]) <=
            1e-12 * std::max(1.0, std::abs(c * kv[static_cast<size_t>(i)])));
    }

    // Entries sum to zero by pairwise antisymmetry.
    const auto rg = star_chemo_vector(u, v, K, eps);
    double sum = 0.0;
    for (double x : rg) sum += x;
    CHECK(std::abs(sum) <= 1e-10);

    // Brute-force pairwise expansion oracle.
    std::vector<double> brute(static_cast<size_t>(m.num_nodes()), 0.0);
    for (int i = 0; i < m.num_nodes(); ++i) {
      for (int j = i + 1; j < m.num_nodes(); ++j) {
        const double kij = K.entry(i, j);
        if (kij == 0.0) continue;
        const double g = gamma_coeff(u[i], u[j], eps);
        const double term = g * (v[j] - v[i]) * kij;
        brute[static_cast<size_t>(i)] += term;
        brute[static_cast<size_t>(j)] -= term;
      }
    }
    for (int i = 0; i < m.num_nodes(); ++i) {
      CHECK(rg[static_cast<size_t>(i)] ==
            doctest::Approx(brute[static_cast<size_t>(i)]).epsilon(1e-12));
    }
  }
}

TEST_CASE("B1 coefficients") {
  const Mesh m = build_rect_grid(0, 1, 0, 1, 4, 4, CellKind::q1_quadrilateral);
  const auto stars = build_node_stars(m);
  const double k = 0.05;
  const DetectorParams det{2.0, DetectorMode::extrema};

  // Affine w: detector off, all coefficients vanish.
  const FeField w_affine =
      nodal_interpolate(m, [](double x, double y) { return x + 2 * y; });
  const FeField v(m, std::vector<double>(static_cast<size_t>(m.num_nodes()), 0.25));
  const StabCoefficients off = coeffs_b1_u(m, stars, w_affine, v, k, det);
  // Boundary nodes keep partial stencils, so alpha can be nonzero there; at
  // interior pairs the coefficients must vanish.
  for (int i = 0; i < m.num_nodes(); ++i) {
    if (m.is_boundary_node(i)) continue;
    for (int j : stars[static_cast<size_t>(i)].neighbors) {
      if (m.is_boundary_node(j)) continue;
      CHECK(std::abs(off.nu(i, j)) <= 1e-10);
    }
  }

  // Random w: symmetry is exact.
  std::mt19937 rng(6);
  const FeField w(m, ksfem_test::random_vector(rng, m.num_nodes(), 0.0, 2.0));
  const StabCoefficients nu = coeffs_b1_u(m, stars, w, v, k, det);
  for (int i = 0; i < m.num_nodes(); ++i) {
    for (int j : stars[static_cast<size_t>(i)].neighbors) {
      CHECK(nu.nu(i, j) == nu.nu(j, i));
      CHECK(nu.nu(i, j) >= 0.0);
    }
  }

  // Single spike: alpha = 1 at the spike and its active neighbors, so the
  // coefficient equals max{f_ij, f_ji, 0} from the assembled matrices.
  const int center = 2 * 5 + 2;
  FeField spike(m);
  spike[center] = 3.0;
  const StabCoefficients nus = coeffs_b1_u(m, stars, spike, v, k, det);
  const auto pattern = SparsePattern::node_adjacency(m);
  SparseOperator f = assemble_stiffness(m, pattern);
  const SparseOperator D = assemble_drift(m, v, pattern);
  const SparseOperator M = assemble_mass(m, pattern);
  f.add_scaled(D, -1.0);
  f.add_scaled(M, 1.0 / k);
  for (int j : stars[static_cast<size_t>(center)].neighbors) {
    const double expect = std::max({f.entry(center, j), f.entry(j, center), 0.0});
    CHECK(nus.nu(center, j) == doctest::Approx(expect).epsilon(1e-13));
  }

  // v-equation variant: f^v = K + (1/k + 1) M.
  const StabCoefficients nuv = coeffs_b1_v(m, stars, spike, k, det);
  SparseOperator fv = assemble_stiffness(m, pattern);
  fv.add_scaled(M, 1.0 / k + 1.0);
  for (int j : stars[static_cast<size_t>(center)].neighbors) {
    const double expect =
        std::max({fv.entry(center, j), fv.entry(j, center), 0.0});
    CHECK(nuv.nu(center, j) == doctest::Approx(expect).epsilon(1e-13));
  }
}

TEST_CASE("stabilizer application on toy graphs") {
  const auto pattern = SparsePattern::from_pairs(2, {{0, 1}});
  StabCoefficients nu(pattern);
  nu.set_pair(0, 1, 3.0);
  const std::vector<double> u{1.0, 0.0};
  const auto y = apply_b1(nu, u);
  CHECK(y[0] == doctest::Approx(3.0));
  CHECK(y[1] == doctest::Approx(-3.0));

  StabCoefficients nu2(pattern);
  nu2.set_pair(0, 1, 2.0);
  const std::vector<double> u2{0.0, 5.0};
  const auto y2 = apply_b2(nu2, u2);
  CHECK(y2[0] == doctest::Approx(-10.0));
  CHECK(y2[1] == doctest::Approx(10.0));
}

TEST_CASE("stabilizers annihilate constants and sum to zero") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const Mesh m = ksfem_test::random_small_mesh(rng);
    const auto pattern = SparsePattern::node_adjacency(m);
    StabCoefficients nu(pattern);
    std::uniform_real_distribution<double> dist(0.0, 2.0);
    for (int i = 0; i < m.num_nodes(); ++i) {
      for (int p = pattern->row_begin(i); p < pattern->row_end(i); ++p) {
        const int j = pattern->col(p);
        if (j > i) nu.set_pair(i, j, dist(rng));
      }
    }
    const std::vector<double> ones(static_cast<size_t>(m.num_nodes()), 4.2);
    for (double y : apply_b1(nu, ones)) CHECK(std::abs(y) <= 1e-12);
    for (double y : apply_b2(nu, ones)) CHECK(std::abs(y) <= 1e-12);

    const std::vector<double> u =
        ksfem_test::random_vector(rng, m.num_nodes(), -3, 3);
    double s1 = 0.0, s2 = 0.0;
    for (double y : apply_b1(nu, u)) s1 += y;
    for (double y : apply_b2(nu, u)) s2 += y;
    CHECK(std::abs(s1) <= 1e-12 * m.num_nodes());
    CHECK(std::abs(s2) <= 1e-12 * m.num_nodes());

    // The assembled graph Laplacian agrees with the direct application.
    SparseOperator A(pattern);
    add_graph_laplacian(A, nu);
    const auto via_matrix = A.apply(u);
    const auto direct = apply_b1(nu, u);
    for (size_t i = 0; i < u.size(); ++i) {
      CHECK(via_matrix[i] == doctest::Approx(direct[i]).epsilon(1e-13));
    }
  }
}

TEST_CASE("B2 coefficients") {
  const EntropyParams eps{1e-6};
  const DetectorParams det{2.0, DetectorMode::minima_only};

  // Constant w: the equal-values branch zeroes every coefficient.
  const Mesh acute = build_rect_grid(0, 1, 0, 1, 4, 4, CellKind::p1_triangle);
  const auto stars = build_node_stars(acute);
  const SparseOperator K = assemble_stiffness(acute);
  const FeField wc = nodal_interpolate(acute, [](double, double) { return 1.0; });
  const FeField v = nodal_interpolate(acute, [](double x, double y) { return x * y; });
  CHECK(coeffs_b2_u(acute, stars, wc, v, K, det, eps).max_abs() == 0.0);

  // Weakly acute mesh, constant v: f = K has nonpositive off-diagonals, so
  // B2^v coefficients vanish.
  std::mt19937 rng(8);
  const FeField w(acute, ksfem_test::random_vector(rng, acute.num_nodes(), 0, 2));
  CHECK(coeffs_b2_v(acute, stars, w, K, det).max_abs() == 0.0);

  // Spike minimum with constant v on a stretched (non-acute) grid: nu equals
  // max{K_ij, K_ji, 0} at the minimum's pairs.
  const Mesh stretched =
      build_rect_grid(0, 8, 0, 2, 4, 4, CellKind::q1_quadrilateral);
  const auto sstars = build_node_stars(stretched);
  const SparseOperator Ks = assemble_stiffness(stretched);
  const int center = 2 * 5 + 2;
  FeField dip(stretched, std::vector<double>(static_cast<size_t>(stretched.num_nodes()), 1.0));
  dip[center] = 0.25;
  const FeField vc = nodal_interpolate(stretched, [](double, double) { return 3.0; });
  const StabCoefficients nu = coeffs_b2_u(stretched, sstars, dip, vc, Ks, det, eps);
  bool some_positive = false;
  for (int j : sstars[static_cast<size_t>(center)].neighbors) {
    const double expect = std::max({Ks.entry(center, j), Ks.entry(j, center), 0.0});
    CHECK(nu.nu(center, j) == doctest::Approx(expect).epsilon(1e-12));
    some_positive = some_positive || expect > 0.0;
  }
  CHECK(some_positive);

  // Same stretched grid: B2^v picks up the positive stiffness entries.
  const StabCoefficients nuv = coeffs_b2_v(stretched, sstars, dip, Ks, det);
  CHECK(nuv.max_abs() > 0.0);

  // Affine w: detector off everywhere in the interior.
  const FeField aff = nodal_interpolate(
      stretched, [](double x, double y) { return x - 0.5 * y; });
  const StabCoefficients nua = coeffs_b2_u(stretched, sstars, aff, vc, Ks, det, eps);
  for (int i = 0; i < stretched.num_nodes(); ++i) {
    if (stretched.is_boundary_node(i)) continue;
    for (int j : sstars[static_cast<size_t>(i)].neighbors) {
      if (stretched.is_boundary_node(j)) continue;
      CHECK(std::abs(nua.nu(i, j)) <= 1e-10);
    }
  }
}
