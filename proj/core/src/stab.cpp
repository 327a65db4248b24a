#include "ksfem/stab.hpp"

#include <algorithm>
#include <cmath>

#include "ksfem/fem.hpp"

namespace ksfem {

EntropyValue entropy_reg(double s, const EntropyParams& params) {
  const double eps = params.epsilon;
  if (s > eps) {
    return {s * std::log(s) - s, std::log(s), 1.0 / s};
  }
  return {(s * s - eps * eps) / (2.0 * eps) + (std::log(eps) - 1.0) * s,
          s / eps + std::log(eps) - 1.0, 1.0 / eps};
}

double gamma_coeff(double x_i, double x_j, const EntropyParams& params) {
  if (x_j == x_i) return std::max(0.0, x_i);
  const double d = entropy_reg(x_j, params).dg - entropy_reg(x_i, params).dg;
  // Values indistinguishable through g' take the equal-values branch, which
  // is the continuous limit of the quotient.
  if (d == 0.0) return std::max(0.0, x_i);
  return (x_j - x_i) / d;
}

std::vector<double> shock_detector(const FeField& w,
                                   const std::vector<NodeStar>& stars,
                                   const DetectorParams& params) {
  const int n = w.size();
  if (static_cast<int>(stars.size()) != n) {
    throw Error("shock_detector: stars do not match the field's mesh");
  }
  std::vector<double> alpha(static_cast<size_t>(n), 0.0);
  for (int i = 0; i < n; ++i) {
    const NodeStar& star = stars[static_cast<size_t>(i)];
    double jump_sum = 0.0;
    double mean_sum2 = 0.0;  // equals twice the sum of the means
    for (size_t idx = 0; idx < star.neighbors.size(); ++idx) {
      if (!star.sym[idx]) continue;
      const SymStencil& st = *star.sym[idx];
      const int j = star.neighbors[idx];
      double w_sym = 0.0;
      for (int a = 0; a < st.num_interp; ++a) {
        w_sym += st.interp_weights[static_cast<size_t>(a)] *
                 w[st.interp_nodes[static_cast<size_t>(a)]];
      }
      const double dj = (w[j] - w[i]) / st.anchor_length;
      const double ds = (w_sym - w[i]) / st.sym_length;
      jump_sum += dj + ds;
      mean_sum2 += std::abs(dj) + std::abs(ds);
    }
    if (mean_sum2 == 0.0) continue;
    double num = params.mode == DetectorMode::extrema ? std::abs(jump_sum)
                                                      : std::max(jump_sum, 0.0);
    const double ratio = std::min(num / mean_sum2, 1.0);
    alpha[static_cast<size_t>(i)] = std::pow(ratio, params.q);
  }
  return alpha;
}

void StabCoefficients::set_pair(int i, int j, double value) {
  if (i == j) throw Error("StabCoefficients: diagonal pair");
  const int pij = nu_.pattern().find(i, j);
  const int pji = nu_.pattern().find(j, i);
  if (pij < 0 || pji < 0) throw Error("StabCoefficients: pair outside pattern");
  nu_.values()[static_cast<size_t>(pij)] = value;
  nu_.values()[static_cast<size_t>(pji)] = value;
}

double StabCoefficients::max_abs() const {
  double m = 0.0;
  for (double v : nu_.values()) m = std::max(m, std::abs(v));
  return m;
}

StabCoefficients nu_from_f(const SparseOperator& f,
                           const std::vector<double>& alpha) {
  StabCoefficients coeffs(f.pattern_ptr());
  const SparsePattern& pat = f.pattern();
  auto& out = coeffs.raw().values();
  for (int i = 0; i < pat.rows(); ++i) {
    for (int p = pat.row_begin(i); p < pat.row_end(i); ++p) {
      const int j = pat.col(p);
      if (j <= i) continue;
      const double fij = f.value_at(p);
      const double fji = f.entry(j, i);
      const double nu = std::max({alpha[static_cast<size_t>(i)] * fij,
                                  alpha[static_cast<size_t>(j)] * fji, 0.0});
      out[static_cast<size_t>(p)] = nu;
      out[static_cast<size_t>(pat.find(j, i))] = nu;
    }
  }
  return coeffs;
}

SparseOperator b2u_f_matrix(const SparseOperator& stiffness, const FeField& w,
                            const FeField& v, const EntropyParams& params) {
  SparseOperator f(stiffness.pattern_ptr(), true);
  const SparsePattern& pat = stiffness.pattern();
  for (int i = 0; i < pat.rows(); ++i) {
    for (int p = pat.row_begin(i); p < pat.row_end(i); ++p) {
      const int j = pat.col(p);
      if (j == i) continue;
      if (w[j] == w[i]) continue;  // branch value is exactly zero
      const double dg =
          entropy_reg(w[j], params).dg - entropy_reg(w[i], params).dg;
      if (dg == 0.0) continue;  // indistinguishable through g'
      f.values()[static_cast<size_t>(p)] =
          (1.0 - (v[j] - v[i]) / dg) * stiffness.value_at(p);
    }
  }
  return f;
}

void add_b2u_split(SparseOperator& A, std::vector<double>& b,
                   const std::vector<double>& alpha, const FeField& w,
                   const FeField& v, const SparseOperator& stiffness,
                   const EntropyParams& params) {
  const SparsePattern& pat = stiffness.pattern();
  for (int i = 0; i < pat.rows(); ++i) {
    for (int p = pat.row_begin(i); p < pat.row_end(i); ++p) {
      const int j = pat.col(p);
      if (j <= i) continue;
      const double kij = stiffness.value_at(p);
      if (kij == 0.0) continue;
      if (w[j] == w[i]) continue;
      const double dg =
          entropy_reg(w[j], params).dg - entropy_reg(w[i], params).dg;
      if (dg == 0.0) continue;
      const double ai = alpha[static_cast<size_t>(i)];
      const double aj = alpha[static_cast<size_t>(j)];
      if (ai == 0.0 && aj == 0.0) continue;
      // Selection uses the literal f = (1 - q) K_ij, which may overflow for
      // nearly equal w values; only its sign and the detector weights matter.
      const double q = (v[j] - v[i]) / dg;
      const double f = (1.0 - q) * kij;
      const double cand_i = ai == 0.0 ? 0.0 : ai * f;
      const double cand_j = aj == 0.0 ? 0.0 : aj * f;
      if (!(std::max(cand_i, cand_j) > 0.0)) continue;
      const double a_sel = cand_i >= cand_j ? ai : aj;
      // nu (z_i - z_j) = a_sel K (z_i - z_j) + a_sel K dv gamma(z): the first
      // piece is a bounded graph-Laplacian on the unknown, the second a
      // frozen flux. Identical residual, bounded matrix entries.
      const double lap = a_sel * kij;
      A.values()[static_cast<size_t>(p)] -= lap;
      A.values()[static_cast<size_t>(pat.find(j, i))] -= lap;
      A.values()[static_cast<size_t>(pat.find(i, i))] += lap;
      A.values()[static_cast<size_t>(pat.find(j, j))] += lap;
      const double gamma = (w[j] - w[i]) / dg;
      const double flux = a_sel * kij * (v[j] - v[i]) * gamma;
      b[static_cast<size_t>(i)] -= flux;
      b[static_cast<size_t>(j)] += flux;
    }
  }
}

namespace {

SparseOperator b1_f_u(const Mesh& mesh, const FeField& v, double k,
                      std::shared_ptr<const SparsePattern> pattern) {
  SparseOperator f = assemble_stiffness(mesh, pattern);
  const SparseOperator D = assemble_drift(mesh, v, f.pattern_ptr());
  const SparseOperator M = assemble_mass(mesh, f.pattern_ptr());
  f.add_scaled(D, -1.0);
  f.add_scaled(M, 1.0 / k);
  return f;
}

SparseOperator b1_f_v(const Mesh& mesh, double k,
                      std::shared_ptr<const SparsePattern> pattern) {
  SparseOperator f = assemble_stiffness(mesh, pattern);
  const SparseOperator M = assemble_mass(mesh, f.pattern_ptr());
  f.add_scaled(M, 1.0 / k + 1.0);
  return f;
}

}  // namespace

StabCoefficients coeffs_b1_u(const Mesh& mesh, const std::vector<NodeStar>& stars,
                             const FeField& w, const FeField& v, double k,
                             const DetectorParams& params) {
  if (!(k > 0.0)) throw Error("coeffs_b1_u: k must be positive");
  const auto alpha = shock_detector(w, stars, params);
  return nu_from_f(b1_f_u(mesh, v, k, nullptr), alpha);
}

StabCoefficients coeffs_b1_v(const Mesh& mesh, const std::vector<NodeStar>& stars,
                             const FeField& w, double k,
                             const DetectorParams& params) {
  if (!(k > 0.0)) throw Error("coeffs_b1_v: k must be positive");
  const auto alpha = shock_detector(w, stars, params);
  return nu_from_f(b1_f_v(mesh, k, nullptr), alpha);
}

StabCoefficients coeffs_b2_u(const Mesh& mesh, const std::vector<NodeStar>& stars,
                             const FeField& w, const FeField& v,
                             const SparseOperator& stiffness,
                             const DetectorParams& detector,
                             const EntropyParams& entropy) {
  (void)mesh;
  const auto alpha = shock_detector(w, stars, detector);
  return nu_from_f(b2u_f_matrix(stiffness, w, v, entropy), alpha);
}

StabCoefficients coeffs_b2_v(const Mesh& mesh, const std::vector<NodeStar>& stars,
                             const FeField& w, const SparseOperator& stiffness,
                             const DetectorParams& params) {
  (void)mesh;
  const auto alpha = shock_detector(w, stars, params);
  return nu_from_f(stiffness, alpha);
}

namespace {

std::vector<double> graph_laplacian_apply(const StabCoefficients& coeffs,
                                          std::span<const double> u) {
  const SparsePattern& pat = coeffs.pattern();
  const int n = pat.rows();
  if (static_cast<int>(u.size()) != n) {
    throw Error("stabilizer apply: size mismatch");
  }
  std::vector<double> y(static_cast<size_t>(n), 0.0);
  const auto& values = coeffs.raw().values();
  for (int i = 0; i < n; ++i) {
    double acc = 0.0;
    for (int p = pat.row_begin(i); p < pat.row_end(i); ++p) {
      const int j = pat.col(p);
      if (j == i) continue;
      acc += values[static_cast<size_t>(p)] *
             (u[static_cast<size_t>(i)] - u[static_cast<size_t>(j)]);
    }
    y[static_cast<size_t>(i)] = acc;
  }
  return y;
}

}  // namespace

std::vector<double> apply_b1(const StabCoefficients& coeffs,
                             std::span<const double> u) {
  return graph_laplacian_apply(coeffs, u);
}

std::vector<double> apply_b2(const StabCoefficients& coeffs,
                             std::span<const double> u) {
  return graph_laplacian_apply(coeffs, u);
}

void add_graph_laplacian(SparseOperator& A, const StabCoefficients& coeffs) {
  if (A.pattern_ptr().get() != coeffs.pattern_ptr().get()) {
    throw Error("add_graph_laplacian: pattern mismatch");
  }
  const SparsePattern& pat = A.pattern();
  const auto& values = coeffs.raw().values();
  for (int i = 0; i < pat.rows(); ++i) {
    double diag = 0.0;
    for (int p = pat.row_begin(i); p < pat.row_end(i); ++p) {
      const int j = pat.col(p);
      if (j == i) continue;
      const double nu = values[static_cast<size_t>(p)];
      A.values()[static_cast<size_t>(p)] -= nu;
      diag += nu;
    }
    A.values()[static_cast<size_t>(pat.find(i, i))] += diag;
  }
}

std::vector<double> star_chemo_vector(const FeField& u_frozen, const FeField& v,
                                      const SparseOperator& stiffness,
                                      const EntropyParams& params) {
  if (!u_frozen.same_mesh(v)) {
    throw Error("star_chemo_vector: fields on different meshes");
  }
  const SparsePattern& pat = stiffness.pattern();
  const int n = pat.rows();
  std::vector<double> r(static_cast<size_t>(n), 0.0);
  for (int i = 0; i < n; ++i) {
    double acc = 0.0;
    for (int p = pat.row_begin(i); p < pat.row_end(i); ++p) {
      const int j = pat.col(p);
      if (j == i) continue;
      acc += gamma_coeff(u_frozen[i], u_frozen[j], params) * (v[j] - v[i]) *
             stiffness.value_at(p);
    }
    r[static_cast<size_t>(i)] = acc;
  }
  return r;
}

}  // namespace ksfem
