#pragma once

#include <memory>
#include <vector>

#include "ksfem/fe_field.hpp"
#include "ksfem/mesh.hpp"
#include "ksfem/sparse.hpp"

namespace ksfem {

enum class DetectorMode { extrema, minima_only };

struct DetectorParams {
  double q = 2.0;  // > 0
  DetectorMode mode = DetectorMode::extrema;
};

struct EntropyParams {
  double epsilon = 1e-6;  // > 0
};

struct EntropyValue {
  double g, dg, ddg;
};

/// C^1 extension of s log s - s below the threshold epsilon, with its first
/// and second derivatives.
EntropyValue entropy_reg(double s, const EntropyParams& params);

/// Logarithmic-mean coefficient (x_j - x_i) / (g'(x_j) - g'(x_i)); the
/// positive part of x_i on the equal-values branch. Equality is bitwise.
double gamma_coeff(double x_i, double x_j, const EntropyParams& params);

/// Nodal shock detector. In extrema mode the value is 1 at strict local
/// extrema; in minima-only mode the numerator keeps only its positive part so
/// the detector fires at minima alone. Neighbor pairs without a symmetric
/// stencil are left out of both sums.
std::vector<double> shock_detector(const FeField& w,
                                   const std::vector<NodeStar>& stars,
                                   const DetectorParams& params);

/// Symmetric nonnegative pairwise coefficients nu_ij over the off-diagonal
/// adjacency pattern.
class StabCoefficients {
 public:
  explicit StabCoefficients(std::shared_ptr<const SparsePattern> pattern)
      : nu_(std::move(pattern), true) {}

  double nu(int i, int j) const { return nu_.entry(i, j); }
  void set_pair(int i, int j, double value);

  const SparsePattern& pattern() const { return nu_.pattern(); }
  std::shared_ptr<const SparsePattern> pattern_ptr() const {
    return nu_.pattern_ptr();
  }
  const SparseOperator& raw() const { return nu_; }
  SparseOperator& raw() { return nu_; }

  double max_abs() const;

 private:
  SparseOperator nu_;  // off-diagonal slots hold nu_ij; diagonal unused
};

/// nu_ij = max{alpha_i f_ij, alpha_j f_ji, 0} over adjacent pairs.
StabCoefficients nu_from_f(const SparseOperator& f,
                           const std::vector<double>& alpha);

/// f-matrix of the Algorithm 2 u-equation stabilizer:
/// f_ij = (1 - (v_j - v_i)/(g'(w_j) - g'(w_i))) K_ij, zero when w_j == w_i.
SparseOperator b2u_f_matrix(const SparseOperator& stiffness, const FeField& w,
                            const FeField& v, const EntropyParams& params);

/// Spec-shaped coefficient builders; each assembles what it needs and uses
/// the detector mode from params.
StabCoefficients coeffs_b1_u(const Mesh& mesh, const std::vector<NodeStar>& stars,
                             const FeField& w, const FeField& v, double k,
                             const DetectorParams& params);
StabCoefficients coeffs_b1_v(const Mesh& mesh, const std::vector<NodeStar>& stars,
                             const FeField& w, double k,
                             const DetectorParams& params);
StabCoefficients coeffs_b2_u(const Mesh& mesh, const std::vector<NodeStar>& stars,
                             const FeField& w, const FeField& v,
                             const SparseOperator& stiffness,
                             const DetectorParams& detector,
                             const EntropyParams& entropy);
StabCoefficients coeffs_b2_v(const Mesh& mesh, const std::vector<NodeStar>& stars,
                             const FeField& w, const SparseOperator& stiffness,
                             const DetectorParams& params);

/// Graph-Laplacian action sum_j nu_ij (u_i - u_j); annihilates constants and
/// has zero output sum.
std::vector<double> apply_b1(const StabCoefficients& coeffs,
                             std::span<const double> u);
std::vector<double> apply_b2(const StabCoefficients& coeffs,
                             std::span<const double> u);

/// Adds the graph-Laplacian matrix of the coefficients to A:
/// A_ii += sum_j nu_ij, A_ij -= nu_ij.
void add_graph_laplacian(SparseOperator& A, const StabCoefficients& coeffs);

/// Star-product chemotaxis vector r_i = sum_{j != i} gamma_ji(u) (v_j - v_i)
/// K_ij; pairwise antisymmetric, so the entries sum to zero.
std::vector<double> star_chemo_vector(const FeField& u_frozen, const FeField& v,
                                      const SparseOperator& stiffness,
                                      const EntropyParams& params);

}  // namespace ksfem
