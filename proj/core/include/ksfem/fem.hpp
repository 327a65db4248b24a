#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "ksfem/fe_field.hpp"
#include "ksfem/mesh.hpp"
#include "ksfem/sparse.hpp"

namespace ksfem {

using ScalarFunction = std::function<double(double, double)>;

/// Consistent mass matrix M_ij = (phi_j, phi_i). Closed-form on triangles,
/// 3x3 tensor Gauss on quadrilaterals (the committed rule for all Q1 terms;
/// exact on parallelograms).
SparseOperator assemble_mass(const Mesh& mesh,
                             std::shared_ptr<const SparsePattern> pattern = nullptr);

/// Diagonal lumped mass m_i = int phi_i, computed as the row sums of the
/// consistent mass matrix.
std::vector<double> assemble_lumped_mass(const Mesh& mesh);

/// Stiffness K_ij = (grad phi_j, grad phi_i).
SparseOperator assemble_stiffness(const Mesh& mesh,
                                  std::shared_ptr<const SparsePattern> pattern = nullptr);

/// Drift D_ij = (phi_j grad v_h, grad phi_i) for a given chemoattractant
/// field v. Not symmetric; its column sums vanish.
SparseOperator assemble_drift(const Mesh& mesh, const FeField& v,
                              std::shared_ptr<const SparsePattern> pattern = nullptr);

/// Lumped inner product (x, y)_h = sum_i m_i x_i y_i.
double lumped_inner(const FeField& x, const FeField& y);

/// Averaged interpolation: coefficient i is the mean of psi over the incident
/// cell with the smallest index. Positive quadrature weights preserve sign.
FeField averaged_interpolate(const Mesh& mesh, const ScalarFunction& psi);

/// Nodal interpolation: coefficient i is psi(a_i).
FeField nodal_interpolate(const Mesh& mesh, const ScalarFunction& psi);

/// Fixed high-order quadrature (7-point on triangles, 4x4 Gauss on
/// quadrilaterals) of g(w_h(x)) over the mesh. Exact for |w| and w^2 whenever
/// the integrand is polynomial on each cell.
double integrate_of_field(const FeField& w, const std::function<double(double)>& g);

}  // namespace ksfem
