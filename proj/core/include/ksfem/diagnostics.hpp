#pragma once

#include <vector>

#include "ksfem/fe_field.hpp"
#include "ksfem/sparse.hpp"
#include "ksfem/stab.hpp"

namespace ksfem {

struct FieldNorms {
  double l1, l2, linf, min;
};

/// L1 and L2 by elementwise quadrature; Linf and min over nodal values (the
/// piecewise-linear/bilinear extrema sit at nodes).
FieldNorms field_norms(const FeField& w);

struct EnergyResult {
  double value = 0.0;
  int clamped_entries = 0;  // nodes where u_i <= epsilon hit the log clamp
};

/// Discrete energy
///   E_h = 1/2 ||grad v||^2 + 1/2 ||v||_h^2 - (u, v)_h + (u, log u)_h,
/// with the logarithm clamped at epsilon (clamped entries are counted, not
/// fatal; the diagnostic must stay total even on a bound violation).
EnergyResult discrete_energy(const FeField& u, const FeField& v,
                             const SparseOperator& stiffness,
                             const std::vector<double>& lumped_mass,
                             const EntropyParams& entropy);

/// Single-macroelement ceiling on ||u||_inf once a concentration locks onto
/// one node: h^-2 ||u0||_L1 on quadrilateral meshes and 4/(h^2 sqrt(3))
/// ||u0||_L1 on triangle meshes. h is the nodal spacing entering the
/// macroelement mass identity: the minimum cell edge for quadrilaterals and
/// the minimum cell diameter (equilateral side) for triangles.
double locking_bound(const Mesh& mesh, const FeField& u0);

/// Monitoring quantity k h^-3 ||v||_L2 (constant-free core of the parabolic
/// step restriction in d = 2); h is the maximum cell diameter.
double hk_indicator(const Mesh& mesh, double k, const FeField& v);

struct DiagnosticsRecord {
  int step = 0;
  double t = 0.0;
  double l1_u = 0.0, l1_v = 0.0, l2_v = 0.0;
  double linf_u = 0.0, linf_v = 0.0;
  double min_u = 0.0, min_v = 0.0;
  double energy = 0.0;
  int picard_iters_u = 0, picard_iters_v = 0;
  double hk_indicator = 0.0;
  double mass_u = 0.0;  // sum_i m_i u_i, the conserved algebraic mass
  int energy_clamped = 0;
};

}  // namespace ksfem
