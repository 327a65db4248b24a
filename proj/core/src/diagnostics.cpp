#include "ksfem/diagnostics.hpp"

#include <algorithm>
#include <cmath>

#include "ksfem/fem.hpp"

namespace ksfem {

FieldNorms field_norms(const FeField& w) {
  FieldNorms n;
  n.l1 = integrate_of_field(w, [](double v) { return std::abs(v); });
  n.l2 = std::sqrt(integrate_of_field(w, [](double v) { return v * v; }));
  n.linf = 0.0;
  n.min = w[0];
  for (int i = 0; i < w.size(); ++i) {
    n.linf = std::max(n.linf, std::abs(w[i]));
    n.min = std::min(n.min, w[i]);
  }
  return n;
}

EnergyResult discrete_energy(const FeField& u, const FeField& v,
                             const SparseOperator& stiffness,
                             const std::vector<double>& lumped_mass,
                             const EntropyParams& entropy) {
  if (!u.same_mesh(v)) throw Error("discrete_energy: fields on different meshes");
  EnergyResult out;
  const auto kv = stiffness.apply(v.values());
  double grad = 0.0, vv = 0.0, uv = 0.0, ent = 0.0;
  for (int i = 0; i < v.size(); ++i) {
    const double m = lumped_mass[static_cast<size_t>(i)];
    grad += v[i] * kv[static_cast<size_t>(i)];
    vv += m * v[i] * v[i];
    uv += m * u[i] * v[i];
    if (u[i] > entropy.epsilon) {
      ent += m * u[i] * std::log(u[i]);
    } else {
      ent += m * u[i] * std::log(entropy.epsilon);
      ++out.clamped_entries;
    }
  }
  out.value = 0.5 * grad + 0.5 * vv - uv + ent;
  return out;
}

double locking_bound(const Mesh& mesh, const FeField& u0) {
  const double l1 = field_norms(u0).l1;
  if (mesh.kind() == CellKind::q1_quadrilateral) {
    const double h = min_edge_length(mesh);
    return l1 / (h * h);
  }
  const double h = min_mesh_size(mesh);
  return 4.0 * l1 / (h * h * std::sqrt(3.0));
}

double hk_indicator(const Mesh& mesh, double k, const FeField& v) {
  const double h = max_mesh_size(mesh);
  const double l2 = std::sqrt(integrate_of_field(v, [](double x) { return x * x; }));
  return k / (h * h * h) * l2;
}

}  // namespace ksfem
