#pragma once

#include <cmath>
#include <vector>

#include "ksfem/errors.hpp"
#include "ksfem/mesh.hpp"

namespace ksfem {

/// Nodal coefficient vector of a continuous piecewise P1/Q1 function on a
/// mesh. The mesh must outlive the field.
class FeField {
 public:
  explicit FeField(const Mesh& mesh)
      : mesh_(&mesh), values_(static_cast<size_t>(mesh.num_nodes()), 0.0) {}

  FeField(const Mesh& mesh, std::vector<double> values)
      : mesh_(&mesh), values_(std::move(values)) {
    if (values_.size() != static_cast<size_t>(mesh.num_nodes())) {
      throw Error("FeField: coefficient count does not match node count");
    }
    for (double v : values_) {
      if (!std::isfinite(v)) throw Error("FeField: non-finite coefficient");
    }
  }

  const Mesh& mesh() const { return *mesh_; }
  int size() const { return static_cast<int>(values_.size()); }

  double operator[](int i) const { return values_[static_cast<size_t>(i)]; }
  double& operator[](int i) { return values_[static_cast<size_t>(i)]; }

  const std::vector<double>& values() const { return values_; }
  std::vector<double>& values() { return values_; }

  bool same_mesh(const FeField& other) const { return mesh_ == other.mesh_; }

 private:
  const Mesh* mesh_;
  std::vector<double> values_;
};

}  // namespace ksfem
