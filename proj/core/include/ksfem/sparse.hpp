#pragma once

#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "ksfem/errors.hpp"
#include "ksfem/mesh.hpp"

namespace ksfem {

/// Compressed-row sparsity pattern with sorted column indices. Operators on
/// the same mesh share one pattern (the node adjacency graph including the
/// diagonal), which makes linear combinations plain vector operations.
class SparsePattern {
 public:
  static std::shared_ptr<const SparsePattern> node_adjacency(const Mesh& mesh);
  static std::shared_ptr<const SparsePattern> from_pairs(
      int n, const std::vector<std::pair<int, int>>& pairs);

  int rows() const { return static_cast<int>(row_ptr_.size()) - 1; }
  int nnz() const { return static_cast<int>(col_idx_.size()); }

  std::span<const int> row_cols(int i) const {
    return {col_idx_.data() + row_ptr_[static_cast<size_t>(i)],
            static_cast<size_t>(row_ptr_[static_cast<size_t>(i) + 1] -
                                row_ptr_[static_cast<size_t>(i)])};
  }
  int row_begin(int i) const { return row_ptr_[static_cast<size_t>(i)]; }
  int row_end(int i) const { return row_ptr_[static_cast<size_t>(i) + 1]; }
  int col(int pos) const { return col_idx_[static_cast<size_t>(pos)]; }

  /// Value-array position of entry (i, j), or -1 when outside the pattern.
  int find(int i, int j) const;

  const std::vector<int>& row_ptr() const { return row_ptr_; }
  const std::vector<int>& col_idx() const { return col_idx_; }

 private:
  std::vector<int> row_ptr_;
  std::vector<int> col_idx_;
};

/// Square sparse matrix on a shared pattern.
class SparseOperator {
 public:
  explicit SparseOperator(std::shared_ptr<const SparsePattern> pattern,
                          bool symmetric_hint = false)
      : pattern_(std::move(pattern)),
        values_(static_cast<size_t>(pattern_->nnz()), 0.0),
        symmetric_hint_(symmetric_hint) {}

  const SparsePattern& pattern() const { return *pattern_; }
  std::shared_ptr<const SparsePattern> pattern_ptr() const { return pattern_; }
  int rows() const { return pattern_->rows(); }

  double entry(int i, int j) const {
    const int pos = pattern_->find(i, j);
    return pos < 0 ? 0.0 : values_[static_cast<size_t>(pos)];
  }

  void add(int i, int j, double v) {
    const int pos = pattern_->find(i, j);
    if (pos < 0) throw Error("SparseOperator::add outside pattern");
    values_[static_cast<size_t>(pos)] += v;
  }

  double value_at(int pos) const { return values_[static_cast<size_t>(pos)]; }
  std::vector<double>& values() { return values_; }
  const std::vector<double>& values() const { return values_; }

  bool symmetric_hint() const { return symmetric_hint_; }
  void set_symmetric_hint(bool s) { symmetric_hint_ = s; }

  void set_zero() { values_.assign(values_.size(), 0.0); }

  /// this += factor * other (patterns must be the same object).
  void add_scaled(const SparseOperator& other, double factor);
  void scale(double factor);

  std::vector<double> apply(std::span<const double> x) const;

  /// Row sums, one per row.
  std::vector<double> row_sums() const;

 private:
  std::shared_ptr<const SparsePattern> pattern_;
  std::vector<double> values_;
  bool symmetric_hint_;
};

/// Direct sparse solve with residual verification:
/// ||A z - b||_inf <= tol * max(1, ||b||_inf). Deterministic.
std::vector<double> solve_linear(const SparseOperator& A,
                                 const std::vector<double>& b, double tol);

/// Reusable factorization wrapper: the symbolic analysis is done once per
/// pattern and numeric refactorization is skipped when the values have not
/// changed since the previous solve.
class LinearSolver {
 public:
  explicit LinearSolver(std::shared_ptr<const SparsePattern> pattern);
  ~LinearSolver();
  LinearSolver(LinearSolver&&) noexcept;
  LinearSolver& operator=(LinearSolver&&) noexcept;

  std::vector<double> solve(const SparseOperator& A,
                            const std::vector<double>& b, double tol);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace ksfem
