#include "ksfem/sparse.hpp"

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>

#include <algorithm>
#include <cmath>
#include <set>

namespace ksfem {

std::shared_ptr<const SparsePattern> SparsePattern::node_adjacency(
    const Mesh& mesh) {
  const int n = mesh.num_nodes();
  std::vector<std::set<int>> adj(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) adj[static_cast<size_t>(i)].insert(i);
  for (int c = 0; c < mesh.num_cells(); ++c) {
    auto cn = mesh.cell(c);
    for (int a : cn) {
      for (int b : cn) adj[static_cast<size_t>(a)].insert(b);
    }
  }
  auto p = std::make_shared<SparsePattern>();
  p->row_ptr_.reserve(static_cast<size_t>(n) + 1);
  p->row_ptr_.push_back(0);
  for (int i = 0; i < n; ++i) {
    const auto& row = adj[static_cast<size_t>(i)];
    p->col_idx_.insert(p->col_idx_.end(), row.begin(), row.end());
    p->row_ptr_.push_back(static_cast<int>(p->col_idx_.size()));
  }
  return p;
}

std::shared_ptr<const SparsePattern> SparsePattern::from_pairs(
    int n, const std::vector<std::pair<int, int>>& pairs) {
  std::vector<std::set<int>> adj(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) adj[static_cast<size_t>(i)].insert(i);
  for (const auto& [a, b] : pairs) {
    if (a < 0 || b < 0 || a >= n || b >= n) {
      throw Error("SparsePattern::from_pairs: index out of range");
    }
    adj[static_cast<size_t>(a)].insert(b);
    adj[static_cast<size_t>(b)].insert(a);
  }
  auto p = std::make_shared<SparsePattern>();
  p->row_ptr_.push_back(0);
  for (int i = 0; i < n; ++i) {
    const auto& row = adj[static_cast<size_t>(i)];
    p->col_idx_.insert(p->col_idx_.end(), row.begin(), row.end());
    p->row_ptr_.push_back(static_cast<int>(p->col_idx_.size()));
  }
  return p;
}

int SparsePattern::find(int i, int j) const {
  const int lo = row_ptr_[static_cast<size_t>(i)];
  const int hi = row_ptr_[static_cast<size_t>(i) + 1];
  const auto first = col_idx_.begin() + lo;
  const auto last = col_idx_.begin() + hi;
  const auto it = std::lower_bound(first, last, j);
  if (it == last || *it != j) return -1;
  return static_cast<int>(it - col_idx_.begin());
}

void SparseOperator::add_scaled(const SparseOperator& other, double factor) {
  if (pattern_.get() != other.pattern_.get()) {
    throw Error("SparseOperator::add_scaled: pattern mismatch");
  }
  for (size_t p = 0; p < values_.size(); ++p) {
    values_[p] += factor * other.values_[p];
  }
}

void SparseOperator::scale(double factor) {
  for (double& v : values_) v *= factor;
}

std::vector<double> SparseOperator::apply(std::span<const double> x) const {
  const int n = rows();
  if (static_cast<int>(x.size()) != n) {
    throw Error("SparseOperator::apply: size mismatch");
  }
  std::vector<double> y(static_cast<size_t>(n), 0.0);
  for (int i = 0; i < n; ++i) {
    double acc = 0.0;
    for (int p = pattern_->row_begin(i); p < pattern_->row_end(i); ++p) {
      acc += values_[static_cast<size_t>(p)] *
             x[static_cast<size_t>(pattern_->col(p))];
    }
    y[static_cast<size_t>(i)] = acc;
  }
  return y;
}

std::vector<double> SparseOperator::row_sums() const {
  const int n = rows();
  std::vector<double> s(static_cast<size_t>(n), 0.0);
  for (int i = 0; i < n; ++i) {
    double acc = 0.0;
    for (int p = pattern_->row_begin(i); p < pattern_->row_end(i); ++p) {
      acc += values_[static_cast<size_t>(p)];
    }
    s[static_cast<size_t>(i)] = acc;
  }
  return s;
}

namespace {

Eigen::SparseMatrix<double> to_eigen(const SparseOperator& A) {
  const int n = A.rows();
  Eigen::SparseMatrix<double> m(n, n);
  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(static_cast<size_t>(A.pattern().nnz()));
  for (int i = 0; i < n; ++i) {
    for (int p = A.pattern().row_begin(i); p < A.pattern().row_end(i); ++p) {
      trips.emplace_back(i, A.pattern().col(p), A.value_at(p));
    }
  }
  m.setFromTriplets(trips.begin(), trips.end());
  return m;
}

double residual_inf(const SparseOperator& A, const std::vector<double>& z,
                    const std::vector<double>& b) {
  const auto az = A.apply(z);
  double r = 0.0;
  for (size_t i = 0; i < b.size(); ++i) {
    r = std::max(r, std::abs(az[i] - b[i]));
  }
  return r;
}

}  // namespace

struct LinearSolver::Impl {
  std::shared_ptr<const SparsePattern> pattern;
  Eigen::SparseMatrix<double> mat;
  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
  std::vector<double> cached_values;
  bool analyzed = false;
  bool factorized = false;
};

LinearSolver::LinearSolver(std::shared_ptr<const SparsePattern> pattern)
    : impl_(std::make_unique<Impl>()) {
  impl_->pattern = std::move(pattern);
}

LinearSolver::~LinearSolver() = default;
LinearSolver::LinearSolver(LinearSolver&&) noexcept = default;
LinearSolver& LinearSolver::operator=(LinearSolver&&) noexcept = default;

std::vector<double> LinearSolver::solve(const SparseOperator& A,
                                        const std::vector<double>& b,
                                        double tol) {
  if (A.pattern_ptr().get() != impl_->pattern.get()) {
    throw Error("LinearSolver: operator uses a different pattern");
  }
  const int n = A.rows();
  if (static_cast<int>(b.size()) != n) {
    throw Error("LinearSolver: rhs size mismatch");
  }

  const bool values_changed =
      !impl_->factorized || impl_->cached_values != A.values();
  if (values_changed) {
    impl_->mat = to_eigen(A);
    if (!impl_->analyzed) {
      impl_->lu.analyzePattern(impl_->mat);
      impl_->analyzed = true;
    }
    impl_->lu.factorize(impl_->mat);
    if (impl_->lu.info() != Eigen::Success) {
      throw SolverError("sparse factorization failed (singular matrix?)");
    }
    impl_->cached_values = A.values();
    impl_->factorized = true;
  }

  Eigen::Map<const Eigen::VectorXd> bv(b.data(), n);
  Eigen::VectorXd z = impl_->lu.solve(bv);
  std::vector<double> zv(z.data(), z.data() + n);

  double bnorm = 0.0;
  for (double v : b) bnorm = std::max(bnorm, std::abs(v));
  const double limit = tol * std::max(1.0, bnorm);
  double r = residual_inf(A, zv, b);
  if (r > limit) {
    // One step of iterative refinement before giving up.
    const auto az = A.apply(zv);
    Eigen::VectorXd res(n);
    for (int i = 0; i < n; ++i) {
      res[i] = b[static_cast<size_t>(i)] - az[static_cast<size_t>(i)];
    }
    Eigen::VectorXd dz = impl_->lu.solve(res);
    for (int i = 0; i < n; ++i) zv[static_cast<size_t>(i)] += dz[i];
    r = residual_inf(A, zv, b);
    if (r > limit) {
      throw SolverError("linear solve residual " + std::to_string(r) +
                        " exceeds tolerance " + std::to_string(limit));
    }
  }
  return zv;
}

std::vector<double> solve_linear(const SparseOperator& A,
                                 const std::vector<double>& b, double tol) {
  LinearSolver solver(A.pattern_ptr());
  return solver.solve(A, b, tol);
}

}  // namespace ksfem
