#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "ksfem/diagnostics.hpp"
#include "ksfem/fe_field.hpp"
#include "ksfem/fem.hpp"
#include "ksfem/mesh.hpp"
#include "ksfem/sparse.hpp"
#include "ksfem/stab.hpp"

namespace ksfem {

enum class Algorithm { alg1, alg2 };

struct SolverConfig {
  double k = 0.02;
  Algorithm algorithm = Algorithm::alg1;
  int gamma = 1;  // switches B2^v on (1) or off (0); Algorithm 2 only
  double detector_q = 2.0;
  /// Detector flavor; when unset, Algorithm 1 uses the extrema detector and
  /// Algorithm 2 the minima-only one.
  std::optional<DetectorMode> detector_mode;
  EntropyParams entropy{};
  double picard_residual_tol = 1e-6;
  double picard_increment_tol = 1e-16;
  int picard_max_iters = 100;
  int backtrack_max_halvings = 30;
  double linear_tol = 1e-12;

  DetectorParams detector_params() const {
    return {detector_q,
            detector_mode.value_or(algorithm == Algorithm::alg2
                                       ? DetectorMode::minima_only
                                       : DetectorMode::extrema)};
  }
};

struct SimState {
  double t = 0.0;
  int step = 0;
  FeField u;
  FeField v;
};

struct StepReport {
  int picard_iters_u = 0;
  int picard_iters_v = 0;
  double final_residual_u = 0.0;
  double final_residual_v = 0.0;
  int backtracks = 0;
  double hk_indicator = 0.0;
};

/// Mesh-bound operators assembled once per run and shared by every step.
struct AssembledOperators {
  std::shared_ptr<const SparsePattern> pattern;
  SparseOperator mass;
  SparseOperator stiffness;
  std::vector<double> lumped_mass;
  std::vector<NodeStar> stars;

  static AssembledOperators build(const Mesh& mesh);
};

/// Reusable factorizations for the u- and v-systems of one simulation.
struct StepWorkspace {
  explicit StepWorkspace(std::shared_ptr<const SparsePattern> pattern)
      : u_solver(pattern), v_solver(std::move(pattern)) {}
  LinearSolver u_solver;
  LinearSolver v_solver;
};

struct PicardResult {
  std::vector<double> solution;
  int iterations = 0;
  double final_residual = 0.0;
  int backtracks = 0;
};

/// Fills the frozen-coefficient linear system A(z) z* = b(z) at iterate z.
/// The true nonlinear residual at z is ||A(z) z - b(z)||_inf.
using PicardAssemble = std::function<void(
    const std::vector<double>& z, SparseOperator& A, std::vector<double>& b)>;

/// Damped fixed-point iteration with residual backtracking: the update
/// z + lambda (z* - z) takes the first lambda in {1, 1/2, 1/4, ...} whose
/// refrozen residual does not increase. Stops when the residual drops below
/// picard_residual_tol or the increment below picard_increment_tol; throws
/// PicardError after picard_max_iters.
PicardResult picard_solve(const PicardAssemble& assemble,
                          const std::vector<double>& initial_guess,
                          const SolverConfig& config,
                          std::shared_ptr<const SparsePattern> pattern,
                          LinearSolver& solver);

/// One semi-implicit step of Algorithm 1 (consistent mass, drift chemotaxis,
/// B1 stabilizers) or Algorithm 2 (lumped mass, star-product chemotaxis,
/// B2 stabilizers). The u-equation is solved first, then the v-equation with
/// the fresh u on its right-hand side.
StepReport step_alg1(SimState& state, const SolverConfig& config,
                     const AssembledOperators& ops, StepWorkspace& ws);
StepReport step_alg2(SimState& state, const SolverConfig& config,
                     const AssembledOperators& ops, StepWorkspace& ws);
StepReport advance(SimState& state, const SolverConfig& config,
                   const AssembledOperators& ops, StepWorkspace& ws);

struct SimulationProblem {
  const Mesh* mesh = nullptr;
  ScalarFunction u0;
  ScalarFunction v0;
  int n_steps = 0;
};

struct RunHooks {
  std::function<void(const SimState&, const DiagnosticsRecord&)> on_initial;
  std::function<void(const SimState&, const DiagnosticsRecord&, const StepReport&)>
      on_step;
};

DiagnosticsRecord make_diagnostics_record(int step, double t, const FeField& u,
                                          const FeField& v,
                                          const AssembledOperators& ops,
                                          const SolverConfig& config,
                                          const StepReport* report);

/// Initializes u and v by averaged interpolation of the initial data and
/// advances n_steps. Returns one record per completed step, or the initial
/// record alone for a zero-length run. Hooks fire as data becomes available
/// so callers can flush partial results before a failure propagates.
std::vector<DiagnosticsRecord> run_simulation(const SimulationProblem& problem,
                                              const SolverConfig& config,
                                              const RunHooks& hooks = {});

}  // namespace ksfem
