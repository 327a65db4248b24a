#include "ksfem/solver.hpp"

#include <algorithm>
#include <cmath>

namespace ksfem {

namespace {

double inf_norm_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

double system_residual(const SparseOperator& A, const std::vector<double>& z,
                       const std::vector<double>& b) {
  const auto az = A.apply(z);
  double r = 0.0;
  for (size_t i = 0; i < z.size(); ++i) r = std::max(r, std::abs(az[i] - b[i]));
  return r;
}

}  // namespace

AssembledOperators AssembledOperators::build(const Mesh& mesh) {
  auto pattern = SparsePattern::node_adjacency(mesh);
  SparseOperator mass = assemble_mass(mesh, pattern);
  SparseOperator stiffness = assemble_stiffness(mesh, pattern);
  std::vector<double> lumped = mass.row_sums();
  return AssembledOperators{pattern, std::move(mass), std::move(stiffness),
                            std::move(lumped), build_node_stars(mesh)};
}

PicardResult picard_solve(const PicardAssemble& assemble,
                          const std::vector<double>& initial_guess,
                          const SolverConfig& config,
                          std::shared_ptr<const SparsePattern> pattern,
                          LinearSolver& solver) {
  SparseOperator A(std::move(pattern));
  std::vector<double> b(initial_guess.size(), 0.0);

  std::vector<double> z = initial_guess;
  assemble(z, A, b);
  double residual = system_residual(A, z, b);

  PicardResult result;
  if (residual < config.picard_residual_tol) {
    result.solution = std::move(z);
    result.final_residual = residual;
    return result;
  }

  std::vector<double> trial(z.size());
  for (int m = 1; m <= config.picard_max_iters; ++m) {
    const std::vector<double> z_star = solver.solve(A, b, config.linear_tol);

    double lambda = 1.0;
    double trial_residual = 0.0;
    for (int h = 0;; ++h) {
      for (size_t i = 0; i < z.size(); ++i) {
        trial[i] = z[i] + lambda * (z_star[i] - z[i]);
      }
      assemble(trial, A, b);
      trial_residual = system_residual(A, trial, b);
      if (trial_residual <= residual || h >= config.backtrack_max_halvings) {
        break;
      }
      lambda *= 0.5;
      ++result.backtracks;
    }

    const double increment = inf_norm_diff(trial, z);
    z.swap(trial);
    residual = trial_residual;
    result.iterations = m;

    if (residual < config.picard_residual_tol ||
        increment < config.picard_increment_tol) {
      result.solution = std::move(z);
      result.final_residual = residual;
      return result;
    }
  }
  throw PicardError("Picard iteration did not converge within " +
                        std::to_string(config.picard_max_iters) +
                        " iterations (residual " + std::to_string(residual) + ")",
                    residual, config.picard_max_iters, std::move(z));
}

StepReport step_alg1(SimState& state, const SolverConfig& config,
                     const AssembledOperators& ops, StepWorkspace& ws) {
  const Mesh& mesh = state.u.mesh();
  const double k = config.k;
  const DetectorParams detector = config.detector_params();
  StepReport report;

  // u-equation: (M/k + K - D(v^n)) u + L(nu(u)) u = M u^n / k,
  // where the system matrix without stabilizer equals the coefficient
  // matrix f^u of the B1 stabilizer.
  const SparseOperator drift = assemble_drift(mesh, state.v, ops.pattern);
  SparseOperator f_u = ops.stiffness;
  f_u.add_scaled(drift, -1.0);
  f_u.add_scaled(ops.mass, 1.0 / k);
  std::vector<double> b_u = ops.mass.apply(state.u.values());
  for (double& v : b_u) v /= k;

  auto assemble_u = [&](const std::vector<double>& z, SparseOperator& A,
                        std::vector<double>& b) {
    const FeField zf(mesh, z);
    const auto alpha = shock_detector(zf, ops.stars, detector);
    A = f_u;
    add_graph_laplacian(A, nu_from_f(f_u, alpha));
    b = b_u;
  };
  PicardResult ru = picard_solve(assemble_u, state.u.values(), config,
                                 ops.pattern, ws.u_solver);
  state.u.values() = std::move(ru.solution);
  report.picard_iters_u = ru.iterations;
  report.final_residual_u = ru.final_residual;
  report.backtracks += ru.backtracks;

  // v-equation: (M/k + K + M) v + L(nu(v)) v = M v^n / k + M u^{n+1}.
  SparseOperator f_v = ops.stiffness;
  f_v.add_scaled(ops.mass, 1.0 / k + 1.0);
  std::vector<double> rhs_field(state.v.values());
  for (size_t i = 0; i < rhs_field.size(); ++i) {
    rhs_field[i] = rhs_field[i] / k + state.u.values()[i];
  }
  const std::vector<double> b_v = ops.mass.apply(rhs_field);

  auto assemble_v = [&](const std::vector<double>& z, SparseOperator& A,
                        std::vector<double>& b) {
    const FeField zf(mesh, z);
    const auto alpha = shock_detector(zf, ops.stars, detector);
    A = f_v;
    add_graph_laplacian(A, nu_from_f(f_v, alpha));
    b = b_v;
  };
  PicardResult rv = picard_solve(assemble_v, state.v.values(), config,
                                 ops.pattern, ws.v_solver);
  state.v.values() = std::move(rv.solution);
  report.picard_iters_v = rv.iterations;
  report.final_residual_v = rv.final_residual;
  report.backtracks += rv.backtracks;

  ++state.step;
  state.t = state.step * k;
  report.hk_indicator = hk_indicator(mesh, k, state.v);
  return report;
}

StepReport step_alg2(SimState& state, const SolverConfig& config,
                     const AssembledOperators& ops, StepWorkspace& ws) {
  const Mesh& mesh = state.u.mesh();
  const double k = config.k;
  const DetectorParams detector = config.detector_params();
  const int n = mesh.num_nodes();
  StepReport report;

  // Lumped time derivative: base matrix M_L/k + K shared by both equations.
  SparseOperator base_u = ops.stiffness;
  for (int i = 0; i < n; ++i) {
    base_u.add(i, i, ops.lumped_mass[static_cast<size_t>(i)] / k);
  }
  std::vector<double> b0_u(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    b0_u[static_cast<size_t>(i)] =
        ops.lumped_mass[static_cast<size_t>(i)] * state.u[i] / k;
  }
  const FeField v_old = state.v;

  auto assemble_u = [&](const std::vector<double>& z, SparseOperator& A,
                        std::vector<double>& b) {
    const FeField zf(mesh, z);
    const auto alpha = shock_detector(zf, ops.stars, detector);
    A = base_u;
    add_graph_laplacian(
        A, nu_from_f(b2u_f_matrix(ops.stiffness, zf, v_old, config.entropy),
                     alpha));
    const auto star = star_chemo_vector(zf, v_old, ops.stiffness, config.entropy);
    b = b0_u;
    for (size_t i = 0; i < b.size(); ++i) b[i] += star[i];
  };
  PicardResult ru = picard_solve(assemble_u, state.u.values(), config,
                                 ops.pattern, ws.u_solver);
  state.u.values() = std::move(ru.solution);
  report.picard_iters_u = ru.iterations;
  report.final_residual_u = ru.final_residual;
  report.backtracks += ru.backtracks;

  // v-equation: (M_L/k + K + M_L) v + gamma L(nu(v)) v = M_L v^n/k + M_L u^{n+1}.
  SparseOperator base_v = ops.stiffness;
  std::vector<double> b_v(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double m = ops.lumped_mass[static_cast<size_t>(i)];
    base_v.add(i, i, m * (1.0 / k + 1.0));
    b_v[static_cast<size_t>(i)] = m * (state.v[i] / k + state.u[i]);
  }

  auto assemble_v = [&](const std::vector<double>& z, SparseOperator& A,
                        std::vector<double>& b) {
    A = base_v;
    if (config.gamma != 0) {
      const FeField zf(mesh, z);
      const auto alpha = shock_detector(zf, ops.stars, detector);
      add_graph_laplacian(A, nu_from_f(ops.stiffness, alpha));
    }
    b = b_v;
  };
  PicardResult rv = picard_solve(assemble_v, state.v.values(), config,
                                 ops.pattern, ws.v_solver);
  state.v.values() = std::move(rv.solution);
  report.picard_iters_v = rv.iterations;
  report.final_residual_v = rv.final_residual;
  report.backtracks += rv.backtracks;

  ++state.step;
  state.t = state.step * k;
  report.hk_indicator = hk_indicator(mesh, k, state.v);
  return report;
}

StepReport advance(SimState& state, const SolverConfig& config,
                   const AssembledOperators& ops, StepWorkspace& ws) {
  return config.algorithm == Algorithm::alg1
             ? step_alg1(state, config, ops, ws)
             : step_alg2(state, config, ops, ws);
}

DiagnosticsRecord make_diagnostics_record(int step, double t, const FeField& u,
                                          const FeField& v,
                                          const AssembledOperators& ops,
                                          const SolverConfig& config,
                                          const StepReport* report) {
  DiagnosticsRecord rec;
  rec.step = step;
  rec.t = t;
  const FieldNorms nu_ = field_norms(u);
  const FieldNorms nv_ = field_norms(v);
  rec.l1_u = nu_.l1;
  rec.linf_u = nu_.linf;
  rec.min_u = nu_.min;
  rec.l1_v = nv_.l1;
  rec.l2_v = nv_.l2;
  rec.linf_v = nv_.linf;
  rec.min_v = nv_.min;
  const EnergyResult e =
      discrete_energy(u, v, ops.stiffness, ops.lumped_mass, config.entropy);
  rec.energy = e.value;
  rec.energy_clamped = e.clamped_entries;
  double mass = 0.0;
  for (int i = 0; i < u.size(); ++i) {
    mass += ops.lumped_mass[static_cast<size_t>(i)] * u[i];
  }
  rec.mass_u = mass;
  if (report) {
    rec.picard_iters_u = report->picard_iters_u;
    rec.picard_iters_v = report->picard_iters_v;
    rec.hk_indicator = report->hk_indicator;
  } else {
    rec.hk_indicator = hk_indicator(u.mesh(), config.k, v);
  }
  return rec;
}

std::vector<DiagnosticsRecord> run_simulation(const SimulationProblem& problem,
                                              const SolverConfig& config,
                                              const RunHooks& hooks) {
  if (problem.mesh == nullptr) throw Error("run_simulation: missing mesh");
  const Mesh& mesh = *problem.mesh;
  AssembledOperators ops = AssembledOperators::build(mesh);
  StepWorkspace ws(ops.pattern);

  SimState state{0.0, 0, averaged_interpolate(mesh, problem.u0),
                 averaged_interpolate(mesh, problem.v0)};

  const DiagnosticsRecord initial =
      make_diagnostics_record(0, 0.0, state.u, state.v, ops, config, nullptr);
  if (hooks.on_initial) hooks.on_initial(state, initial);

  std::vector<DiagnosticsRecord> records;
  if (problem.n_steps == 0) {
    records.push_back(initial);
    return records;
  }
  records.reserve(static_cast<size_t>(problem.n_steps));
  for (int s = 0; s < problem.n_steps; ++s) {
    const StepReport report = advance(state, config, ops, ws);
    records.push_back(make_diagnostics_record(state.step, state.t, state.u,
                                              state.v, ops, config, &report));
    if (hooks.on_step) hooks.on_step(state, records.back(), report);
  }
  return records;
}

}  // namespace ksfem
