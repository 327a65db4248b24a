// Command line driver: runs the built-in chemotaxis experiments, lists the
// presets and checks meshes for weak acuteness.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "ksfem/config.hpp"
#include "ksfem/io.hpp"
#include "ksfem/mesh.hpp"
#include "ksfem/presets.hpp"
#include "ksfem/solver.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitSolverFailure = 1;
constexpr int kExitConfigError = 2;

std::string snapshot_name(int step) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "snapshot_%06d.vtk", step);
  return buf;
}

int cmd_run(const std::string& preset_name,
            const std::optional<std::string>& config_path,
            const std::optional<std::string>& out_dir,
            const std::optional<std::string>& algorithm,
            const std::optional<int>& gamma,
            const std::optional<int>& steps_override,
            const std::optional<int>& snapshot_every) {
  ksfem::RunConfig rc = ksfem::make_run_config(preset_name);
  if (config_path) ksfem::apply_config_file(rc, *config_path);
  if (algorithm) ksfem::apply_override(rc, "solver.algorithm", *algorithm);
  if (gamma) ksfem::apply_override(rc, "solver.gamma", std::to_string(*gamma));
  if (out_dir) rc.output_dir = *out_dir;
  if (steps_override) {
    if (*steps_override < 0) throw ksfem::ConfigError("steps override must be >= 0");
    rc.steps_override = *steps_override;
  }
  if (snapshot_every) {
    if (*snapshot_every < 1) throw ksfem::ConfigError("snapshot-every must be >= 1");
    rc.snapshot_every = *snapshot_every;
  }

  const ksfem::Mesh mesh =
      rc.mesh_file ? ksfem::load_mesh(*rc.mesh_file) : rc.preset.build_mesh();

  fs::create_directories(rc.output_dir);
  const std::string csv = (fs::path(rc.output_dir) / rc.csv_path).string();
  ksfem::CsvWriter writer(csv);

  auto maybe_snapshot = [&](const ksfem::SimState& state) {
    if (!rc.snapshot_every) return;
    if (state.step % *rc.snapshot_every != 0 && state.step != rc.n_steps()) return;
    const std::string path =
        (fs::path(rc.output_dir) / snapshot_name(state.step)).string();
    ksfem::write_snapshot(state, path);
  };

  ksfem::RunHooks hooks;
  hooks.on_initial = [&](const ksfem::SimState& state,
                         const ksfem::DiagnosticsRecord& rec) {
    writer.append(rec);
    if (rc.snapshot_every) {
      ksfem::write_snapshot(
          state, (fs::path(rc.output_dir) / snapshot_name(0)).string());
    }
  };
  hooks.on_step = [&](const ksfem::SimState& state,
                      const ksfem::DiagnosticsRecord& rec,
                      const ksfem::StepReport&) {
    writer.append(rec);
    maybe_snapshot(state);
  };

  ksfem::SimulationProblem problem{&mesh, rc.preset.u0, rc.preset.v0,
                                   rc.n_steps()};
  try {
    const auto records = ksfem::run_simulation(problem, rc.solver, hooks);
    std::cout << "completed " << rc.n_steps() << " steps of '" << preset_name
              << "' on " << mesh.num_nodes() << " nodes; series in " << csv
              << '\n';
    if (!records.empty()) {
      const auto& last = records.back();
      std::cout << "final t=" << last.t << " linf_u=" << last.linf_u
                << " min_u=" << last.min_u << " min_v=" << last.min_v
                << " energy=" << last.energy << '\n';
    }
  } catch (const ksfem::SolverError& e) {
    std::cerr << "solver failure: " << e.what() << '\n';
    return kExitSolverFailure;
  }
  return kExitOk;
}

int cmd_check_mesh(const std::string& path) {
  const ksfem::Mesh mesh = ksfem::load_mesh(path);
  const auto report = ksfem::is_weakly_acute(mesh);
  std::cout << "mesh: " << path << '\n'
            << "kind: "
            << (mesh.kind() == ksfem::CellKind::p1_triangle ? "tri" : "quad")
            << '\n'
            << "nodes: " << mesh.num_nodes() << '\n'
            << "cells: " << mesh.num_cells() << '\n'
            << "boundary nodes: " << mesh.boundary_nodes().size() << '\n'
            << "h_min (cell diameter): " << ksfem::min_mesh_size(mesh) << '\n'
            << "min edge: " << ksfem::min_edge_length(mesh) << '\n'
            << "h_max: " << ksfem::max_mesh_size(mesh) << '\n'
            << "weakly acute: " << (report.weakly_acute ? "yes" : "no") << '\n';
  if (!report.weakly_acute) {
    std::cout << "offending pairs: " << report.offenders.size() << '\n';
    const size_t show = std::min<size_t>(report.offenders.size(), 10);
    for (size_t i = 0; i < show; ++i) {
      std::cout << "  (" << report.offenders[i].first << ", "
                << report.offenders[i].second << ")\n";
    }
  }
  return kExitOk;
}

int cmd_presets() {
  for (const auto& name : ksfem::preset_names()) {
    const ksfem::Preset p = ksfem::resolve_preset(name);
    std::cout << name << ": k=" << p.k << " T=" << p.T << " steps="
              << p.default_steps() << '\n';
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Keller-Segel chemotaxis simulator with bound-preserving "
               "stabilized finite elements"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "Run a preset experiment");
  std::string preset = "smooth_coalescence";
  std::optional<std::string> config_path, out_dir, algorithm;
  std::optional<int> gamma, steps_override, snapshot_every;
  run->add_option("--preset", preset, "Preset name (see 'presets')");
  run->add_option("--config", config_path, "INI config file");
  run->add_option("--out", out_dir, "Output directory");
  run->add_option("--algorithm", algorithm, "alg1 or alg2");
  run->add_option("--gamma", gamma, "B2^v switch for alg2 (0 or 1)");
  run->add_option("--steps-override", steps_override, "Run this many steps");
  run->add_option("--snapshot-every", snapshot_every,
                  "Write a VTK snapshot every N steps");

  auto* presets = app.add_subcommand("presets", "List the built-in presets");

  auto* check = app.add_subcommand("check-mesh",
                                   "Report acuteness and mesh sizes");
  std::string mesh_path;
  check->add_option("--mesh", mesh_path, "Mesh file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfigError;
  }

  try {
    if (run->parsed()) {
      return cmd_run(preset, config_path, out_dir, algorithm, gamma,
                     steps_override, snapshot_every);
    }
    if (presets->parsed()) return cmd_presets();
    if (check->parsed()) return cmd_check_mesh(mesh_path);
  } catch (const ksfem::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const ksfem::IoError& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const ksfem::MeshError& e) {
    std::cerr << "mesh error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const ksfem::SolverError& e) {
    std::cerr << "solver failure: " << e.what() << '\n';
    return kExitSolverFailure;
  }
  return kExitOk;
}
