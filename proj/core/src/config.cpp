#include "ksfem/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace ksfem {

RunConfig make_run_config(const std::string& preset_name) {
  RunConfig rc;
  rc.preset = resolve_preset(preset_name);
  rc.solver.k = rc.preset.k;
  rc.solver.algorithm = rc.preset.algorithm;
  rc.solver.gamma = rc.preset.gamma;
  return rc;
}

namespace {

std::string trim(const std::string& s) {
  size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

[[noreturn]] void key_error(const std::string& where, const std::string& what) {
  throw ConfigError(where + ": " + what);
}

double parse_double(const std::string& where, const std::string& v) {
  try {
    size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("trailing characters");
    return x;
  } catch (const std::exception&) {
    key_error(where, "expected a number, got '" + v + "'");
  }
}

int parse_int(const std::string& where, const std::string& v) {
  try {
    size_t pos = 0;
    const int x = std::stoi(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("trailing characters");
    return x;
  } catch (const std::exception&) {
    key_error(where, "expected an integer, got '" + v + "'");
  }
}

void apply_key(RunConfig& rc, const std::string& section, const std::string& key,
               const std::string& value, const std::string& where) {
  if (section == "mesh") {
    if (key == "nx") {
      rc.preset.nx = parse_int(where, value);
    } else if (key == "ny") {
      rc.preset.ny = parse_int(where, value);
    } else if (key == "rings") {
      rc.preset.rings = parse_int(where, value);
    } else if (key == "sectors") {
      rc.preset.sectors = parse_int(where, value);
    } else if (key == "radius") {
      rc.preset.disk_radius = parse_double(where, value);
    } else if (key == "hmin_target") {
      rc.preset.grading_hmin = parse_double(where, value);
    } else if (key == "kind") {
      if (value == "tri") {
        rc.preset.cell_kind = CellKind::p1_triangle;
      } else if (value == "quad") {
        rc.preset.cell_kind = CellKind::q1_quadrilateral;
      } else {
        key_error(where, "kind must be 'tri' or 'quad'");
      }
    } else if (key == "file") {
      rc.mesh_file = value;
    } else {
      key_error(where, "unknown key 'mesh." + key + "'");
    }
    return;
  }
  if (section == "solver") {
    if (key == "k") {
      rc.solver.k = parse_double(where, value);
      if (!(rc.solver.k > 0.0)) key_error(where, "k must be positive");
    } else if (key == "T") {
      rc.preset.T = parse_double(where, value);
    } else if (key == "algorithm") {
      if (value == "alg1") {
        rc.solver.algorithm = Algorithm::alg1;
      } else if (value == "alg2") {
        rc.solver.algorithm = Algorithm::alg2;
      } else {
        key_error(where, "algorithm must be 'alg1' or 'alg2'");
      }
    } else if (key == "gamma") {
      const int g = parse_int(where, value);
      if (g != 0 && g != 1) key_error(where, "gamma must be 0 or 1");
      rc.solver.gamma = g;
    } else if (key == "q") {
      rc.solver.detector_q = parse_double(where, value);
      if (!(rc.solver.detector_q > 0.0)) key_error(where, "q must be positive");
    } else if (key == "detector_mode") {
      if (value == "extrema") {
        rc.solver.detector_mode = DetectorMode::extrema;
      } else if (value == "minima_only") {
        rc.solver.detector_mode = DetectorMode::minima_only;
      } else if (value == "auto") {
        rc.solver.detector_mode.reset();
      } else {
        key_error(where, "detector_mode must be extrema, minima_only or auto");
      }
    } else if (key == "epsilon") {
      rc.solver.entropy.epsilon = parse_double(where, value);
      if (!(rc.solver.entropy.epsilon > 0.0)) {
        key_error(where, "epsilon must be positive");
      }
    } else if (key == "picard_residual_tol") {
      rc.solver.picard_residual_tol = parse_double(where, value);
    } else if (key == "picard_increment_tol") {
      rc.solver.picard_increment_tol = parse_double(where, value);
    } else if (key == "picard_max_iters") {
      rc.solver.picard_max_iters = parse_int(where, value);
    } else if (key == "backtrack_max_halvings") {
      rc.solver.backtrack_max_halvings = parse_int(where, value);
    } else if (key == "linear_tol") {
      rc.solver.linear_tol = parse_double(where, value);
    } else {
      key_error(where, "unknown key 'solver." + key + "'");
    }
    return;
  }
  if (section == "output") {
    if (key == "dir") {
      rc.output_dir = value;
    } else if (key == "csv") {
      rc.csv_path = value;
    } else if (key == "snapshot_every") {
      const int s = parse_int(where, value);
      if (s < 1) key_error(where, "snapshot_every must be >= 1");
      rc.snapshot_every = s;
    } else {
      key_error(where, "unknown key 'output." + key + "'");
    }
    return;
  }
  key_error(where, "unknown section '" + section + "'");
}

}  // namespace

void apply_override(RunConfig& config, const std::string& dotted_key,
                    const std::string& value) {
  const auto dot = dotted_key.find('.');
  if (dot == std::string::npos) {
    throw ConfigError("override key '" + dotted_key +
                      "' must look like section.key");
  }
  apply_key(config, trim(dotted_key.substr(0, dot)),
            trim(dotted_key.substr(dot + 1)), trim(value),
            "override '" + dotted_key + "'");
}

void apply_config_file(RunConfig& config, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::string line;
  std::string section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string t = trim(line);
    if (t.empty()) continue;
    const std::string where = path + ":" + std::to_string(lineno);
    if (t.front() == '[') {
      if (t.back() != ']') throw ConfigError(where + ": unterminated section header");
      section = trim(t.substr(1, t.size() - 2));
      continue;
    }
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(where + ": expected key = value");
    }
    std::string key = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));
    std::string sec = section;
    const auto dot = key.find('.');
    if (dot != std::string::npos) {
      sec = trim(key.substr(0, dot));
      key = trim(key.substr(dot + 1));
    }
    if (sec.empty()) {
      throw ConfigError(where + ": key '" + key + "' outside any section");
    }
    apply_key(config, sec, key, value, where);
  }
}

}  // namespace ksfem
