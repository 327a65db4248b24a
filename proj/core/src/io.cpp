#include "ksfem/io.hpp"

#include <cstdio>
#include <fstream>

namespace ksfem {

namespace {

constexpr const char* kCsvHeader =
    "step,t,l1_u,l1_v,l2_v,linf_u,linf_v,min_u,min_v,energy,picard_u,"
    "picard_v,hk_indicator";

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

std::string format_csv_row(const DiagnosticsRecord& r) {
  std::string row = std::to_string(r.step);
  row += ',' + fmt(r.t);
  row += ',' + fmt(r.l1_u);
  row += ',' + fmt(r.l1_v);
  row += ',' + fmt(r.l2_v);
  row += ',' + fmt(r.linf_u);
  row += ',' + fmt(r.linf_v);
  row += ',' + fmt(r.min_u);
  row += ',' + fmt(r.min_v);
  row += ',' + fmt(r.energy);
  row += ',' + std::to_string(r.picard_iters_u);
  row += ',' + std::to_string(r.picard_iters_v);
  row += ',' + fmt(r.hk_indicator);
  return row;
}

void write_timeseries_csv(const std::vector<DiagnosticsRecord>& records,
                          const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << kCsvHeader << '\n';
  for (const auto& r : records) out << format_csv_row(r) << '\n';
  if (!out) throw IoError("write failed: " + path);
}

CsvWriter::CsvWriter(const std::string& path) : path_(path) {
  std::ofstream out(path_);
  if (!out) throw IoError("cannot open for writing: " + path_);
  out << kCsvHeader << '\n';
  if (!out) throw IoError("write failed: " + path_);
}

void CsvWriter::append(const DiagnosticsRecord& record) {
  std::ofstream out(path_, std::ios::app);
  if (!out) throw IoError("cannot append to: " + path_);
  out << format_csv_row(record) << '\n';
  out.flush();
  if (!out) throw IoError("write failed: " + path_);
}

void write_snapshot(const SimState& state, const std::string& path) {
  const Mesh& mesh = state.u.mesh();
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path);

  out << "# vtk DataFile Version 3.0\n";
  out << "ksfem snapshot step " << state.step << " t " << fmt(state.t) << '\n';
  out << "ASCII\nDATASET UNSTRUCTURED_GRID\n";
  out << "POINTS " << mesh.num_nodes() << " double\n";
  for (int i = 0; i < mesh.num_nodes(); ++i) {
    const Point& p = mesh.node(i);
    out << fmt(p[0]) << ' ' << fmt(p[1]) << " 0\n";
  }
  const int m = mesh.nodes_per_cell();
  out << "CELLS " << mesh.num_cells() << ' ' << mesh.num_cells() * (m + 1)
      << '\n';
  for (int c = 0; c < mesh.num_cells(); ++c) {
    out << m;
    for (int v : mesh.cell(c)) out << ' ' << v;
    out << '\n';
  }
  out << "CELL_TYPES " << mesh.num_cells() << '\n';
  const int vtk_type = mesh.kind() == CellKind::p1_triangle ? 5 : 9;
  for (int c = 0; c < mesh.num_cells(); ++c) out << vtk_type << '\n';

  out << "POINT_DATA " << mesh.num_nodes() << '\n';
  out << "SCALARS u double 1\nLOOKUP_TABLE default\n";
  for (int i = 0; i < mesh.num_nodes(); ++i) out << fmt(state.u[i]) << '\n';
  out << "SCALARS v double 1\nLOOKUP_TABLE default\n";
  for (int i = 0; i < mesh.num_nodes(); ++i) out << fmt(state.v[i]) << '\n';
  if (!out) throw IoError("write failed: " + path);
}

}  // namespace ksfem
