#include "bgn/io.hpp"

#include <cstdio>
#include <fstream>

#include "bgn/errors.hpp"

namespace bgn {

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  return out;
}

}  // namespace

void write_snapshot_csv(const std::string& path, const PeriodicGrid& grid, const State& state,
                        const Bathymetry& bathy) {
  std::ofstream out = open_out(path);
  out << "x,zeta,v,b\n";
  for (int j = 0; j < grid.n; ++j) {
    out << format_double(grid.node(j)) << ',' << format_double(state.zeta[j]) << ','
        << format_double(state.v[j]) << ',' << format_double(bathy.b[j]) << '\n';
  }
  if (!out) throw IoError("failed while writing '" + path + "'");
}

void write_diagnostics_csv(const std::string& path, const std::vector<DiagnosticsRow>& rows) {
  std::ofstream out = open_out(path);
  out << "t,mass,E0,Es,min_h1,min_h2,min_q1,min_q2,min_H3,dt\n";
  for (const DiagnosticsRow& r : rows) {
    out << format_double(r.t) << ',' << format_double(r.mass) << ',' << format_double(r.e0) << ','
        << format_double(r.es) << ',' << format_double(r.min_h1) << ','
        << format_double(r.min_h2) << ',' << format_double(r.min_q1) << ','
        << format_double(r.min_q2) << ',' << format_double(r.min_h3) << ','
        << format_double(r.dt) << '\n';
  }
  if (!out) throw IoError("failed while writing '" + path + "'");
}

}  // namespace bgn
