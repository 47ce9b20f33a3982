#pragma once

#include <string>
#include <vector>

#include "bgn/diagnostics.hpp"
#include "bgn/fields.hpp"
#include "bgn/grid.hpp"

namespace bgn {

// 17-significant-digit decimal rendering used by every output file, so that
// identical runs produce byte-identical artifacts.
std::string format_double(double value);

// Columns: x, zeta, v, b.
void write_snapshot_csv(const std::string& path, const PeriodicGrid& grid, const State& state,
                        const Bathymetry& bathy);

// Columns: t, mass, E0, Es, min_h1, min_h2, min_q1, min_q2, min_H3, dt.
void write_diagnostics_csv(const std::string& path, const std::vector<DiagnosticsRow>& rows);

}  // namespace bgn
