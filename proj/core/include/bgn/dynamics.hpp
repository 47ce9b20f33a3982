#pragma once

#include <string>
#include <vector>

#include "bgn/diagnostics.hpp"
#include "bgn/fields.hpp"
#include "bgn/grid.hpp"
#include "bgn/regime.hpp"

namespace bgn {

struct Tendency {
  Field dzeta;
  Field dv;
};

// Time derivative in primitive form. The zeta equation is discretized as a
// perfect flux -d/dx(f v), so the discrete mass dx*sum(zeta) telescopes; the
// v equation inverts the elliptic operator once:
//   dv = T^{-1}[ -(g+d) q1 dzeta - eps q1 d(q3 v^2) - mu eps kappa d((dv)^2)
//                + mu beta omega (dzeta)(d2b) ] - (eps/2) varsigma d(v^2).
Tendency rhs_primitive(const PeriodicGrid& grid, const State& state, const Bathymetry& bathy,
                       const RegimeParams& params, const ModelCoefficients& coeffs);

// Time derivative assembled literally as -A[U] dU/dx - B[U] from the
// quasilinear form. Algebraically identical to rhs_primitive in the
// continuum; the discrete difference is pure truncation error, which the
// form-equivalence study measures.
Tendency rhs_quasilinear(const PeriodicGrid& grid, const State& state, const Bathymetry& bathy,
                         const RegimeParams& params, const ModelCoefficients& coeffs);

// dt = cfl * dx / max_j [ sqrt(Q0 f / q1) + eps (|varsigma v| + |fp v|) ].
// At rest over a flat bottom the bracket is exactly 1.
double cfl_dt(const PeriodicGrid& grid, const State& state, const DerivedFields& df,
              const RegimeParams& params, const ModelCoefficients& coeffs, double cfl);

// Classical four-stage Runge-Kutta step driven by rhs_primitive.
State step_rk4(const PeriodicGrid& grid, const State& state, const Bathymetry& bathy,
               const RegimeParams& params, const ModelCoefficients& coeffs, double dt);

// Advance to t_end with CFL-controlled steps (no recording).
State advance(const PeriodicGrid& grid, State state, const Bathymetry& bathy,
              const RegimeParams& params, const ModelCoefficients& coeffs, double t_end,
              double cfl);

// Advance with a fixed step, used by the temporal refinement study.
State advance_fixed(const PeriodicGrid& grid, State state, const Bathymetry& bathy,
                    const RegimeParams& params, const ModelCoefficients& coeffs, double dt,
                    long nsteps);

enum class RunStatus { completed, halted_h1, halted_h2, halted_h3, failed };

const char* to_string(RunStatus status);

struct StepControl {
  double cfl = 0.5;
  double T = 1.0;  // horizon: t_final = T / max(eps, beta)
  int snapshot_stride = 10;
};

struct SimulateOptions {
  StepControl control;
  Thresholds thresholds;
  double s_energy = 2.0;
};

struct SimulationResult {
  RunStatus status = RunStatus::completed;
  State final_state;
  std::vector<State> snapshots;
  std::vector<DiagnosticsRow> diagnostics;
  long steps = 0;
  double violation_time = 0;
  int violation_index = -1;
  std::string message;
};

// Advances to t_final = T / max(eps, beta) (or T when eps = beta = 0),
// recording diagnostics and snapshots every snapshot_stride steps, halting
// at the first monitor violation with its time and location.
SimulationResult simulate(const PeriodicGrid& grid, const State& initial, const Bathymetry& bathy,
                          const RegimeParams& params, const ModelCoefficients& coeffs,
                          const SimulateOptions& options);

}  // namespace bgn
