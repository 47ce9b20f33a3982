#pragma once

#include <optional>
#include <vector>

#include "bgn/fields.hpp"
#include "bgn/grid.hpp"
#include "bgn/regime.hpp"

namespace bgn {

// Monitoring thresholds for the pointwise conditions. The model only needs
// strict positivity; positive floors make the monitors actionable.
struct Thresholds {
  double h01 = 0.05;  // depth condition H1
  double h02 = 0.05;  // ellipticity condition H2
  double h03 = 0.05;  // symmetrizer positivity H3
};

struct ConditionReport {
  double min_h1 = 0, min_h2 = 0;
  double min_q1 = 0, min_q2 = 0;
  double min_h3 = 0;  // pointwise minimum of Q0 + Q1bare
  bool ok_h1 = false, ok_h2 = false, ok_h3 = false;
  std::optional<int> first_violation_location;

  bool all_ok() const { return ok_h1 && ok_h2 && ok_h3; }
};

// Pointwise minima of h1, h2, q1, q2 and Q0 + Q1bare, against the given
// thresholds. Never throws; H3 uses the state's own (zeta, v) as reference.
ConditionReport check_conditions(const PeriodicGrid& grid, const State& state,
                                 const Bathymetry& bathy, const RegimeParams& params,
                                 const ModelCoefficients& coeffs, const Thresholds& thresholds);

struct EnergyReport {
  double t = 0;
  double e0 = 0;    // symmetrizer energy at s = 0
  double es = 0;    // symmetrizer energy at the configured s
  double xs = 0;    // sqrt(|zeta|_{H^s}^2 + |v|_{H^s}^2 + mu |dx v|_{H^s}^2)
  double mass = 0;  // dx * sum(zeta)
};

// Symmetrizer energy
//   E^s(U)^2 = (L^s zeta, [(Q0+Q1bare)/f](ref) L^s zeta) + (L^s v, T(ref) L^s v)
// evaluated with `ref` as the reference state. Propagates H1/H2 violations
// of the reference; throws SymmetrizerViolation if Q0 + Q1bare <= 0 there.
EnergyReport energy(const PeriodicGrid& grid, const State& ref, const State& state,
                    const Bathymetry& bathy, const RegimeParams& params,
                    const ModelCoefficients& coeffs, double s);

// Self-energy variant (ref = state), the form the nonlinear estimates use.
EnergyReport energy(const PeriodicGrid& grid, const State& state, const Bathymetry& bathy,
                    const RegimeParams& params, const ModelCoefficients& coeffs, double s);

// One recorded step of a run.
struct DiagnosticsRow {
  double t = 0;
  double mass = 0;
  double e0 = 0;
  double es = 0;
  double min_h1 = 0, min_h2 = 0, min_q1 = 0, min_q2 = 0, min_h3 = 0;
  double dt = 0;
};

struct GrowthFit {
  double lambda = 0;
  double c = 0;
  bool ok = false;
};

// Smallest lambda >= 0 such that E0(t) <= e^{max(eps,beta) lambda t} (E0(0) + C max(eps,beta) t)
// holds across the series with a moderate C (C <= c_cap); ok iff
// lambda <= lambda_cap. Throws EmptySeries on an empty series.
GrowthFit growth_bound_fit(const std::vector<DiagnosticsRow>& series, const RegimeParams& params,
                           double lambda_cap = 10.0, double c_cap = 10.0);

enum class OrderTarget { qbar_expansion, rbar_expansion, form_equivalence, spatial, temporal };

struct OrderStudyConfig {
  RegimeParams params;  // eps and beta are overridden along the expansion ladder

  // Operator-level studies (fixed smooth internal profiles).
  std::vector<double> expansion_ladder = {0.2, 0.1, 0.05, 0.025};
  int expansion_n = 512;
  double expansion_length = 2.0 * pi;
  std::vector<int> grid_ladder = {128, 256, 512, 1024};

  // Simulation self-convergence studies (scenario profiles).
  double scenario_length = 20.0;
  Profile bathymetry;
  Profile init_zeta{ProfileKind::gaussian, 1.0, 1.0, 10.0, 1};
  Profile init_v;
  double t_end = 1.0;
  double cfl = 0.5;
  int temporal_n = 128;
  int temporal_points = 3;  // dt ladder entries, each compared against its halved run
};

struct OrderStudyResult {
  std::vector<double> ladder;
  std::vector<double> residuals;
  double slope = 0;
};

// Log-log least-squares slope of residual against the ladder parameter
// (t = eps = beta for the expansion targets, dx or dt for convergence).
// Throws DegenerateLadder with fewer than 3 usable points.
OrderStudyResult order_study(OrderTarget target, const OrderStudyConfig& config);

double fit_loglog_slope(const std::vector<double>& xs, const std::vector<double>& rs);

}  // namespace bgn
