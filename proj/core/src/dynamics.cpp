#include "bgn/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "bgn/elliptic.hpp"
#include "bgn/errors.hpp"

namespace bgn {

namespace {

bool all_finite(const Field& f) {
  for (double x : f)
    if (!std::isfinite(x)) return false;
  return true;
}

}  // namespace

Tendency rhs_primitive(const PeriodicGrid& grid, const State& state, const Bathymetry& bathy,
                       const RegimeParams& params, const ModelCoefficients& coeffs) {
  const int n = grid.n;
  const double eps = params.eps;
  const double gd = params.gamma + params.delta;
  const DerivedFields df = derive(grid, state, bathy, params, coeffs);

  Tendency out;

  Field flux(n);
  for (int j = 0; j < n; ++j) flux[j] = df.f[j] * state.v[j];
  out.dzeta = derivative(grid, flux, 1);
  for (double& x : out.dzeta) x = -x;

  const Field dzeta_x = derivative(grid, state.zeta, 1);
  const Field dv_x = derivative(grid, state.v, 1);

  Field q3v2(n), dv2(n), v2(n);
  for (int j = 0; j < n; ++j) {
    q3v2[j] = df.q3[j] * state.v[j] * state.v[j];
    dv2[j] = dv_x[j] * dv_x[j];
    v2[j] = state.v[j] * state.v[j];
  }
  const Field d_q3v2 = derivative(grid, q3v2, 1);
  const Field d_dv2 = derivative(grid, dv2, 1);
  const Field d_v2 = derivative(grid, v2, 1);

  const double mu_eps_kappa = params.mu * eps * coeffs.kappa;
  const double mu_beta_omega = params.mu * params.beta * coeffs.omega;
  Field rhs2(n);
  for (int j = 0; j < n; ++j) {
    rhs2[j] = -gd * df.q1[j] * dzeta_x[j] - eps * df.q1[j] * d_q3v2[j] -
              mu_eps_kappa * d_dv2[j] + mu_beta_omega * dzeta_x[j] * bathy.d2b[j];
  }

  const TOperator top = build_t_operator(grid, df, params, coeffs);
  out.dv = t_solve(top, rhs2);
  const double half_eps_sigma = 0.5 * eps * coeffs.varsigma;
  for (int j = 0; j < n; ++j) out.dv[j] -= half_eps_sigma * d_v2[j];
  return out;
}

Tendency rhs_quasilinear(const PeriodicGrid& grid, const State& state, const Bathymetry& bathy,
                         const RegimeParams& params, const ModelCoefficients& coeffs) {
  const int n = grid.n;
  const double eps = params.eps;
  const double beta = params.beta;
  const double gamma = params.gamma;
  const DerivedFields df = derive(grid, state, bathy, params, coeffs);

  const Field dzeta_x = derivative(grid, state.zeta, 1);
  const Field dv_x = derivative(grid, state.v, 1);

  Tendency out;
  out.dzeta.resize(n);
  for (int j = 0; j < n; ++j) {
    out.dzeta[j] = -eps * df.fp[j] * state.v[j] * dzeta_x[j] - df.f[j] * dv_x[j] +
                   beta * bathy.db[j] * df.g[j] * state.v[j];
  }

  const Field qfrak_dv = qfrak_apply(grid, df, state.v, dv_x, params, coeffs);

  Field arg(n);
  for (int j = 0; j < n; ++j) {
    const double den = df.h1[j] + gamma * df.h2[j];
    const double brow2 = gamma * beta * df.q1[j] * df.h1[j] * (df.h1[j] + df.h2[j]) *
                         state.v[j] * state.v[j] * bathy.db[j] / (den * den * den);
    arg[j] = df.Q0[j] * dzeta_x[j] + df.Q1bare[j] * dzeta_x[j] + eps * qfrak_dv[j] + eps * brow2;
  }

  const TOperator top = build_t_operator(grid, df, params, coeffs);
  const Field solved = t_solve(top, arg);
  out.dv.resize(n);
  const double eps_sigma = eps * coeffs.varsigma;
  for (int j = 0; j < n; ++j) out.dv[j] = -solved[j] - eps_sigma * state.v[j] * dv_x[j];
  return out;
}

double cfl_dt(const PeriodicGrid& grid, const State& state, const DerivedFields& df,
              const RegimeParams& params, const ModelCoefficients& coeffs, double cfl) {
  if (!(cfl > 0.0 && cfl <= 1.0)) throw std::invalid_argument("cfl must lie in (0, 1]");
  double cmax = 0.0;
  for (int j = 0; j < grid.n; ++j) {
    const double c = std::sqrt(df.Q0[j] * df.f[j] / df.q1[j]) +
                     params.eps * (std::abs(coeffs.varsigma * state.v[j]) +
                                   std::abs(df.fp[j] * state.v[j]));
    cmax = std::max(cmax, c);
  }
  if (!std::isfinite(cmax) || !(cmax > 0.0))
    throw NonFiniteSpeed("wave speed bound is not finite and positive");
  return cfl * grid.dx / cmax;
}

namespace {

State apply_stage(const PeriodicGrid& grid, const State& base, const Tendency& k, double scale,
                  double dt_for_time) {
  State out;
  out.t = base.t + dt_for_time;
  out.zeta.resize(grid.n);
  out.v.resize(grid.n);
  for (int j = 0; j < grid.n; ++j) {
    out.zeta[j] = base.zeta[j] + scale * k.dzeta[j];
    out.v[j] = base.v[j] + scale * k.dv[j];
  }
  return out;
}

}  // namespace

State step_rk4(const PeriodicGrid& grid, const State& state, const Bathymetry& bathy,
               const RegimeParams& params, const ModelCoefficients& coeffs, double dt) {
  const Tendency k1 = rhs_primitive(grid, state, bathy, params, coeffs);
  const State s2 = apply_stage(grid, state, k1, 0.5 * dt, 0.5 * dt);
  const Tendency k2 = rhs_primitive(grid, s2, bathy, params, coeffs);
  const State s3 = apply_stage(grid, state, k2, 0.5 * dt, 0.5 * dt);
  const Tendency k3 = rhs_primitive(grid, s3, bathy, params, coeffs);
  const State s4 = apply_stage(grid, state, k3, dt, dt);
  const Tendency k4 = rhs_primitive(grid, s4, bathy, params, coeffs);

  State out;
  out.t = state.t + dt;
  out.zeta.resize(grid.n);
  out.v.resize(grid.n);
  const double w = dt / 6.0;
  for (int j = 0; j < grid.n; ++j) {
    out.zeta[j] =
        state.zeta[j] + w * (k1.dzeta[j] + 2.0 * k2.dzeta[j] + 2.0 * k3.dzeta[j] + k4.dzeta[j]);
    out.v[j] = state.v[j] + w * (k1.dv[j] + 2.0 * k2.dv[j] + 2.0 * k3.dv[j] + k4.dv[j]);
  }
  if (!all_finite(out.zeta) || !all_finite(out.v))
    throw NonFiniteState("state became non-finite after a step at t = " + std::to_string(out.t));
  return out;
}

State advance(const PeriodicGrid& grid, State state, const Bathymetry& bathy,
              const RegimeParams& params, const ModelCoefficients& coeffs, double t_end,
              double cfl) {
  while (state.t < t_end * (1.0 - 1e-12)) {
    const DerivedFields df = derive(grid, state, bathy, params, coeffs);
    double dt = cfl_dt(grid, state, df, params, coeffs, cfl);
    dt = std::min(dt, t_end - state.t);
    state = step_rk4(grid, state, bathy, params, coeffs, dt);
  }
  return state;
}

State advance_fixed(const PeriodicGrid& grid, State state, const Bathymetry& bathy,
                    const RegimeParams& params, const ModelCoefficients& coeffs, double dt,
                    long nsteps) {
  for (long i = 0; i < nsteps; ++i) state = step_rk4(grid, state, bathy, params, coeffs, dt);
  return state;
}

const char* to_string(RunStatus status) {
  switch (status) {
    case RunStatus::completed: return "completed";
    case RunStatus::halted_h1: return "halted_H1";
    case RunStatus::halted_h2: return "halted_H2";
    case RunStatus::halted_h3: return "halted_H3";
    case RunStatus::failed: return "failed";
  }
  return "unknown";
}

namespace {

RunStatus violated_status(const ConditionReport& report) {
  if (!report.ok_h1) return RunStatus::halted_h1;
  if (!report.ok_h2) return RunStatus::halted_h2;
  return RunStatus::halted_h3;
}

}  // namespace

SimulationResult simulate(const PeriodicGrid& grid, const State& initial, const Bathymetry& bathy,
                          const RegimeParams& params, const ModelCoefficients& coeffs,
                          const SimulateOptions& options) {
  SimulationResult result;
  const double m = std::max(params.eps, params.beta);
  const double t_final = m > 0.0 ? options.control.T / m : options.control.T;
  const int stride = std::max(1, options.control.snapshot_stride);

  State state = initial;

  auto record = [&](double dt_used) {
    DiagnosticsRow row;
    row.t = state.t;
    row.dt = dt_used;
    const ConditionReport rep =
        check_conditions(grid, state, bathy, params, coeffs, options.thresholds);
    row.min_h1 = rep.min_h1;
    row.min_h2 = rep.min_h2;
    row.min_q1 = rep.min_q1;
    row.min_q2 = rep.min_q2;
    row.min_h3 = rep.min_h3;
    const EnergyReport en = energy(grid, state, bathy, params, coeffs, options.s_energy);
    row.mass = en.mass;
    row.e0 = en.e0;
    row.es = en.es;
    result.diagnostics.push_back(row);
    result.snapshots.push_back(state);
  };

  const ConditionReport first =
      check_conditions(grid, state, bathy, params, coeffs, options.thresholds);
  if (!first.all_ok()) {
    result.status = violated_status(first);
    result.violation_time = state.t;
    result.violation_index = first.first_violation_location.value_or(-1);
    result.final_state = std::move(state);
    return result;
  }
  record(0.0);

  try {
    while (state.t < t_final * (1.0 - 1e-12)) {
      const DerivedFields df = derive(grid, state, bathy, params, coeffs);
      double dt = cfl_dt(grid, state, df, params, coeffs, options.control.cfl);
      dt = std::min(dt, t_final - state.t);
      state = step_rk4(grid, state, bathy, params, coeffs, dt);
      ++result.steps;

      const ConditionReport rep =
          check_conditions(grid, state, bathy, params, coeffs, options.thresholds);
      if (!rep.all_ok()) {
        result.status = violated_status(rep);
        result.violation_time = state.t;
        result.violation_index = rep.first_violation_location.value_or(-1);
        break;
      }
      if (result.steps % stride == 0 || state.t >= t_final * (1.0 - 1e-12)) record(dt);
    }
  } catch (const DepthViolation& e) {
    result.status = RunStatus::halted_h1;
    result.violation_time = state.t;
    result.message = e.what();
  } catch (const EllipticityViolation& e) {
    result.status = RunStatus::halted_h2;
    result.violation_time = state.t;
    result.message = e.what();
  } catch (const ModelError& e) {
    result.status = RunStatus::failed;
    result.violation_time = state.t;
    result.message = e.what();
  }

  result.final_state = std::move(state);
  return result;
}

}  // namespace bgn
