#pragma once

// Independent flat-bottom transcription of both tendency forms, with every
// bottom-dependent term deleted rather than multiplied by beta = 0. Used as
// the oracle for the exact flat-bottom reduction check.

#include "bgn/dynamics.hpp"
#include "bgn/elliptic.hpp"
#include "bgn/fields.hpp"
#include "bgn/grid.hpp"
#include "bgn/regime.hpp"

namespace bgn::test {

struct FlatFields {
  Field h1, h2, f, fp, q1, q2, q3;
};

inline FlatFields derive_flat(const PeriodicGrid& grid, const State& state,
                              const RegimeParams& params, const ModelCoefficients& coeffs) {
  const int n = grid.n;
  FlatFields df;
  df.h1.resize(n);
  df.h2.resize(n);
  df.f.resize(n);
  df.fp.resize(n);
  df.q1.resize(n);
  df.q2.resize(n);
  df.q3.resize(n);
  const double inv_delta = 1.0 / params.delta;
  for (int j = 0; j < n; ++j) {
    df.h1[j] = 1.0 - params.eps * state.zeta[j];
    df.h2[j] = inv_delta + params.eps * state.zeta[j];
    df.q1[j] = 1.0 + coeffs.kappa1 * params.eps * state.zeta[j];
    df.q2[j] = 1.0 + coeffs.kappa2 * params.eps * state.zeta[j];
    const double den = df.h1[j] + params.gamma * df.h2[j];
    df.f[j] = df.h1[j] * df.h2[j] / den;
    df.fp[j] = (df.h1[j] * df.h1[j] - params.gamma * df.h2[j] * df.h2[j]) / (den * den);
    df.q3[j] = 0.5 * (df.fp[j] - coeffs.varsigma);
  }
  return df;
}

inline TOperator t_operator_flat(const PeriodicGrid& grid, const FlatFields& df,
                                 const RegimeParams& params, const ModelCoefficients& coeffs) {
  TOperator op;
  op.q1 = df.q1;
  op.q2 = df.q2;
  op.mu_nu = params.mu * coeffs.nu;
  op.dx = grid.dx;
  op.face_q2.resize(grid.n);
  for (int j = 0; j < grid.n; ++j)
    op.face_q2[j] = 0.5 * (df.q2[j] + df.q2[(j + 1) % grid.n]);
  return op;
}

inline Tendency rhs_primitive_flat(const PeriodicGrid& grid, const State& state,
                                   const RegimeParams& params, const ModelCoefficients& coeffs) {
  const int n = grid.n;
  const FlatFields df = derive_flat(grid, state, params, coeffs);
  const double gd = params.gamma + params.delta;

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

  const double mu_eps_kappa = params.mu * params.eps * coeffs.kappa;
  Field rhs2(n);
  for (int j = 0; j < n; ++j)
    rhs2[j] = -gd * df.q1[j] * dzeta_x[j] - params.eps * df.q1[j] * d_q3v2[j] -
              mu_eps_kappa * d_dv2[j];

  out.dv = t_solve(t_operator_flat(grid, df, params, coeffs), rhs2);
  const double half_eps_sigma = 0.5 * params.eps * coeffs.varsigma;
  for (int j = 0; j < n; ++j) out.dv[j] -= half_eps_sigma * d_v2[j];
  return out;
}

inline Tendency rhs_quasilinear_flat(const PeriodicGrid& grid, const State& state,
                                     const RegimeParams& params,
                                     const ModelCoefficients& coeffs) {
  const int n = grid.n;
  const FlatFields df = derive_flat(grid, state, params, coeffs);
  const double gd = params.gamma + params.delta;

  const Field dzeta_x = derivative(grid, state.zeta, 1);
  const Field dv_x = derivative(grid, state.v, 1);

  Tendency out;
  out.dzeta.resize(n);
  for (int j = 0; j < n; ++j)
    out.dzeta[j] = -params.eps * df.fp[j] * state.v[j] * dzeta_x[j] - df.f[j] * dv_x[j];

  Field fdv(n);
  for (int j = 0; j < n; ++j) fdv[j] = dv_x[j] * dv_x[j];
  const Field d_fdv = derivative(grid, fdv, 1);

  const double mu_kappa = params.mu * coeffs.kappa;
  Field arg(n);
  for (int j = 0; j < n; ++j) {
    const double q0 = gd * df.q1[j];
    const double den = df.h1[j] + params.gamma * df.h2[j];
    const double hsum = df.h1[j] + df.h2[j];
    const double ev = params.eps * state.v[j];
    const double q1bare = -params.gamma * df.q1[j] * hsum * hsum * ev * ev / (den * den * den);
    const double qfrak = 2.0 * df.q1[j] * df.q3[j] * state.v[j] * dv_x[j] + mu_kappa * d_fdv[j];
    arg[j] = q0 * dzeta_x[j] + q1bare * dzeta_x[j] + params.eps * qfrak;
  }

  const Field solved = t_solve(t_operator_flat(grid, df, params, coeffs), arg);
  out.dv.resize(n);
  const double eps_sigma = params.eps * coeffs.varsigma;
  for (int j = 0; j < n; ++j) out.dv[j] = -solved[j] - eps_sigma * state.v[j] * dv_x[j];
  return out;
}

inline State step_rk4_flat(const PeriodicGrid& grid, const State& state,
                           const RegimeParams& params, const ModelCoefficients& coeffs,
                           double dt) {
  auto stage = [&](const State& base, const Tendency& k, double scale, double tof) {
    State s;
    s.t = base.t + tof;
    s.zeta.resize(grid.n);
    s.v.resize(grid.n);
    for (int j = 0; j < grid.n; ++j) {
      s.zeta[j] = base.zeta[j] + scale * k.dzeta[j];
      s.v[j] = base.v[j] + scale * k.dv[j];
    }
    return s;
  };
  const Tendency k1 = rhs_primitive_flat(grid, state, params, coeffs);
  const State s2 = stage(state, k1, 0.5 * dt, 0.5 * dt);
  const Tendency k2 = rhs_primitive_flat(grid, s2, params, coeffs);
  const State s3 = stage(state, k2, 0.5 * dt, 0.5 * dt);
  const Tendency k3 = rhs_primitive_flat(grid, s3, params, coeffs);
  const State s4 = stage(state, k3, dt, dt);
  const Tendency k4 = rhs_primitive_flat(grid, s4, params, coeffs);

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
  return out;
}

}  // namespace bgn::test
