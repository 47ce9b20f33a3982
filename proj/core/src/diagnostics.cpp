#include "bgn/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bgn/dynamics.hpp"
#include "bgn/elliptic.hpp"
#include "bgn/errors.hpp"

namespace bgn {

ConditionReport check_conditions(const PeriodicGrid& grid, const State& state,
                                 const Bathymetry& bathy, const RegimeParams& params,
                                 const ModelCoefficients& coeffs, const Thresholds& thresholds) {
  const int n = grid.n;
  const double eps = params.eps;
  const double beta = params.beta;
  const double gamma = params.gamma;
  const double inv_delta = 1.0 / params.delta;
  const double gd = params.gamma + params.delta;

  Field h1(n), h2(n), q1(n), q2(n), h3(n);
  for (int j = 0; j < n; ++j) {
    h1[j] = 1.0 - eps * state.zeta[j];
    h2[j] = inv_delta + eps * state.zeta[j] - beta * bathy.b[j];
    q1[j] = 1.0 + coeffs.kappa1 * eps * state.zeta[j] + coeffs.omega1 * beta * bathy.b[j];
    q2[j] = 1.0 + coeffs.kappa2 * eps * state.zeta[j] + coeffs.omega2 * beta * bathy.b[j];
    const double den = h1[j] + gamma * h2[j];
    const double hsum = h1[j] + h2[j];
    const double ev = eps * state.v[j];
    const double q0 = gd * q1[j] - params.mu * beta * coeffs.omega * bathy.d2b[j];
    const double q1bare = -gamma * q1[j] * hsum * hsum * ev * ev / (den * den * den);
    h3[j] = q0 + q1bare;
  }

  ConditionReport rep;
  rep.min_h1 = *std::min_element(h1.begin(), h1.end());
  rep.min_h2 = *std::min_element(h2.begin(), h2.end());
  rep.min_q1 = *std::min_element(q1.begin(), q1.end());
  rep.min_q2 = *std::min_element(q2.begin(), q2.end());
  rep.min_h3 = *std::min_element(h3.begin(), h3.end());
  rep.ok_h1 = std::min(rep.min_h1, rep.min_h2) >= thresholds.h01;
  rep.ok_h2 = std::min(rep.min_q1, rep.min_q2) >= thresholds.h02;
  rep.ok_h3 = rep.min_h3 >= thresholds.h03;

  if (!rep.ok_h1) {
    for (int j = 0; j < n; ++j)
      if (h1[j] < thresholds.h01 || h2[j] < thresholds.h01) {
        rep.first_violation_location = j;
        break;
      }
  } else if (!rep.ok_h2) {
    for (int j = 0; j < n; ++j)
      if (q1[j] < thresholds.h02 || q2[j] < thresholds.h02) {
        rep.first_violation_location = j;
        break;
      }
  } else if (!rep.ok_h3) {
    for (int j = 0; j < n; ++j)
      if (h3[j] < thresholds.h03) {
        rep.first_violation_location = j;
        break;
      }
  }
  return rep;
}

EnergyReport energy(const PeriodicGrid& grid, const State& ref, const State& state,
                    const Bathymetry& bathy, const RegimeParams& params,
                    const ModelCoefficients& coeffs, double s) {
  const int n = grid.n;
  const DerivedFields df = derive(grid, ref, bathy, params, coeffs);

  Field weight(n);
  for (int j = 0; j < n; ++j) {
    const double z = df.Q0[j] + df.Q1bare[j];
    if (!(z > 0.0))
      throw SymmetrizerViolation("symmetrizer block Q0 + Q1 lost positivity at node " +
                                 std::to_string(j));
    weight[j] = z / df.f[j];
  }
  const TOperator top = build_t_operator(grid, df, params, coeffs);

  auto quadratic = [&](const Field& z, const Field& v) {
    Field wz(n);
    for (int j = 0; j < n; ++j) wz[j] = weight[j] * z[j];
    const double total = inner(grid, z, wz) + inner(grid, v, t_apply(top, v));
    return std::sqrt(std::max(total, 0.0));
  };

  EnergyReport rep;
  rep.t = state.t;
  rep.e0 = quadratic(state.zeta, state.v);
  const Field lz = lambda_s(grid, state.zeta, s);
  const Field lv = lambda_s(grid, state.v, s);
  rep.es = quadratic(lz, lv);

  const double nz = sobolev_norm(grid, state.zeta, s);
  const double nv = sobolev_norm(grid, state.v, s);
  const double ndv = sobolev_norm(grid, spectral_derivative(grid, state.v), s);
  rep.xs = std::sqrt(nz * nz + nv * nv + params.mu * ndv * ndv);

  double sum = 0.0;
  for (int j = 0; j < n; ++j) sum += state.zeta[j];
  rep.mass = grid.dx * sum;
  return rep;
}

EnergyReport energy(const PeriodicGrid& grid, const State& state, const Bathymetry& bathy,
                    const RegimeParams& params, const ModelCoefficients& coeffs, double s) {
  return energy(grid, state, state, bathy, params, coeffs, s);
}

GrowthFit growth_bound_fit(const std::vector<DiagnosticsRow>& series, const RegimeParams& params,
                           double lambda_cap, double c_cap) {
  if (series.empty()) throw EmptySeries("growth bound fit needs a non-empty series");

  const double m = std::max(params.eps, params.beta);
  const double t0 = series.front().t;
  const double e0 = series.front().e0;

  GrowthFit fit;
  if (m <= 0.0) {
    // Degenerate horizon: the bound collapses to E0(t) <= E0(0).
    bool feasible = true;
    for (const auto& row : series)
      if (row.e0 > e0 * (1.0 + 1e-9) + 1e-12) feasible = false;
    fit.lambda = 0.0;
    fit.c = 0.0;
    fit.ok = feasible;
    return fit;
  }

  // Smallest feasible C for a given lambda; decreasing in lambda.
  auto required_c = [&](double lambda) {
    double c = 0.0;
    for (const auto& row : series) {
      const double tau = row.t - t0;
      if (tau <= 0.0) continue;
      const double need = (row.e0 * std::exp(-m * lambda * tau) - e0) / (m * tau);
      c = std::max(c, need);
    }
    return c;
  };

  if (required_c(0.0) <= c_cap) {
    fit.lambda = 0.0;
    fit.c = required_c(0.0);
    fit.ok = true;
    return fit;
  }

  double hi = 1.0;
  int doublings = 0;
  while (required_c(hi) > c_cap && doublings < 60) {
    hi *= 2.0;
    ++doublings;
  }
  if (required_c(hi) > c_cap) {
    fit.lambda = hi;
    fit.c = required_c(hi);
    fit.ok = false;
    return fit;
  }
  double lo = 0.0;
  for (int i = 0; i < 200 && (hi - lo) > 1e-12 * (1.0 + hi); ++i) {
    const double mid = 0.5 * (lo + hi);
    if (required_c(mid) <= c_cap)
      hi = mid;
    else
      lo = mid;
  }
  fit.lambda = hi;
  fit.c = required_c(hi);
  fit.ok = fit.lambda <= lambda_cap;
  return fit;
}

double fit_loglog_slope(const std::vector<double>& xs, const std::vector<double>& rs) {
  if (xs.size() != rs.size() || xs.size() < 3)
    throw DegenerateLadder("slope fit needs at least 3 ladder points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const int n = static_cast<int>(xs.size());
  for (int i = 0; i < n; ++i) {
    if (!(xs[i] > 0.0) || !(rs[i] > 0.0) || !std::isfinite(rs[i]))
      throw DegenerateLadder("slope fit needs positive finite residuals");
    const double lx = std::log(xs[i]);
    const double ly = std::log(rs[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double denom = n * sxx - sx * sx;
  return (n * sxy - sx * sy) / denom;
}

namespace {

double max_abs_diff(const Field& a, const Field& b) {
  double m = 0.0;
  for (size_t j = 0; j < a.size(); ++j) m = std::max(m, std::abs(a[j] - b[j]));
  return m;
}

// Fixed smooth profiles for the operator-level studies. Amplitudes keep the
// state admissible over the whole default ladder (eps = beta up to 0.2).
Field study_zeta(const PeriodicGrid& grid) {
  Field z(grid.n);
  const double w = 2.0 * pi / grid.length;
  for (int j = 0; j < grid.n; ++j) {
    const double x = grid.node(j);
    z[j] = 0.5 * std::sin(w * x) + 0.2 * std::cos(2.0 * w * x);
  }
  return z;
}

Field study_velocity(const PeriodicGrid& grid) {
  Field v(grid.n);
  const double w = 2.0 * pi / grid.length;
  for (int j = 0; j < grid.n; ++j) {
    const double x = grid.node(j);
    v[j] = 0.5 * std::cos(w * x) - 0.15 * std::sin(2.0 * w * x);
  }
  return v;
}

Bathymetry study_bottom(const PeriodicGrid& grid) {
  Bathymetry bathy = Bathymetry::flat(grid.n);
  const double w = 2.0 * pi / grid.length;
  for (int j = 0; j < grid.n; ++j) {
    const double x = grid.node(j);
    bathy.b[j] = 0.25 * std::sin(w * x) + 0.1 * std::cos(3.0 * w * x);
    bathy.db[j] = 0.25 * w * std::cos(w * x) - 0.3 * w * std::sin(3.0 * w * x);
    bathy.d2b[j] = -0.25 * w * w * std::sin(w * x) - 0.9 * w * w * std::cos(3.0 * w * x);
  }
  return bathy;
}

OrderStudyResult expansion_study(OrderTarget target, const OrderStudyConfig& config) {
  const PeriodicGrid grid(config.expansion_length, config.expansion_n);
  const Field zeta = study_zeta(grid);
  const Field v = study_velocity(grid);
  const Bathymetry bathy = study_bottom(grid);
  const ModelCoefficients coeffs = compute_coefficients(config.params);
  const double gd = config.params.gamma + config.params.delta;

  const Field dv = derivative(grid, v, 1);
  const Field ddv = derivative(grid, dv, 1);
  const Field ddz = derivative(grid, derivative(grid, zeta, 1), 1);
  const Field ddb = derivative(grid, derivative(grid, bathy.b, 1), 1);

  Field zdv(grid.n), bdv(grid.n);
  for (int j = 0; j < grid.n; ++j) {
    zdv[j] = zeta[j] * dv[j];
    bdv[j] = bathy.b[j] * dv[j];
  }
  const Field d_zdv = derivative(grid, zdv, 1);
  const Field d_bdv = derivative(grid, bdv, 1);

  OrderStudyResult result;
  for (double t : config.expansion_ladder) {
    RegimeParams p = config.params;
    p.eps = t;
    p.beta = t;
    const State state{0.0, zeta, v};
    const DerivedFields df = derive(grid, state, bathy, p, coeffs);

    Field reference(grid.n);
    if (target == OrderTarget::qbar_expansion) {
      const Field lhs = qbar_apply(grid, df, bathy, v, p);
      for (int j = 0; j < grid.n; ++j) {
        const double interface_block = (coeffs.theta - coeffs.alpha) * v[j] * ddz[j] +
                                       (coeffs.alpha + 2.0 * coeffs.theta) * d_zdv[j] -
                                       coeffs.theta * zeta[j] * ddv[j];
        const double bottom_block = (0.5 * coeffs.alpha1 + coeffs.theta1) * v[j] * ddb[j] +
                                    (coeffs.alpha1 + 2.0 * coeffs.theta1) * d_bdv[j] -
                                    coeffs.theta1 * bathy.b[j] * ddv[j];
        reference[j] = -coeffs.lambda * ddv[j] - t * gd / 3.0 * interface_block +
                       t * gd / 3.0 * bottom_block;
      }
      result.residuals.push_back(max_abs_diff(lhs, reference));
    } else {
      const Field lhs = rbar_apply(grid, df, bathy, v, p);
      for (int j = 0; j < grid.n; ++j)
        reference[j] = coeffs.alpha * (0.5 * dv[j] * dv[j] + v[j] * ddv[j] / 3.0);
      result.residuals.push_back(max_abs_diff(lhs, reference));
    }
    result.ladder.push_back(t);
  }
  result.slope = fit_loglog_slope(result.ladder, result.residuals);
  return result;
}

OrderStudyResult form_equivalence_study(const OrderStudyConfig& config) {
  const ModelCoefficients coeffs = compute_coefficients(config.params);
  OrderStudyResult result;
  for (int n : config.grid_ladder) {
    const PeriodicGrid grid(config.expansion_length, n);
    const State state{0.0, study_zeta(grid), study_velocity(grid)};
    const Bathymetry bathy = study_bottom(grid);
    const Tendency prim = rhs_primitive(grid, state, bathy, config.params, coeffs);
    const Tendency quasi = rhs_quasilinear(grid, state, bathy, config.params, coeffs);
    result.ladder.push_back(grid.dx);
    result.residuals.push_back(
        std::max(max_abs_diff(prim.dzeta, quasi.dzeta), max_abs_diff(prim.dv, quasi.dv)));
  }
  result.slope = fit_loglog_slope(result.ladder, result.residuals);
  return result;
}

OrderStudyResult spatial_study(const OrderStudyConfig& config) {
  if (config.grid_ladder.size() < 4)
    throw DegenerateLadder("spatial study needs at least 4 grids (finest is the reference)");
  std::vector<int> ns = config.grid_ladder;
  std::sort(ns.begin(), ns.end());
  const int n_ref = ns.back();
  const ModelCoefficients coeffs = compute_coefficients(config.params);

  auto run = [&](int n) {
    const PeriodicGrid grid(config.scenario_length, n);
    State state{0.0, sample_profile(grid, config.init_zeta), sample_profile(grid, config.init_v)};
    const Bathymetry bathy = make_bathymetry(grid, config.bathymetry);
    return advance(grid, std::move(state), bathy, config.params, coeffs, config.t_end,
                   config.cfl);
  };

  const State ref = run(n_ref);
  OrderStudyResult result;
  for (size_t i = 0; i + 1 < ns.size(); ++i) {
    const int n = ns[i];
    if (n_ref % n != 0)
      throw DegenerateLadder("spatial ladder grids must divide the reference grid");
    const int stride = n_ref / n;
    const State coarse = run(n);
    double err = 0.0;
    for (int j = 0; j < n; ++j) {
      err = std::max(err, std::abs(coarse.zeta[j] - ref.zeta[j * stride]));
      err = std::max(err, std::abs(coarse.v[j] - ref.v[j * stride]));
    }
    result.ladder.push_back(config.scenario_length / n);
    result.residuals.push_back(err);
  }
  result.slope = fit_loglog_slope(result.ladder, result.residuals);
  return result;
}

OrderStudyResult temporal_study(const OrderStudyConfig& config) {
  const PeriodicGrid grid(config.scenario_length, config.temporal_n);
  const State initial{0.0, sample_profile(grid, config.init_zeta),
                      sample_profile(grid, config.init_v)};
  const Bathymetry bathy = make_bathymetry(grid, config.bathymetry);
  const ModelCoefficients coeffs = compute_coefficients(config.params);

  const long base_steps = std::max(1L, std::lround(std::ceil(config.t_end / (config.cfl * grid.dx))));
  const double base_dt = config.t_end / static_cast<double>(base_steps);

  std::vector<State> finals;
  for (int k = 0; k <= config.temporal_points; ++k) {
    const long steps = base_steps << k;
    finals.push_back(
        advance_fixed(grid, initial, bathy, config.params, coeffs, config.t_end / steps, steps));
  }

  OrderStudyResult result;
  for (int k = 0; k < config.temporal_points; ++k) {
    result.ladder.push_back(base_dt / (1 << k));
    result.residuals.push_back(std::max(max_abs_diff(finals[k].zeta, finals[k + 1].zeta),
                                        max_abs_diff(finals[k].v, finals[k + 1].v)));
  }
  result.slope = fit_loglog_slope(result.ladder, result.residuals);
  return result;
}

}  // namespace

OrderStudyResult order_study(OrderTarget target, const OrderStudyConfig& config) {
  switch (target) {
    case OrderTarget::qbar_expansion:
    case OrderTarget::rbar_expansion:
      return expansion_study(target, config);
    case OrderTarget::form_equivalence:
      return form_equivalence_study(config);
    case OrderTarget::spatial:
      return spatial_study(config);
    case OrderTarget::temporal:
      return temporal_study(config);
  }
  throw std::invalid_argument("unknown order study target");
}

}  // namespace bgn
