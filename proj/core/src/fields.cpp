#include "bgn/fields.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "bgn/errors.hpp"

namespace bgn {

namespace {

double wrapped_offset(double x, double center, double length) {
  return std::remainder(x - center, length);
}

void check_size(const PeriodicGrid& grid, const Field& f, const char* what) {
  if (static_cast<int>(f.size()) != grid.n)
    throw std::invalid_argument(std::string(what) + " size does not match grid");
}

}  // namespace

Field sample_profile(const PeriodicGrid& grid, const Profile& p) {
  Field out(grid.n, 0.0);
  switch (p.kind) {
    case ProfileKind::flat:
      break;
    case ProfileKind::gaussian:
      for (int j = 0; j < grid.n; ++j) {
        const double y = wrapped_offset(grid.node(j), p.center, grid.length);
        out[j] = p.amplitude * std::exp(-y * y / (2.0 * p.width * p.width));
      }
      break;
    case ProfileKind::sinusoid: {
      const double k = 2.0 * pi * p.k / grid.length;
      for (int j = 0; j < grid.n; ++j) out[j] = p.amplitude * std::sin(k * grid.node(j));
      break;
    }
  }
  return out;
}

Bathymetry make_bathymetry(const PeriodicGrid& grid, const Profile& p) {
  Bathymetry bathy = Bathymetry::flat(grid.n);
  switch (p.kind) {
    case ProfileKind::flat:
      break;
    case ProfileKind::gaussian: {
      if (!(p.width >= 4.0 * grid.dx))
        throw std::invalid_argument("gaussian bathymetry width must be at least 4*dx");
      const double w2 = p.width * p.width;
      for (int j = 0; j < grid.n; ++j) {
        const double y = wrapped_offset(grid.node(j), p.center, grid.length);
        const double b = p.amplitude * std::exp(-y * y / (2.0 * w2));
        bathy.b[j] = b;
        bathy.db[j] = -(y / w2) * b;
        bathy.d2b[j] = (y * y / (w2 * w2) - 1.0 / w2) * b;
      }
      break;
    }
    case ProfileKind::sinusoid: {
      const double k = 2.0 * pi * p.k / grid.length;
      for (int j = 0; j < grid.n; ++j) {
        const double x = grid.node(j);
        bathy.b[j] = p.amplitude * std::sin(k * x);
        bathy.db[j] = p.amplitude * k * std::cos(k * x);
        bathy.d2b[j] = -p.amplitude * k * k * std::sin(k * x);
      }
      break;
    }
  }
  return bathy;
}

DerivedFields derive(const PeriodicGrid& grid, const State& state, const Bathymetry& bathy,
                     const RegimeParams& params, const ModelCoefficients& coeffs) {
  check_size(grid, state.zeta, "zeta");
  check_size(grid, state.v, "v");
  check_size(grid, bathy.b, "bathymetry");

  const int n = grid.n;
  const double eps = params.eps;
  const double beta = params.beta;
  const double gamma = params.gamma;
  const double inv_delta = 1.0 / params.delta;
  const double gd = params.gamma + params.delta;

  for (int j = 0; j < n; ++j) {
    if (!std::isfinite(state.zeta[j]) || !std::isfinite(state.v[j]))
      throw NonFiniteState("state is not finite at node " + std::to_string(j));
  }

  DerivedFields df;
  df.h1.resize(n);
  df.h2.resize(n);
  for (int j = 0; j < n; ++j) {
    df.h1[j] = 1.0 - eps * state.zeta[j];
    df.h2[j] = inv_delta + eps * state.zeta[j] - beta * bathy.b[j];
  }
  for (int j = 0; j < n; ++j) {
    if (!(df.h1[j] > 0.0))
      throw DepthViolation("upper layer depth vanished at node " + std::to_string(j));
    if (!(df.h2[j] > 0.0))
      throw DepthViolation("lower layer depth vanished at node " + std::to_string(j));
  }

  df.q1.resize(n);
  df.q2.resize(n);
  for (int j = 0; j < n; ++j) {
    df.q1[j] = 1.0 + coeffs.kappa1 * eps * state.zeta[j] + coeffs.omega1 * beta * bathy.b[j];
    df.q2[j] = 1.0 + coeffs.kappa2 * eps * state.zeta[j] + coeffs.omega2 * beta * bathy.b[j];
  }
  for (int j = 0; j < n; ++j) {
    if (!(df.q1[j] > 0.0))
      throw EllipticityViolation("q1 lost positivity at node " + std::to_string(j));
    if (!(df.q2[j] > 0.0))
      throw EllipticityViolation("q2 lost positivity at node " + std::to_string(j));
  }

  df.f.resize(n);
  df.fp.resize(n);
  df.g.resize(n);
  df.q3.resize(n);
  for (int j = 0; j < n; ++j) {
    const double h1 = df.h1[j];
    const double h2 = df.h2[j];
    const double den = h1 + gamma * h2;
    df.f[j] = h1 * h2 / den;
    df.fp[j] = (h1 * h1 - gamma * h2 * h2) / (den * den);
    df.g[j] = (h1 / den) * (h1 / den);
    df.q3[j] = 0.5 * (df.fp[j] - coeffs.varsigma);
  }

  const Field dzeta = derivative(grid, state.zeta, 1);
  df.dq3.resize(n);
  df.Q0.resize(n);
  df.Q1bare.resize(n);
  for (int j = 0; j < n; ++j) {
    const double h1 = df.h1[j];
    const double h2 = df.h2[j];
    const double den = h1 + gamma * h2;
    const double den3 = den * den * den;
    const double hsum = h1 + h2;
    df.dq3[j] =
        (-gamma * eps * dzeta[j] * hsum * hsum + gamma * beta * bathy.db[j] * h1 * hsum) / den3;
    df.Q0[j] = gd * df.q1[j] - params.mu * beta * coeffs.omega * bathy.d2b[j];
    const double ev = eps * state.v[j];
    df.Q1bare[j] = -gamma * df.q1[j] * hsum * hsum * ev * ev / den3;
  }
  return df;
}

}  // namespace bgn
