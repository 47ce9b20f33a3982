#include "bgn/elliptic.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "bgn/errors.hpp"

namespace bgn {

namespace {

void check_size(const TOperator& op, const Field& f) {
  if (f.size() != op.q1.size()) throw std::invalid_argument("field size does not match operator");
}

}  // namespace

TOperator build_t_operator(const PeriodicGrid& grid, const DerivedFields& df,
                           const RegimeParams& params, const ModelCoefficients& coeffs) {
  TOperator op;
  op.q1 = df.q1;
  op.q2 = df.q2;
  op.mu_nu = params.mu * coeffs.nu;
  op.dx = grid.dx;
  const int n = grid.n;
  op.face_q2.resize(n);
  for (int j = 0; j < n; ++j) op.face_q2[j] = 0.5 * (df.q2[j] + df.q2[(j + 1) % n]);
  return op;
}

Field t_apply(const TOperator& op, const Field& v) {
  check_size(op, v);
  const int n = static_cast<int>(v.size());
  const double w = op.mu_nu / (op.dx * op.dx);
  Field out(n);
  for (int j = 0; j < n; ++j) {
    const int jp = (j + 1) % n;
    const int jm = (j + n - 1) % n;
    out[j] = op.q1[j] * v[j] -
             w * (op.face_q2[j] * (v[jp] - v[j]) - op.face_q2[jm] * (v[j] - v[jm]));
  }
  return out;
}

Field t_solve(const TOperator& op, const Field& rhs) {
  check_size(op, rhs);
  const int n = static_cast<int>(rhs.size());
  const double w = op.mu_nu / (op.dx * op.dx);

  // Cyclic tridiagonal system: diag[j] on the diagonal, off[j] couples
  // j and j+1, off[n-1] being the periodic corner.
  Field diag(n), off(n);
  for (int j = 0; j < n; ++j) {
    const int jm = (j + n - 1) % n;
    diag[j] = op.q1[j] + w * (op.face_q2[j] + op.face_q2[jm]);
    off[j] = -w * op.face_q2[j];
  }

  if (!(diag[0] > 0.0)) throw SolveFailure("non-positive diagonal in elliptic solve");

  // Rank-one splitting A = A' + gsm * u u^T with u = (1, 0, ..., corner/gsm).
  // gsm = -diag[0] makes A' = A + diag[0] u u^T, so A' inherits positive
  // definiteness from A and the Thomas pivots below stay positive exactly
  // when the ellipticity condition holds.
  const double corner = off[n - 1];
  const double gsm = -diag[0];
  Field d2(diag);
  d2[0] -= gsm;
  d2[n - 1] -= corner * corner / gsm;

  // One LDL^T-style elimination reused for both right-hand sides.
  Field cprime(n - 1);
  Field pivot(n);
  pivot[0] = d2[0];
  if (!(pivot[0] > 0.0)) throw SolveFailure("non-positive pivot in elliptic solve");
  cprime[0] = off[0] / pivot[0];
  for (int j = 1; j < n; ++j) {
    pivot[j] = d2[j] - off[j - 1] * cprime[j - 1];
    if (!(pivot[j] > 0.0))
      throw SolveFailure("non-positive pivot in elliptic solve at row " + std::to_string(j));
    if (j < n - 1) cprime[j] = off[j] / pivot[j];
  }

  auto tri_solve = [&](const Field& b) {
    Field x(n);
    x[0] = b[0] / pivot[0];
    for (int j = 1; j < n; ++j) x[j] = (b[j] - off[j - 1] * x[j - 1]) / pivot[j];
    for (int j = n - 2; j >= 0; --j) x[j] -= cprime[j] * x[j + 1];
    return x;
  };

  Field y = tri_solve(rhs);
  Field u(n, 0.0);
  u[0] = gsm;
  u[n - 1] = corner;
  Field z = tri_solve(u);

  const double vy = y[0] + (corner / gsm) * y[n - 1];
  const double vz = 1.0 + z[0] + (corner / gsm) * z[n - 1];
  if (!(vz > 0.0) || !std::isfinite(vz))
    throw SolveFailure("degenerate periodic correction in elliptic solve");
  const double factor = vy / vz;
  for (int j = 0; j < n; ++j) y[j] -= factor * z[j];
  return y;
}

Field tcal_apply(const PeriodicGrid& grid, const Field& h, const Bathymetry& bottom,
                 const Field& v) {
  const int n = grid.n;
  const Field dv = derivative(grid, v, 1);

  Field h3dv(n), h2bv(n);
  for (int j = 0; j < n; ++j) {
    const double h2 = h[j] * h[j];
    h3dv[j] = h2 * h[j] * dv[j];
    h2bv[j] = h2 * bottom.db[j] * v[j];
  }
  const Field d_h3dv = derivative(grid, h3dv, 1);
  const Field d_h2bv = derivative(grid, h2bv, 1);

  Field out(n);
  for (int j = 0; j < n; ++j) {
    const double h2 = h[j] * h[j];
    out[j] = -d_h3dv[j] / (3.0 * h[j]) +
             (d_h2bv[j] - h2 * bottom.db[j] * dv[j]) / (2.0 * h[j]) +
             bottom.db[j] * bottom.db[j] * v[j];
  }
  return out;
}

namespace {

// Inner arguments shared by the quadratic operators:
//   w1 = h1 v / (h1 + gamma h2),  w2 = -h2 v / (h1 + gamma h2).
void layer_arguments(const DerivedFields& df, const Field& v, double gamma, Field& w1, Field& w2) {
  const int n = static_cast<int>(v.size());
  w1.resize(n);
  w2.resize(n);
  for (int j = 0; j < n; ++j) {
    const double den = df.h1[j] + gamma * df.h2[j];
    w1[j] = df.h1[j] * v[j] / den;
    w2[j] = -df.h2[j] * v[j] / den;
  }
}

Bathymetry scaled_bottom(const Bathymetry& bathy, double beta) {
  Bathymetry out = bathy;
  for (double& x : out.b) x *= beta;
  for (double& x : out.db) x *= beta;
  for (double& x : out.d2b) x *= beta;
  return out;
}

}  // namespace

Field qbar_apply(const PeriodicGrid& grid, const DerivedFields& df, const Bathymetry& bathy,
                 const Field& v, const RegimeParams& params) {
  Field w1, w2;
  layer_arguments(df, v, params.gamma, w1, w2);
  const Bathymetry scaled = scaled_bottom(bathy, params.beta);
  const Bathymetry zero = Bathymetry::flat(grid.n);

  Field upper = tcal_apply(grid, df.h2, scaled, w1);
  const Field lower = tcal_apply(grid, df.h1, zero, w2);
  for (int j = 0; j < grid.n; ++j) upper[j] -= params.gamma * lower[j];
  return upper;
}

Field rbar_apply(const PeriodicGrid& grid, const DerivedFields& df, const Bathymetry& bathy,
                 const Field& v, const RegimeParams& params) {
  const int n = grid.n;
  Field w1, w2;
  layer_arguments(df, v, params.gamma, w1, w2);
  const Bathymetry scaled = scaled_bottom(bathy, params.beta);
  const Bathymetry zero = Bathymetry::flat(n);

  const Field dw1 = derivative(grid, w1, 1);
  const Field dw2 = derivative(grid, w2, 1);
  const Field t_w1 = tcal_apply(grid, df.h2, scaled, w1);
  const Field t_w2 = tcal_apply(grid, df.h1, zero, w2);

  Field out(n);
  for (int j = 0; j < n; ++j) {
    const double a = -df.h2[j] * dw1[j] + scaled.db[j] * w1[j];
    const double b = df.h1[j] * dw2[j];
    out[j] = 0.5 * a * a - 0.5 * params.gamma * b * b - w1[j] * t_w1[j] +
             params.gamma * w2[j] * t_w2[j];
  }
  return out;
}

Field qfrak_apply(const PeriodicGrid& grid, const DerivedFields& df, const Field& v,
                  const Field& f, const RegimeParams& params, const ModelCoefficients& coeffs) {
  const int n = grid.n;
  const Field dv = derivative(grid, v, 1);
  Field fdv(n);
  for (int j = 0; j < n; ++j) fdv[j] = f[j] * dv[j];
  const Field d_fdv = derivative(grid, fdv, 1);

  Field out(n);
  const double mu_kappa = params.mu * coeffs.kappa;
  for (int j = 0; j < n; ++j)
    out[j] = 2.0 * df.q1[j] * df.q3[j] * v[j] * f[j] + mu_kappa * d_fdv[j];
  return out;
}

}  // namespace bgn
