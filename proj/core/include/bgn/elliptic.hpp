#pragma once

#include "bgn/fields.hpp"
#include "bgn/grid.hpp"
#include "bgn/regime.hpp"

namespace bgn {

// Discrete form of the elliptic operator
//   V  ->  q1 V - mu nu d/dx ( q2 dV/dx )
// assembled with face-averaged q2 so the matrix is exactly symmetric:
//   (TV)_j = q1_j V_j - (mu nu / dx^2) [ fq_j (V_{j+1}-V_j) - fq_{j-1} (V_j-V_{j-1}) ]
// with fq_j = (q2_j + q2_{j+1})/2. Symmetry plus positivity of q1, q2 makes
// the matrix positive definite, so the direct solve below cannot silently
// return garbage.
struct TOperator {
  Field q1;
  Field q2;
  Field face_q2;
  double mu_nu = 0.0;
  double dx = 0.0;
};

TOperator build_t_operator(const PeriodicGrid& grid, const DerivedFields& df,
                           const RegimeParams& params, const ModelCoefficients& coeffs);

Field t_apply(const TOperator& op, const Field& v);

// Direct solve of t_apply(op, x) = rhs: periodic tridiagonal factorization
// (Thomas elimination with a rank-one correction for the corner entries).
// Throws SolveFailure on a non-positive pivot, which signals a violated
// ellipticity condition or a corrupted operator.
Field t_solve(const TOperator& op, const Field& rhs);

// The layer operator  T[h, b]V = -(1/3h) d(h^3 dV) + (1/2h)[d(h^2 b' V) - h^2 b' dV] + (b')^2 V,
// where `bottom` holds the already-scaled bottom function of the bracket.
Field tcal_apply(const PeriodicGrid& grid, const Field& h, const Bathymetry& bottom,
                 const Field& v);

// Q[h1,h2]v = T[h2, beta b](h1 v / (h1+gamma h2)) - gamma T[h1, 0](-h2 v / (h1+gamma h2)).
// The second call receives a genuinely zero bottom.
Field qbar_apply(const PeriodicGrid& grid, const DerivedFields& df, const Bathymetry& bathy,
                 const Field& v, const RegimeParams& params);

// The quadratic flux R[h1,h2]v (four-term form).
Field rbar_apply(const PeriodicGrid& grid, const DerivedFields& df, const Bathymetry& bathy,
                 const Field& v, const RegimeParams& params);

// Q[eps zeta, beta b, v]f = 2 q1 q3 v f + mu kappa d/dx(f dv/dx).
Field qfrak_apply(const PeriodicGrid& grid, const DerivedFields& df, const Field& v,
                  const Field& f, const RegimeParams& params, const ModelCoefficients& coeffs);

}  // namespace bgn
