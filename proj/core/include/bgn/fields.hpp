#pragma once

#include "bgn/grid.hpp"
#include "bgn/regime.hpp"

namespace bgn {

// Prescribed bottom deformation with its first two derivatives. The
// derivatives are sampled from the analytic profile, never differenced.
struct Bathymetry {
  Field b;
  Field db;
  Field d2b;

  static Bathymetry flat(int n) { return {Field(n, 0.0), Field(n, 0.0), Field(n, 0.0)}; }
};

// Interface deformation zeta and shear velocity v at time t.
struct State {
  double t = 0.0;
  Field zeta;
  Field v;
};

// Analytic profile for bathymetry and initial data.
//   flat      identically zero ("rest" for initial data)
//   gaussian  amplitude * exp(-(x-center)^2 / (2 width^2)), periodic image
//   sinusoid  amplitude * sin(2 pi k x / L)
enum class ProfileKind { flat, gaussian, sinusoid };

struct Profile {
  ProfileKind kind = ProfileKind::flat;
  double amplitude = 0.0;
  double width = 1.0;
  double center = 0.0;
  int k = 1;
};

Field sample_profile(const PeriodicGrid& grid, const Profile& profile);
Bathymetry make_bathymetry(const PeriodicGrid& grid, const Profile& profile);

// Every pointwise quantity of the model evaluated from a state:
//   h1 = 1 - eps*zeta                  upper layer depth
//   h2 = 1/delta + eps*zeta - beta*b   lower layer depth
//   f  = h1 h2 / (h1 + gamma h2)       interface flux coefficient
//   fp = (h1^2 - gamma h2^2)/(h1 + gamma h2)^2
//   g  = (h1/(h1 + gamma h2))^2
//   qi = 1 + kappa_i eps zeta + omega_i beta b
//   q3 = (fp - varsigma)/2, dq3 = its closed-form x-derivative
//   Q0 = (gamma+delta) q1 - mu beta omega d2b
//   Q1bare = -gamma q1 (h1+h2)^2 (eps v)^2 / (h1 + gamma h2)^3
struct DerivedFields {
  Field h1, h2;
  Field f, fp, g;
  Field q1, q2, q3, dq3;
  Field Q0, Q1bare;
};

// Throws DepthViolation if min(h1) or min(h2) <= 0 and EllipticityViolation
// if min(q1) or min(q2) <= 0. Recomputed per evaluation, never cached.
DerivedFields derive(const PeriodicGrid& grid, const State& state, const Bathymetry& bathy,
                     const RegimeParams& params, const ModelCoefficients& coeffs);

}  // namespace bgn
