#pragma once

#include <string>
#include <vector>

namespace bgn {

// Dimensionless parameters of the two-layer model.
//   mu     shallowness (upper depth / wavelength)^2
//   eps    interface amplitude / upper depth
//   delta  upper depth / lower depth
//   gamma  upper density / lower density
//   beta   bottom amplitude / upper depth
//   bo_inv inverse Bond number; 0 encodes no surface tension (bo = infinity)
//   M      medium-amplitude slack: eps, beta <= M*sqrt(mu)
//   nu0    lower bound required of nu = lambda - bo_inv
struct RegimeParams {
  double mu = 0.04;
  double eps = 0.2;
  double delta = 1.0;
  double gamma = 0.0;
  double beta = 0.0;
  double bo_inv = 0.0;
  double M = 1.0;
  double nu0 = 1e-3;
};

// Shallow-water admissibility box. The model treats these as given
// constants without fixing values, so they are configurable.
struct RegimeBounds {
  double mu_max = 1.0;
  double delta_min = 0.1;
  double delta_max = 10.0;
  double beta_max = 1.0;
  double bo_inv_max = 10.0;
};

// Closed-form constants of the model, all functions of (gamma, delta, bo_inv).
struct ModelCoefficients {
  double lambda = 0;
  double alpha = 0;
  double theta = 0;
  double alpha1 = 0;
  double theta1 = 0;
  double nu = 0;       // lambda - bo_inv
  double kappa1 = 0;   // q1 = 1 + kappa1*eps*zeta + omega1*beta*b
  double kappa2 = 0;
  double omega1 = 0;
  double omega2 = 0;
  double varsigma = 0;
  double kappa = 0;    // 2*alpha/3, coefficient of the dispersive (dx v)^2 flux
  double omega = 0;    // coefficient of the mu*beta (dx zeta)(dxx b) forcing
};

struct RegimeReport {
  bool in_sw = false;
  bool in_ch = false;
  std::vector<std::string> violations;  // every violated clause, by name
};

// Evaluates every model constant. Throws NonPositiveNu when
// lambda - bo_inv < nu0. Pure: identical inputs give identical bits.
ModelCoefficients compute_coefficients(const RegimeParams& params);

// Reports shallow-water and medium-amplitude membership with the list of
// violated clauses; in_ch implies in_sw.
RegimeReport validate_regime(const RegimeParams& params, const RegimeBounds& bounds = {});

}  // namespace bgn
