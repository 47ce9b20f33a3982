#include "bgn/regime.hpp"

#include <cmath>
#include <string>

#include "bgn/errors.hpp"

namespace bgn {

ModelCoefficients compute_coefficients(const RegimeParams& p) {
  const double g = p.gamma;
  const double d = p.delta;
  const double gd = g + d;

  ModelCoefficients c;
  c.lambda = (1.0 + g * d) / (3.0 * d * gd);
  c.nu = c.lambda - p.bo_inv;
  if (!(c.nu >= p.nu0))
    throw NonPositiveNu("nu = lambda - 1/bo = " + std::to_string(c.nu) +
                        " is below nu0 = " + std::to_string(p.nu0));

  c.alpha = (1.0 - g) / (gd * gd);
  c.theta = (1.0 + g * d) * (d * d - g) / (d * gd * gd * gd);
  c.alpha1 = 1.0 / (gd * gd);
  c.theta1 = d * (1.0 + g * d) / (gd * gd * gd);

  c.kappa1 = gd * (2.0 * c.theta - c.alpha) / (3.0 * c.nu);
  c.kappa2 = gd * c.theta / c.nu;
  c.omega1 = -c.theta1 * gd / (3.0 * c.nu);
  c.omega2 = -gd * (c.alpha1 + 2.0 * c.theta1) / (3.0 * c.nu);
  c.varsigma = ((2.0 * c.alpha - c.theta) / 3.0 - p.bo_inv * (d * d - g) / (gd * gd)) / c.nu;
  c.kappa = 2.0 * c.alpha / 3.0;
  c.omega = gd * gd * (0.5 * c.alpha1 + c.theta1) / 3.0;
  return c;
}

RegimeReport validate_regime(const RegimeParams& p, const RegimeBounds& b) {
  RegimeReport report;
  auto& v = report.violations;

  if (!(p.mu > 0.0 && p.mu <= b.mu_max)) v.push_back("0 < mu <= mu_max");
  if (!(p.eps >= 0.0 && p.eps <= 1.0)) v.push_back("0 <= eps <= 1");
  if (!(p.delta > b.delta_min && p.delta < b.delta_max)) v.push_back("delta_min < delta < delta_max");
  if (!(p.gamma >= 0.0)) v.push_back("gamma >= 0");
  if (!(p.gamma < 1.0)) v.push_back("gamma < 1");
  if (!(p.beta >= 0.0 && p.beta <= b.beta_max)) v.push_back("0 <= beta <= beta_max");
  if (!(p.bo_inv >= 0.0 && p.bo_inv <= b.bo_inv_max)) v.push_back("0 <= 1/bo <= 1/bo_min");
  report.in_sw = v.empty();

  const double root_mu = std::sqrt(std::max(p.mu, 0.0));
  bool ch = report.in_sw;
  if (!(p.eps <= p.M * root_mu)) {
    v.push_back("eps <= M*sqrt(mu)");
    ch = false;
  }
  if (!(p.beta <= p.M * root_mu)) {
    v.push_back("beta <= M*sqrt(mu)");
    ch = false;
  }
  const double gd = p.gamma + p.delta;
  const double nu = (p.delta > 0.0 && gd > 0.0)
                        ? (1.0 + p.gamma * p.delta) / (3.0 * p.delta * gd) - p.bo_inv
                        : -1.0;
  if (!(nu >= p.nu0)) {
    v.push_back("nu >= nu0");
    ch = false;
  }
  report.in_ch = ch;
  return report;
}

}  // namespace bgn
