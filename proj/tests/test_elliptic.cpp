#include <doctest.h>

#include <cmath>
#include <random>

#include "bgn/elliptic.hpp"
#include "bgn/errors.hpp"
#include "support/random_fields.hpp"

using namespace bgn;

namespace {

double max_abs_diff(const Field& a, const Field& b) {
  double m = 0.0;
  for (size_t j = 0; j < a.size(); ++j) m = std::max(m, std::abs(a[j] - b[j]));
  return m;
}

double max_abs(const Field& f) {
  double m = 0.0;
  for (double x : f) m = std::max(m, std::abs(x));
  return m;
}

// Rest-state operator with q1 = q2 = 1 everywhere.
TOperator flat_operator(const PeriodicGrid& grid, double mu_nu) {
  TOperator op;
  op.q1 = Field(grid.n, 1.0);
  op.q2 = Field(grid.n, 1.0);
  op.face_q2 = Field(grid.n, 1.0);
  op.mu_nu = mu_nu;
  op.dx = grid.dx;
  return op;
}

struct RandomCase {
  RegimeParams params;
  ModelCoefficients coeffs;
  DerivedFields df;
  Bathymetry bathy;
  State state;
};

RandomCase random_admissible(const PeriodicGrid& grid, std::mt19937& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  RandomCase rc;
  rc.params.mu = 0.02 + 0.4 * u(rng);
  rc.params.gamma = 0.9 * u(rng);
  rc.params.delta = 0.6 + 1.6 * u(rng);
  rc.params.eps = 0.15;
  rc.params.beta = 0.1;
  rc.coeffs = compute_coefficients(rc.params);
  rc.bathy = Bathymetry::flat(grid.n);
  rc.bathy.b = test::random_smooth_field(grid, rng, 4, 0.3);
  rc.bathy.db = derivative(grid, rc.bathy.b, 1);
  rc.bathy.d2b = derivative(grid, rc.bathy.b, 2);
  rc.state.zeta = test::random_smooth_field(grid, rng, 4, 0.4);
  rc.state.v = test::random_smooth_field(grid, rng, 4, 1.0);
  rc.df = derive(grid, rc.state, rc.bathy, rc.params, rc.coeffs);
  return rc;
}

}  // namespace

TEST_SUITE("elliptic") {

TEST_CASE("flat operator acts as 1 + mu nu k^2 on a sine") {
  const PeriodicGrid grid(2.0 * pi, 128);
  const double mu_nu = 0.04 / 3.0;
  const TOperator op = flat_operator(grid, mu_nu);
  Field v(grid.n), want(grid.n);
  for (int j = 0; j < grid.n; ++j) {
    v[j] = std::sin(grid.node(j));
    want[j] = (1.0 + mu_nu) * v[j];
  }
  CHECK(max_abs_diff(t_apply(op, v), want) <= 1e-5);
}

TEST_CASE("constant input reduces to q1 scaling, exactly") {
  const PeriodicGrid grid(2.0 * pi, 64);
  const TOperator op = flat_operator(grid, 0.7);
  const Field v(grid.n, 2.5);
  const Field out = t_apply(op, v);
  for (int j = 0; j < grid.n; ++j) CHECK(out[j] == 2.5);
}

TEST_CASE("operator is symmetric to round-off on random admissible states") {
  const PeriodicGrid grid(2.0 * pi, 128);
  std::mt19937 rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    const RandomCase rc = random_admissible(grid, rng);
    const TOperator op = build_t_operator(grid, rc.df, rc.params, rc.coeffs);
    const Field u = test::random_smooth_field(grid, rng, 6, 1.0);
    const Field w = test::random_smooth_field(grid, rng, 6, 1.0);
    const double s1 = inner(grid, t_apply(op, u), w);
    const double s2 = inner(grid, u, t_apply(op, w));
    CHECK(std::abs(s1 - s2) <= 1e-13 * (1.0 + std::abs(s1)));
  }
}

TEST_CASE("t_solve inverts t_apply to 1e-10 relative") {
  const PeriodicGrid grid(2.0 * pi, 256);
  std::mt19937 rng(37);
  for (int trial = 0; trial < 10; ++trial) {
    const RandomCase rc = random_admissible(grid, rng);
    const TOperator op = build_t_operator(grid, rc.df, rc.params, rc.coeffs);
    const Field v = test::random_smooth_field(grid, rng, 6, 1.0);
    const Field back = t_solve(op, t_apply(op, v));
    CHECK(max_abs_diff(back, v) <= 1e-10 * std::max(1.0, max_abs(v)));
  }
}

TEST_CASE("t_solve leaves a relative residual below 1e-11") {
  const PeriodicGrid grid(2.0 * pi, 256);
  std::mt19937 rng(61);
  for (int trial = 0; trial < 10; ++trial) {
    const RandomCase rc = random_admissible(grid, rng);
    const TOperator op = build_t_operator(grid, rc.df, rc.params, rc.coeffs);
    const Field rhs = test::random_smooth_field(grid, rng, 8, 1.0);
    const Field x = t_solve(op, rhs);
    const Field residual = t_apply(op, x);
    double err = 0.0;
    for (int j = 0; j < grid.n; ++j) err = std::max(err, std::abs(residual[j] - rhs[j]));
    CHECK(err <= 1e-11 * std::max(1.0, max_abs(rhs)));
  }
}

TEST_CASE("flat solve divides a sine by its symbol") {
  const PeriodicGrid grid(2.0 * pi, 128);
  const double mu_nu = 0.04 / 3.0;
  const TOperator op = flat_operator(grid, mu_nu);
  Field rhs(grid.n), want(grid.n);
  for (int j = 0; j < grid.n; ++j) {
    rhs[j] = std::sin(grid.node(j));
    want[j] = rhs[j] / (1.0 + mu_nu);
  }
  CHECK(max_abs_diff(t_solve(op, rhs), want) <= 1e-5);
}

TEST_CASE("constant right-hand side with flat fields returns the constant") {
  const PeriodicGrid grid(2.0 * pi, 64);
  const TOperator op = flat_operator(grid, 0.0133);
  const Field rhs(grid.n, -1.75);
  const Field v = t_solve(op, rhs);
  for (int j = 0; j < grid.n; ++j) CHECK(std::abs(v[j] + 1.75) <= 1e-13);
}

TEST_CASE("solver refuses an indefinite operator") {
  const PeriodicGrid grid(2.0 * pi, 64);
  TOperator op = flat_operator(grid, 0.0133);
  op.q1[0] = -5.0;  // breaks positive definiteness at the first pivot
  Field rhs(grid.n, 1.0);
  CHECK_THROWS_AS(t_solve(op, rhs), SolveFailure);
}

TEST_CASE("coercivity bound holds on random cases") {
  const PeriodicGrid grid(2.0 * pi, 128);
  std::mt19937 rng(41);
  for (int trial = 0; trial < 100; ++trial) {
    const RandomCase rc = random_admissible(grid, rng);
    const TOperator op = build_t_operator(grid, rc.df, rc.params, rc.coeffs);
    const Field u = test::random_smooth_field(grid, rng, 6, 1.0);

    const double quad = inner(grid, t_apply(op, u), u);
    double min_q1 = rc.df.q1[0], min_q2 = rc.df.q2[0];
    for (int j = 0; j < grid.n; ++j) {
      min_q1 = std::min(min_q1, rc.df.q1[j]);
      min_q2 = std::min(min_q2, rc.df.q2[j]);
    }
    Field dplus(grid.n);
    for (int j = 0; j < grid.n; ++j)
      dplus[j] = (u[(j + 1) % grid.n] - u[j]) / grid.dx;
    const double h1mu_sq = inner(grid, u, u) + rc.params.mu * inner(grid, dplus, dplus);
    const double bound = std::min(min_q1, rc.coeffs.nu * min_q2) * h1mu_sq;
    CHECK(quad >= bound - 1e-12);
  }
}

TEST_CASE("layer operator collapses for constant depth and flat bottom") {
  const PeriodicGrid grid(2.0 * pi, 128);
  const double c = 0.8;
  const Field h(grid.n, c);
  const Bathymetry flat = Bathymetry::flat(grid.n);
  Field v(grid.n);
  for (int j = 0; j < grid.n; ++j) v[j] = std::sin(grid.node(j));

  const Field out = tcal_apply(grid, h, flat, v);
  const Field wide = derivative(grid, derivative(grid, v, 1), 1);
  Field want(grid.n), analytic(grid.n);
  for (int j = 0; j < grid.n; ++j) {
    want[j] = -(c * c / 3.0) * wide[j];
    analytic[j] = (c * c / 3.0) * std::sin(grid.node(j));
  }
  CHECK(max_abs_diff(out, want) <= 1e-13);      // same composite stencil
  CHECK(max_abs_diff(out, analytic) <= 5e-4);   // truncation only
}

TEST_CASE("layer operator annihilates constants over a flat bottom") {
  const PeriodicGrid grid(2.0 * pi, 64);
  const Field h(grid.n, 1.3);
  const Field v(grid.n, 0.9);
  const Field out = tcal_apply(grid, h, Bathymetry::flat(grid.n), v);
  for (int j = 0; j < grid.n; ++j) CHECK(out[j] == 0.0);
}

TEST_CASE("a constant bottom acts exactly like no bottom") {
  const PeriodicGrid grid(2.0 * pi, 64);
  std::mt19937 rng(43);
  const Field h = test::random_smooth_field(grid, rng, 3, 0.2);
  Field hpos(grid.n);
  for (int j = 0; j < grid.n; ++j) hpos[j] = 1.0 + h[j];
  const Field v = test::random_smooth_field(grid, rng, 4, 1.0);

  Bathymetry shifted = Bathymetry::flat(grid.n);
  for (double& x : shifted.b) x = 3.0;  // analytic derivatives stay zero
  const Field a = tcal_apply(grid, hpos, shifted, v);
  const Field b = tcal_apply(grid, hpos, Bathymetry::flat(grid.n), v);
  for (int j = 0; j < grid.n; ++j) CHECK(a[j] == b[j]);
}

TEST_CASE("qbar at flat rest reduces to the leading dispersive term") {
  const PeriodicGrid grid(2.0 * pi, 128);
  RegimeParams p;  // gamma = 0, delta = 1
  const ModelCoefficients c = compute_coefficients(p);
  const State rest{0.0, Field(grid.n, 0.0), Field(grid.n, 0.0)};
  const Bathymetry flat = Bathymetry::flat(grid.n);
  const DerivedFields df = derive(grid, rest, flat, p, c);

  Field v(grid.n);
  for (int j = 0; j < grid.n; ++j) v[j] = std::sin(grid.node(j));
  const Field out = qbar_apply(grid, df, flat, v, p);

  const Field wide = derivative(grid, derivative(grid, v, 1), 1);
  Field want(grid.n), analytic(grid.n);
  for (int j = 0; j < grid.n; ++j) {
    want[j] = -c.lambda * wide[j];
    analytic[j] = c.lambda * std::sin(grid.node(j));
  }
  CHECK(max_abs_diff(out, want) <= 1e-14);
  CHECK(max_abs_diff(out, analytic) <= 1e-3);
}

TEST_CASE("qbar of a constant velocity at rest vanishes") {
  const PeriodicGrid grid(2.0 * pi, 64);
  RegimeParams p;
  p.gamma = 0.3;
  p.delta = 1.5;
  const ModelCoefficients c = compute_coefficients(p);
  const State rest{0.0, Field(grid.n, 0.0), Field(grid.n, 0.0)};
  const Bathymetry flat = Bathymetry::flat(grid.n);
  const DerivedFields df = derive(grid, rest, flat, p, c);
  const Field out = qbar_apply(grid, df, flat, Field(grid.n, 1.7), p);
  for (int j = 0; j < grid.n; ++j) CHECK(out[j] == 0.0);
}

TEST_CASE("rbar at flat rest reduces to the quadratic profile") {
  const PeriodicGrid grid(2.0 * pi, 128);
  RegimeParams p;  // gamma=0, delta=1: alpha = 1
  const ModelCoefficients c = compute_coefficients(p);
  const State rest{0.0, Field(grid.n, 0.0), Field(grid.n, 0.0)};
  const Bathymetry flat = Bathymetry::flat(grid.n);
  const DerivedFields df = derive(grid, rest, flat, p, c);

  Field v(grid.n);
  for (int j = 0; j < grid.n; ++j) v[j] = std::sin(grid.node(j));
  const Field out = rbar_apply(grid, df, flat, v, p);

  const Field dv = derivative(grid, v, 1);
  const Field wide = derivative(grid, dv, 1);
  Field want(grid.n), analytic(grid.n);
  for (int j = 0; j < grid.n; ++j) {
    want[j] = c.alpha * (0.5 * dv[j] * dv[j] + v[j] * wide[j] / 3.0);
    const double x = grid.node(j);
    analytic[j] = 0.5 * std::cos(x) * std::cos(x) - std::sin(x) * std::sin(x) / 3.0;
  }
  CHECK(max_abs_diff(out, want) <= 1e-14);
  CHECK(max_abs_diff(out, analytic) <= 2e-3);
}

TEST_CASE("rbar of a constant velocity at flat rest vanishes") {
  const PeriodicGrid grid(2.0 * pi, 64);
  RegimeParams p;
  p.gamma = 0.4;
  p.delta = 0.8;
  const ModelCoefficients c = compute_coefficients(p);
  const State rest{0.0, Field(grid.n, 0.0), Field(grid.n, 0.0)};
  const Bathymetry flat = Bathymetry::flat(grid.n);
  const DerivedFields df = derive(grid, rest, flat, p, c);
  const Field out = rbar_apply(grid, df, flat, Field(grid.n, -0.6), p);
  for (int j = 0; j < grid.n; ++j) CHECK(out[j] == 0.0);
}

TEST_CASE("qfrak: zero argument, rest degeneracy, primitive re-evaluation") {
  const PeriodicGrid grid(2.0 * pi, 128);
  std::mt19937 rng(47);

  // f = 0 gives exactly zero.
  {
    const RandomCase rc = random_admissible(grid, rng);
    const Field out =
        qfrak_apply(grid, rc.df, rc.state.v, Field(grid.n, 0.0), rc.params, rc.coeffs);
    for (int j = 0; j < grid.n; ++j) CHECK(out[j] == 0.0);
  }

  // gamma=0, delta=1, flat rest, constant v: q3 = 0 and dx v = 0.
  {
    RegimeParams p;
    const ModelCoefficients c = compute_coefficients(p);
    const State rest{0.0, Field(grid.n, 0.0), Field(grid.n, 2.2)};
    const DerivedFields df = derive(grid, rest, Bathymetry::flat(grid.n), p, c);
    const Field f = test::random_smooth_field(grid, rng, 4, 1.0);
    const Field out = qfrak_apply(grid, df, rest.v, f, p, c);
    for (int j = 0; j < grid.n; ++j) CHECK(out[j] == 0.0);
  }

  // Random inputs match a re-evaluation from grid primitives.
  {
    const RandomCase rc = random_admissible(grid, rng);
    const Field f = test::random_smooth_field(grid, rng, 5, 1.0);
    const Field out = qfrak_apply(grid, rc.df, rc.state.v, f, rc.params, rc.coeffs);

    const Field dv = derivative(grid, rc.state.v, 1);
    Field fdv(grid.n);
    for (int j = 0; j < grid.n; ++j) fdv[j] = f[j] * dv[j];
    const Field dfdv = derivative(grid, fdv, 1);
    Field want(grid.n);
    for (int j = 0; j < grid.n; ++j)
      want[j] = 2.0 * rc.df.q1[j] * rc.df.q3[j] * rc.state.v[j] * f[j] +
                rc.params.mu * rc.coeffs.kappa * dfdv[j];
    CHECK(max_abs_diff(out, want) <= 1e-13 * std::max(1.0, max_abs(want)));
  }
}

}  // TEST_SUITE
