#pragma once

#include <complex>
#include <vector>

namespace bgn {

inline constexpr double pi = 3.141592653589793238462643383279502884;

// A grid function: one real sample per node.
using Field = std::vector<double>;

// Uniform periodic grid on [0, L): x_j = j*dx with dx = L/n.
struct PeriodicGrid {
  double length;
  int n;
  double dx;

  PeriodicGrid(double length_, int n_);

  double node(int j) const { return dx * j; }
  std::vector<double> nodes() const;
};

// Centered finite-difference derivative of order 1 or 2, periodic wrap.
Field derivative(const PeriodicGrid& grid, const Field& f, int order);

// dx * sum_j f_j g_j  (periodic trapezoid rule).
double inner(const PeriodicGrid& grid, const Field& f, const Field& g);

// Fourier multiplier (1 + k^2)^(s/2) with k the integer wavenumbers scaled
// by 2*pi/L. s = 0 returns the input unchanged.
Field lambda_s(const PeriodicGrid& grid, const Field& f, double s);

// |f|_{H^s} = |Lambda^s f|_{L^2}.
double sobolev_norm(const PeriodicGrid& grid, const Field& f, double s);

// sqrt(|f|_{L^2}^2 + mu |df/dx|_{L^2}^2) with the spectral derivative.
double h1mu_norm(const PeriodicGrid& grid, const Field& f, double mu);

// Exact derivative of the trigonometric interpolant (Nyquist mode dropped).
Field spectral_derivative(const PeriodicGrid& grid, const Field& f);

// Normalized coefficient of e^{i 2 pi k x / L}, 0 <= k <= n/2.
std::complex<double> fourier_mode(const PeriodicGrid& grid, const Field& f, int k);

}  // namespace bgn
