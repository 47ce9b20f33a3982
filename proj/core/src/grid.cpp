#include "bgn/grid.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace bgn {

namespace {

void check_field(const PeriodicGrid& grid, const Field& f) {
  if (static_cast<int>(f.size()) != grid.n)
    throw std::invalid_argument("field size does not match grid");
}

// One forward/backward plan pair per transform size, created once and kept
// for the process lifetime. FFTW_UNALIGNED lets the cached plans run on any
// caller buffers; the planner itself is guarded (it is not thread-safe),
// while executing a cached plan on distinct buffers is.
struct PlanPair {
  fftw_plan forward;
  fftw_plan backward;
};

PlanPair plans_for(int n) {
  static std::mutex mutex;
  static std::map<int, PlanPair> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(n);
  if (it == cache.end()) {
    std::vector<double> a(n), b(n);
    PlanPair pair;
    pair.forward =
        fftw_plan_r2r_1d(n, a.data(), b.data(), FFTW_R2HC, FFTW_ESTIMATE | FFTW_UNALIGNED);
    pair.backward =
        fftw_plan_r2r_1d(n, a.data(), b.data(), FFTW_HC2R, FFTW_ESTIMATE | FFTW_UNALIGNED);
    it = cache.emplace(n, pair).first;
  }
  return it->second;
}

// Forward real-to-halfcomplex DFT (unnormalized, FFTW layout:
// out[0]=DC, out[j]/out[n-j] = Re/Im of mode j, out[n/2]=Nyquist).
std::vector<double> dft_r2hc(const PeriodicGrid& grid, const Field& f) {
  std::vector<double> in(f);
  std::vector<double> out(f.size());
  fftw_execute_r2r(plans_for(grid.n).forward, in.data(), out.data());
  return out;
}

Field idft_hc2r(const PeriodicGrid& grid, std::vector<double> spec) {
  Field out(spec.size());
  fftw_execute_r2r(plans_for(grid.n).backward, spec.data(), out.data());
  const double scale = 1.0 / grid.n;
  for (double& v : out) v *= scale;
  return out;
}

}  // namespace

PeriodicGrid::PeriodicGrid(double length_, int n_) : length(length_), n(n_), dx(length_ / n_) {
  if (!(length > 0.0) || !std::isfinite(length))
    throw std::invalid_argument("grid length must be positive and finite");
  if (n < 8 || n % 2 != 0)
    throw std::invalid_argument("grid size must be even and at least 8");
}

std::vector<double> PeriodicGrid::nodes() const {
  std::vector<double> x(n);
  for (int j = 0; j < n; ++j) x[j] = node(j);
  return x;
}

Field derivative(const PeriodicGrid& grid, const Field& f, int order) {
  check_field(grid, f);
  const int n = grid.n;
  Field out(n);
  if (order == 1) {
    const double w = 1.0 / (2.0 * grid.dx);
    for (int j = 0; j < n; ++j) {
      const int jp = (j + 1) % n;
      const int jm = (j + n - 1) % n;
      out[j] = (f[jp] - f[jm]) * w;
    }
  } else if (order == 2) {
    const double w = 1.0 / (grid.dx * grid.dx);
    for (int j = 0; j < n; ++j) {
      const int jp = (j + 1) % n;
      const int jm = (j + n - 1) % n;
      out[j] = (f[jp] - 2.0 * f[j] + f[jm]) * w;
    }
  } else {
    throw std::invalid_argument("derivative order must be 1 or 2");
  }
  return out;
}

double inner(const PeriodicGrid& grid, const Field& f, const Field& g) {
  check_field(grid, f);
  check_field(grid, g);
  double sum = 0.0;
  for (int j = 0; j < grid.n; ++j) sum += f[j] * g[j];
  return grid.dx * sum;
}

Field lambda_s(const PeriodicGrid& grid, const Field& f, double s) {
  check_field(grid, f);
  if (s < 0.0) throw std::invalid_argument("lambda_s requires s >= 0");
  if (s == 0.0) return f;

  std::vector<double> spec = dft_r2hc(grid, f);
  const int n = grid.n;
  const double k0 = 2.0 * pi / grid.length;
  for (int j = 1; j < n / 2; ++j) {
    const double k = k0 * j;
    const double m = std::pow(1.0 + k * k, 0.5 * s);
    spec[j] *= m;
    spec[n - j] *= m;
  }
  const double knyq = k0 * (n / 2);
  spec[n / 2] *= std::pow(1.0 + knyq * knyq, 0.5 * s);
  return idft_hc2r(grid, std::move(spec));
}

double sobolev_norm(const PeriodicGrid& grid, const Field& f, double s) {
  Field g = lambda_s(grid, f, s);
  return std::sqrt(inner(grid, g, g));
}

double h1mu_norm(const PeriodicGrid& grid, const Field& f, double mu) {
  if (!(mu > 0.0)) throw std::invalid_argument("h1mu_norm requires mu > 0");
  Field df = spectral_derivative(grid, f);
  return std::sqrt(inner(grid, f, f) + mu * inner(grid, df, df));
}

Field spectral_derivative(const PeriodicGrid& grid, const Field& f) {
  check_field(grid, f);
  std::vector<double> spec = dft_r2hc(grid, f);
  const int n = grid.n;
  const double k0 = 2.0 * pi / grid.length;
  std::vector<double> dspec(n, 0.0);
  for (int j = 1; j < n / 2; ++j) {
    const double k = k0 * j;
    dspec[j] = -k * spec[n - j];
    dspec[n - j] = k * spec[j];
  }
  // The Nyquist cosine has no representable sine partner; its derivative is
  // dropped, which is the standard convention for real spectral derivatives.
  dspec[0] = 0.0;
  dspec[n / 2] = 0.0;
  return idft_hc2r(grid, std::move(dspec));
}

std::complex<double> fourier_mode(const PeriodicGrid& grid, const Field& f, int k) {
  check_field(grid, f);
  const int n = grid.n;
  if (k < 0 || k > n / 2) throw std::invalid_argument("fourier_mode: k out of range");
  std::vector<double> spec = dft_r2hc(grid, f);
  const double scale = 1.0 / n;
  if (k == 0) return {spec[0] * scale, 0.0};
  if (k == n / 2) return {spec[n / 2] * scale, 0.0};
  return {spec[k] * scale, spec[n - k] * scale};
}

}  // namespace bgn
