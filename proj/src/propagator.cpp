#include "photonwave/propagator.hpp"

#include <gsl/gsl_sf_dawson.h>

#include <cmath>
#include <iostream>
#include <limits>

namespace photonwave {

namespace {

// shared kernel for both measures; deterministic: node order is fixed, so the
// per-point sum is identical for the serial and parallel paths
template <typename WeightFn>
void transform_batch(const QuadratureGrid& g, const std::vector<cplx>& a,
                     WeightFn&& weight, const std::vector<Vec3>& xs, double t,
                     bool parallel, std::vector<cplx>& out) {
  const std::size_t npts = xs.size();
  const std::size_t n = g.size();
  out.resize(npts);
  const int threads = parallel ? omp_get_max_threads() : 1;
#pragma omp parallel for schedule(static) num_threads(threads)
  for (long long p = 0; p < static_cast<long long>(npts); ++p) {
    const Vec3 x = xs[p];
    cplx acc{0.0, 0.0};
    for (std::size_t i = 0; i < n; ++i) {
      if (a[i] == cplx(0.0, 0.0)) continue;
      const double phase = g.omega(i) * t - dot(g.kvec(i), x);
      acc += weight(i) * a[i] * cplx(std::cos(phase), -std::sin(phase));
    }
    out[p] = acc;
  }
}

void maybe_warn_aliasing(const KSpaceState& s, const std::vector<Vec3>& xs,
                         double t, const EvalOptions& opt) {
  if (!opt.warn_aliasing) return;
  const double limit = resolvable_extent(*s.grid());
  std::size_t over = 0;
  for (const auto& x : xs) {
    const double extent =
        (x - s.origin().r).norm() + units.c * std::abs(t - s.origin().t);
    if (extent > limit) ++over;
  }
  if (over > 0) {
    std::clog << "wavefunction: " << over << " of " << xs.size()
              << " points exceed the resolvable extent " << limit
              << " (radial Nyquist); values there are aliased\n";
  }
}

}  // namespace

std::vector<cplx> wavefunction_batch(const KSpaceState& s, int r, int lambda,
                                     const std::vector<Vec3>& xs, double t,
                                     const EvalOptions& opt) {
  maybe_warn_aliasing(s, xs, t, opt);
  std::vector<cplx> out;
  const auto& g = *s.grid();
  transform_batch(
      g, s.amp(r, lambda), [&](std::size_t i) { return g.w_cov(i); }, xs, t,
      opt.parallel, out);
  return out;
}

std::vector<cplx> born_amplitude_batch(const KSpaceState& s, int lambda,
                                       const std::vector<Vec3>& xs, double t,
                                       const EvalOptions& opt) {
  maybe_warn_aliasing(s, xs, t, opt);
  std::vector<cplx> out;
  const auto& g = *s.grid();
  transform_batch(
      g, s.amp(-1, lambda), [&](std::size_t i) { return g.w_flat(i); }, xs, t,
      opt.parallel, out);
  return out;
}

cplx wavefunction(const KSpaceState& s, int r, int lambda, const Vec3& x,
                  double t) {
  EvalOptions opt;
  opt.parallel = false;
  opt.warn_aliasing = false;
  return wavefunction_batch(s, r, lambda, {x}, t, opt)[0];
}

cplx born_amplitude(const KSpaceState& s, int lambda, const Vec3& x,
                    double t) {
  EvalOptions opt;
  opt.parallel = false;
  opt.warn_aliasing = false;
  return born_amplitude_batch(s, lambda, {x}, t, opt)[0];
}

double resolvable_extent(const QuadratureGrid& g) {
  const auto& kr = g.radial_nodes();
  double max_gap = 0.0;
  for (std::size_t i = 1; i < kr.size(); ++i) {
    max_gap = std::max(max_gap, kr[i] - kr[i - 1]);
  }
  if (max_gap == 0.0) return std::numeric_limits<double>::infinity();
  return M_PI / max_gap;
}

namespace {
cplx radial_transform(const RadialGrid& g, const std::vector<cplx>& a,
                      double R, double dt, bool extra_k) {
  cplx acc{0.0, 0.0};
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double k = g.k(i);
    const double sinc = R == 0.0 ? k : std::sin(k * R) / R;
    const double phase = units.c * k * dt;
    acc += g.w(i) * a[i] * (extra_k ? k : 1.0) * sinc *
           cplx(std::cos(phase), -std::sin(phase));
  }
  return acc;
}
}  // namespace

cplx radial_wavefunction(const RadialGrid& g, const std::vector<cplx>& a,
                         double R, double dt) {
  return radial_transform(g, a, R, dt, false) /
         (2.0 * M_PI * M_PI * units.c);
}

cplx radial_born_amplitude(const RadialGrid& g, const std::vector<cplx>& a,
                           double R, double dt) {
  return radial_transform(g, a, R, dt, true) / (2.0 * M_PI * M_PI);
}

double radial_born_norm2(const RadialGrid& g, const std::vector<cplx>& a) {
  double n2 = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    n2 += g.w(i) * g.k(i) * g.k(i) * std::norm(a[i]);
  }
  return n2 / (2.0 * M_PI * M_PI);
}

double delta_sigma(double s, double sigma) {
  const double u = s / sigma;
  return std::exp(-0.5 * u * u) / (sigma * std::sqrt(2.0 * M_PI));
}

double regularized_inverse(double s, double sigma) {
  const double rt2 = std::sqrt(2.0);
  return (rt2 / sigma) * gsl_sf_dawson(s / (sigma * rt2));
}

double odd_propagator(double R, double dt, double sigma) {
  const double cdt = units.c * dt;
  return (delta_sigma(R + cdt, sigma) - delta_sigma(R - cdt, sigma)) /
         (4.0 * M_PI * R);
}

double even_propagator(double R, double dt, double sigma) {
  const double cdt = units.c * dt;
  return (regularized_inverse(R + cdt, sigma) +
          regularized_inverse(R - cdt, sigma)) /
         (4.0 * M_PI * M_PI * R);
}

double green_function(double R, double dt, double sigma) {
  const double cdt = units.c * dt;
  return (delta_sigma(R + cdt, sigma) + delta_sigma(R - cdt, sigma)) /
         (4.0 * M_PI * R);
}

double emission_amplitude(double R, double dt, double sigma) {
  return 0.5 * (green_function(R, dt, sigma) - odd_propagator(R, dt, sigma));
}

double absorption_amplitude(double R, double dt, double sigma) {
  return 0.5 * (green_function(R, dt, sigma) + odd_propagator(R, dt, sigma));
}

}  // namespace photonwave
