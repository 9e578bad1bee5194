#pragma once
#include <vector>

#include "photonwave/kstate.hpp"

namespace photonwave {

// Position-space amplitude of one (r, lambda) component against the
// covariant measure:
//   phi(x, t) = Sum_i w_cov_i a_{r,lambda}(k_i) e^{-i(omega_i t - k_i.x)}
// (origin phases are already folded into the amplitudes).
cplx wavefunction(const KSpaceState& s, int r, int lambda, const Vec3& x,
                  double t);

// Detection (Born) amplitude of the odd series against the flat measure:
//   psi(x, t) = Sum_i w_flat_i a_{-1,lambda}(k_i) e^{-i(omega_i t - k_i.x)}
// so |psi|^2 is the position probability density.
cplx born_amplitude(const KSpaceState& s, int lambda, const Vec3& x, double t);

struct EvalOptions {
  bool parallel = true;       // serial reference path when false
  bool warn_aliasing = true;  // clog note when points exceed resolvable_extent
};

std::vector<cplx> wavefunction_batch(const KSpaceState& s, int r, int lambda,
                                     const std::vector<Vec3>& xs, double t,
                                     const EvalOptions& opt = {});
std::vector<cplx> born_amplitude_batch(const KSpaceState& s, int lambda,
                                       const std::vector<Vec3>& xs, double t,
                                       const EvalOptions& opt = {});

// Radial Nyquist bound: largest |x - x'| + c|t - t'| whose fastest radial
// phase still advances by less than pi between adjacent radial nodes.
double resolvable_extent(const QuadratureGrid& g);

// Fast paths for spherically symmetric envelopes a(k) sampled on a radial
// rule; the angular integrals collapse to sin(kR)/(kR).
//   phi(R, dt) = (1/(2 pi^2 c R)) Sum_i w_i a_i sin(k_i R) e^{-i c k_i dt}
//   psi(R, dt) = (1/(2 pi^2 R))   Sum_i w_i k_i a_i sin(k_i R) e^{-i c k_i dt}
// R = 0 is taken by the series limit sin(kR)/R -> k.
cplx radial_wavefunction(const RadialGrid& g, const std::vector<cplx>& a,
                         double R, double dt);
cplx radial_born_amplitude(const RadialGrid& g, const std::vector<cplx>& a,
                           double R, double dt);

// Flat-measure norm^2 of an isotropic odd envelope:
// (1/(2 pi^2)) Sum_i w_i k_i^2 |a_i|^2
double radial_born_norm2(const RadialGrid& g, const std::vector<cplx>& a);

// Gaussian-regularized delta, unit area: e^{-s^2/(2 sigma^2)} / (sigma sqrt(2 pi))
double delta_sigma(double s, double sigma);

// Regularized principal value 1/s: (sqrt(2)/sigma) D(s/(sigma sqrt(2))) with
// D the Dawson integral; odd in s, ~1/s for |s| >> sigma, finite at s = 0.
double regularized_inverse(double s, double sigma);

// Analytic light-cone kernels for a sigma-regularized point state; these are
// the exact continuum values of the even/odd parts of `wavefunction` on such
// a state:
//   even_propagator = Re phi = (1/(4 pi^2 R)) [P_sigma(R + c dt) + P_sigma(R - c dt)]
//   odd_propagator  = Im phi = (1/(4 pi R))   [delta_sigma(R + c dt) - delta_sigma(R - c dt)]
// with P_sigma the regularized 1/s above.  The odd kernel is confined to the
// light cone; the even one carries the acausal power-law tail.
double odd_propagator(double R, double dt, double sigma);
double even_propagator(double R, double dt, double sigma);

// (1/(4 pi R)) [delta_sigma(R + c dt) + delta_sigma(R - c dt)]
double green_function(double R, double dt, double sigma);

// Retarded / advanced halves: emission = (G - odd)/2 lives on R = c dt,
// absorption = (G + odd)/2 on R = -c dt; they sum to G and differ by -odd.
double emission_amplitude(double R, double dt, double sigma);
double absorption_amplitude(double R, double dt, double sigma);

}  // namespace photonwave
