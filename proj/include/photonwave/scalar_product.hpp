#pragma once
#include <vector>

#include "photonwave/kstate.hpp"

namespace photonwave {

// Biorthogonal scalar product on the covariant measure,
//   (s1, s2) = Sum_{r,lambda} Sum_i w_cov_i conj(a1_{r,lambda,i}) a2_{r,lambda,i},
// conjugate-linear in the first argument and block-diagonal in r and lambda.
// Relative origin phases are already folded into the amplitudes.
cplx scalar_product(const KSpaceState& s1, const KSpaceState& s2);

// State rescaled to (s, s) = 1.  Distinct from normalized_born: the covariant
// self-norm of a Born-normalized packet is ~ 1/(c k0), not 1.
KSpaceState normalized_covariant(const KSpaceState& s);

// Nonnegative density samples plus their quadrature total.
struct DensityField {
  std::vector<double> values;
  double total = 0.0;
};

// rho(k_i) = |a_{-1,lambda}(k_i)|^2; total against the flat measure, so a
// Born-normalized state has Sum_lambda total = 1.
DensityField born_density_k(const KSpaceState& s, int lambda);

// Spatial quadrature rule: arbitrary points with weights.
struct SpatialQuadrature {
  std::vector<Vec3> points;
  std::vector<double> weights;
};

// Tensor-product Gauss-Legendre rule over an axis-aligned box.
SpatialQuadrature box_quadrature(const Vec3& lo, const Vec3& hi, int nx,
                                 int ny, int nz);

// Rule for axisymmetric integrands f(s, z) about the z axis: points on the
// y = 0 half-plane, weights 2 pi s w_s w_z.  Only valid when the caller's
// integrand really is axisymmetric.
SpatialQuadrature cylindrical_quadrature(double s_max, double z_min,
                                         double z_max, int ns, int nz);

// rho(x_j) = |psi_{-1,lambda}(x_j, t)|^2 on the given rule; total is the
// captured probability.  Logs a note when the rule captures less than 99% of
// the state's helicity-lambda Born weight.
DensityField born_density_x(const KSpaceState& s, int lambda,
                            const SpatialQuadrature& quad, double t);

// Photon number density (eps0/hbar) Re[i conj(Etilde(x)).A(x)] built from the
// spectral transverse fields; nonnegative up to quadrature error, and its
// space integral equals the covariant self-norm for positive-energy states.
double number_density(const KSpaceState& s, const Vec3& x, double t);

}  // namespace photonwave
