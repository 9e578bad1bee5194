#include "photonwave/scalar_product.hpp"

#include <cmath>
#include <iostream>

#include "photonwave/fields.hpp"
#include "photonwave/propagator.hpp"

namespace photonwave {

cplx scalar_product(const KSpaceState& s1, const KSpaceState& s2) {
  if (!s1.grid()->same_discretization(*s2.grid())) {
    throw ConfigError("scalar_product: states live on different grids");
  }
  const auto& g = *s1.grid();
  cplx acc{0.0, 0.0};
  for (int r : {1, -1}) {
    for (int lambda : {1, -1}) {
      const auto& a = s1.amp(r, lambda);
      const auto& b = s2.amp(r, lambda);
      for (std::size_t i = 0; i < a.size(); ++i) {
        acc += g.w_cov(i) * std::conj(a[i]) * b[i];
      }
    }
  }
  return acc;
}

KSpaceState normalized_covariant(const KSpaceState& s) {
  const double n2 = scalar_product(s, s).real();
  if (n2 <= 0.0) {
    throw std::invalid_argument(
        "normalized_covariant: state has zero covariant norm");
  }
  return superpose(s, s, 1.0 / std::sqrt(n2), 0.0);
}

DensityField born_density_k(const KSpaceState& s, int lambda) {
  const auto& g = *s.grid();
  const auto& a = s.amp(-1, lambda);
  DensityField d;
  d.values.resize(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    d.values[i] = std::norm(a[i]);
    d.total += g.w_flat(i) * d.values[i];
  }
  return d;
}

SpatialQuadrature box_quadrature(const Vec3& lo, const Vec3& hi, int nx,
                                 int ny, int nz) {
  std::vector<double> xs, wx, ys, wy, zs, wz;
  gauss_legendre(nx, lo.x, hi.x, xs, wx);
  gauss_legendre(ny, lo.y, hi.y, ys, wy);
  gauss_legendre(nz, lo.z, hi.z, zs, wz);
  SpatialQuadrature q;
  q.points.reserve(static_cast<std::size_t>(nx) * ny * nz);
  q.weights.reserve(q.points.capacity());
  for (int i = 0; i < nx; ++i) {
    for (int j = 0; j < ny; ++j) {
      for (int k = 0; k < nz; ++k) {
        q.points.push_back({xs[i], ys[j], zs[k]});
        q.weights.push_back(wx[i] * wy[j] * wz[k]);
      }
    }
  }
  return q;
}

SpatialQuadrature cylindrical_quadrature(double s_max, double z_min,
                                         double z_max, int ns, int nz) {
  std::vector<double> ss, ws, zs, wz;
  gauss_legendre(ns, 0.0, s_max, ss, ws);
  gauss_legendre(nz, z_min, z_max, zs, wz);
  SpatialQuadrature q;
  q.points.reserve(static_cast<std::size_t>(ns) * nz);
  q.weights.reserve(q.points.capacity());
  for (int i = 0; i < ns; ++i) {
    for (int j = 0; j < nz; ++j) {
      q.points.push_back({ss[i], 0.0, zs[j]});
      q.weights.push_back(2.0 * M_PI * ss[i] * ws[i] * wz[j]);
    }
  }
  return q;
}

DensityField born_density_x(const KSpaceState& s, int lambda,
                            const SpatialQuadrature& quad, double t) {
  const auto psi = born_amplitude_batch(s, lambda, quad.points, t);
  DensityField d;
  d.values.resize(psi.size());
  for (std::size_t j = 0; j < psi.size(); ++j) {
    d.values[j] = std::norm(psi[j]);
    d.total += quad.weights[j] * d.values[j];
  }
  // compare captured probability against this helicity's k-space Born weight
  const auto& g = *s.grid();
  const auto& a = s.amp(-1, lambda);
  double sector = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sector += g.w_flat(i) * std::norm(a[i]);
  }
  if (sector > 0.0 && d.total < 0.99 * sector) {
    std::clog << "born_density_x: quadrature captures " << d.total << " of "
              << sector << " Born weight; enlarge the spatial window\n";
  }
  return d;
}

double number_density(const KSpaceState& s, const Vec3& x, double t) {
  const CVec3 A = transverse_potential(s, x, t);
  const CVec3 Et = transverse_electric_tilde(s, x, t);
  return (units.eps0 / units.hbar) * (I * dot(conj(Et), A)).real();
}

}  // namespace photonwave
