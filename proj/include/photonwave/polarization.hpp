#pragma once
#include "photonwave/common.hpp"

namespace photonwave {

// Right-handed orthonormal triad (e_theta, e_phi, k_hat) from the polar
// angles of k, and the helicity vectors e_lambda = (e_theta + i lambda e_phi)/sqrt(2).
// On the polar axis the azimuth degenerates; atan2(0,0) = 0 fixes the frame
// there, so e_theta = (1,0,0), e_phi = (0,1,0) at k || +z.
struct PolarizationTriad {
  Vec3 e_theta{}, e_phi{}, k_hat{};

  CVec3 helicity(int lambda) const {
    const double s = 1.0 / std::sqrt(2.0);
    const cplx il = I * static_cast<double>(lambda);
    return {s * (e_theta.x + il * e_phi.x), s * (e_theta.y + il * e_phi.y),
            s * (e_theta.z + il * e_phi.z)};
  }
};

inline PolarizationTriad polarization_basis(const Vec3& k) {
  const double kn = k.norm();
  if (kn == 0.0) throw std::domain_error("undefined polarization at k=0");
  const double ct = k.z / kn;
  const double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
  const double phi = std::atan2(k.y, k.x);
  const double cp = std::cos(phi), sp = std::sin(phi);
  PolarizationTriad t;
  t.e_theta = {ct * cp, ct * sp, -st};
  t.e_phi = {-sp, cp, 0.0};
  t.k_hat = {k.x / kn, k.y / kn, k.z / kn};
  return t;
}

}  // namespace photonwave
