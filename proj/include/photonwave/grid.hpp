#pragma once
#include <memory>
#include <vector>

#include "photonwave/common.hpp"

namespace photonwave {

struct GridSpec {
  int n_radial = 256;
  int n_costheta = 64;
  int n_phi = 32;
  double k_min = 0.05;
  double k_max = 12.0;
};

// Spherical product quadrature over the k-space shell [k_min, k_max]:
// Gauss-Legendre in k and cos(theta), uniform in phi.  k = 0 is excluded
// (k_min > 0 required); the photon dispersion is omega = c*k.
//
// Three weight families per node i, kept separate on purpose:
//   w_raw  = (radial w)*(angular w)*k^2            -> discretizes  dk
//   w_cov  = w_raw / ((2pi)^3 * omega)             -> dk / ((2pi)^3 omega_k)
//   w_flat = w_raw / (2pi)^3                       -> dk / (2pi)^3
// The covariant measure belongs to amplitudes and the scalar product; the
// flat measure belongs to Born densities.  Mixing them up is the classic
// bug in this kind of code, hence the explicit names.
class QuadratureGrid {
 public:
  explicit QuadratureGrid(const GridSpec& spec);

  const GridSpec& spec() const { return spec_; }
  int size() const { return static_cast<int>(kvec_.size()); }

  const Vec3& kvec(int i) const { return kvec_[i]; }
  double k(int i) const { return k_[i]; }
  double omega(int i) const { return units.c * k_[i]; }
  double w_cov(int i) const { return w_cov_[i]; }
  double w_flat(int i) const { return w_flat_[i]; }
  double w_raw(int i) const { return w_raw_[i]; }

  const std::vector<Vec3>& kvecs() const { return kvec_; }
  const std::vector<double>& w_cov() const { return w_cov_; }
  const std::vector<double>& w_flat() const { return w_flat_; }

  // radial sub-quadrature (for spherically symmetric reductions)
  const std::vector<double>& radial_nodes() const { return kr_; }
  const std::vector<double>& radial_weights() const { return rw_; }

  // nearest node to a requested k-vector; distance returned for snap warnings
  int nearest_node(const Vec3& kprime, double* distance = nullptr) const;

  bool same_discretization(const QuadratureGrid& other) const;

  // shell volume (4pi/3)(k_max^3 - k_min^3); Sum w_raw must reproduce it
  double shell_volume() const;

 private:
  GridSpec spec_;
  std::vector<double> kr_, rw_;  // radial Gauss-Legendre
  std::vector<double> cu_, cw_;  // cos(theta) Gauss-Legendre
  std::vector<double> phi_;      // uniform azimuth, weight 2pi/n_phi
  std::vector<Vec3> kvec_;
  std::vector<double> k_, w_cov_, w_flat_, w_raw_;
};

using GridPtr = std::shared_ptr<const QuadratureGrid>;

GridPtr make_grid(const GridSpec& spec);

// 1D radial grid for spherically symmetric states (fast path).
class RadialGrid {
 public:
  RadialGrid(int n, double k_min, double k_max);
  // adopt an existing rule (nodes strictly increasing and positive)
  RadialGrid(std::vector<double> nodes, std::vector<double> weights);
  int size() const { return static_cast<int>(k_.size()); }
  double k(int i) const { return k_[i]; }
  double w(int i) const { return w_[i]; }  // plain dk weight
  double k_min() const { return k_min_; }
  double k_max() const { return k_max_; }

 private:
  double k_min_, k_max_;
  std::vector<double> k_, w_;
};

using RadialGridPtr = std::shared_ptr<const RadialGrid>;

// Gauss-Legendre nodes/weights on [a, b] (GSL-backed).
void gauss_legendre(int n, double a, double b, std::vector<double>& x,
                    std::vector<double>& w);

}  // namespace photonwave
