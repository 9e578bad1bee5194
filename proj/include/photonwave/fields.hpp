#pragma once
#include <vector>

#include "photonwave/propagator.hpp"

namespace photonwave {

// Regular spacetime sampling lattice: cubic spatial cells of step dx starting
// at `origin`, uniform time slices starting at t0.
struct SlabSpec {
  Vec3 origin{};
  double dx = 0.1;
  int nx = 1, ny = 1, nz = 1;
  double t0 = 0.0;
  double dt = 0.1;
  int nt = 1;

  std::size_t cells() const {
    return static_cast<std::size_t>(nx) * ny * nz;
  }
  std::size_t size() const { return cells() * static_cast<std::size_t>(nt); }
  std::size_t cell_index(int ix, int iy, int iz) const {
    return (static_cast<std::size_t>(ix) * ny + iy) * nz + iz;
  }
  std::size_t index(int it, int ix, int iy, int iz) const {
    return static_cast<std::size_t>(it) * cells() + cell_index(ix, iy, iz);
  }
  Vec3 point(int ix, int iy, int iz) const {
    return {origin.x + ix * dx, origin.y + iy * dx, origin.z + iz * dx};
  }
  double time(int it) const { return t0 + it * dt; }
};

struct VectorFieldSlab {
  SlabSpec spec;
  double sigma = 0.0;  // regularization width carried with the samples
  std::vector<CVec3> values;  // indexed by spec.index
};

// Spectral point evaluators of the transverse fields.  With the frequency
// split p = a_1 + a_-1 (e^{-ikx} branch) and n = conj(a_1) - conj(a_-1)
// (e^{+ikx} branch):
//   A(x)      = sqrt(hbar/2eps0) Sum_lambda Sum_i w_cov [p e_l E + n e_l* E*]
//   E(x)      = -dA/dt = sqrt(hbar/2eps0) Sum ... i omega [p e_l E - n e_l* E*]
//   Etilde(x) = sign-of-energy projected E: the e^{+ikx} branch flips sign,
// where E = e^{-i(omega t - k.x)} and e_l the helicity vector at k_i.
CVec3 transverse_potential(const KSpaceState& s, const Vec3& x, double t);
CVec3 transverse_electric(const KSpaceState& s, const Vec3& x, double t);
CVec3 transverse_electric_tilde(const KSpaceState& s, const Vec3& x, double t);

VectorFieldSlab sample_potential(const KSpaceState& s, const SlabSpec& slab,
                                 const EvalOptions& opt = {});

// E = -dA/dt and B = curl A by 4th-order finite differences (centered in the
// interior, one-sided 5-point closures at the boundaries).  The time axis
// needs nt >= 5; the curl needs nx, ny, nz >= 5.
struct DerivedFields {
  VectorFieldSlab E, B;
};
DerivedFields derive_fields(const VectorFieldSlab& A);

// Prescribed helicity-lambda scalar source sampled on its own lattice.
// Values outside the lattice are zero; that is only sound when the support
// is compact inside it, which evaluation verifies (boundary samples must be
// negligible) before trusting the quadrature.
struct SourceCurrent {
  SlabSpec lattice;
  int lambda = 1;
  std::vector<cplx> values;  // indexed by lattice.index

  // Catmull-Rom interpolation in time at fixed spatial cell (linear when
  // fewer than 4 slices), edge samples clamped; zero outside the range
  cplx at_time(std::size_t cell, double tprime) const;
};

// J(x,t) = g3(x - center; sigma_x) * delta_{sigma_t}(t - t_center), both
// factors unit-normalized Gaussians, sampled on `lattice`.
SourceCurrent gaussian_flash_source(const Vec3& center, double sigma_x,
                                    double t_center, double sigma_t,
                                    const SlabSpec& lattice, int lambda = 1);

// Time-symmetric particular solution of the wave equation,
//   phi(x,t) = Sum_cells V/(4 pi R) * (1/2)[J(x', t - R/c) + J(x', t + R/c)]
// with interpolated retarded/advanced times.  The cell containing the
// evaluation point is integrated as an equivalent ball of equal volume
// (weight r_eq^2/2) instead of V/(4 pi R).  Throws CoverageError when the
// source is alive at its lattice boundary.
cplx particular_solution(const SourceCurrent& J, const Vec3& x, double t);
std::vector<cplx> sample_particular_solution(const SourceCurrent& J,
                                             const SlabSpec& slab,
                                             const EvalOptions& opt = {});

// L2 norm over interior slab points of (1/c^2) d_tt phi - lap phi - j with
// second-order differences; phi and j sampled on the same slab.
double wave_residual_l2(const std::vector<cplx>& phi,
                        const std::vector<cplx>& j, const SlabSpec& slab);

}  // namespace photonwave
