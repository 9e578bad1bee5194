#pragma once
#include <array>
#include <vector>

#include "photonwave/grid.hpp"

namespace photonwave {

// One-photon state in k-space.  Amplitudes a_{r,lambda}(k_i) live on the
// covariant measure: fields are recovered as Sum_i w_cov_i a_i e^{-i k x}.
// Parity r = +1 tags the even field series, r = -1 the odd one; a pure
// positive-energy state has a_{+1} = a_{-1} nodewise, a pure negative-energy
// state a_{-1} = -a_{+1}.
//
// The spacetime origin of the state is folded into the stored amplitudes as
// the phase e^{i k x'} with k x' = omega t' - k.r' (so consumers never apply
// origin phases themselves); `origin()` is retained as provenance.
class KSpaceState {
 public:
  explicit KSpaceState(GridPtr grid, SpaceTime origin = {});

  const GridPtr& grid() const { return grid_; }
  const SpaceTime& origin() const { return origin_; }

  // r, lambda in {+1, -1}
  std::vector<cplx>& amp(int r, int lambda);
  const std::vector<cplx>& amp(int r, int lambda) const;

  // frequency decomposition at node i for one helicity:
  //   plus  = a_{+1} + a_{-1}   (coefficient of e^{-ikx} in the field)
  //   minus = a*_{+1} - a*_{-1} (coefficient of e^{+ikx})
  // The invertible map back is a_{+1} = (plus + conj(minus))/2,
  // a_{-1} = (plus - conj(minus))/2.
  cplx freq_plus(int lambda, int i) const;
  cplx freq_minus(int lambda, int i) const;

 private:
  static int slot(int r, int lambda);
  GridPtr grid_;
  SpaceTime origin_;
  std::array<std::vector<cplx>, 4> amp_;
};

// Discretized (2pi)^3 omega_k delta(k - k'): amplitude 1/w_cov at the node
// nearest to kprime, zero elsewhere.  |k'| outside [k_min, k_max] throws
// std::out_of_range.  If the snap distance exceeds `snap_warn_tol * |k'|`
// a note is emitted on std::clog (pass snapped to inspect programmatically).
KSpaceState momentum_eigenstate(GridPtr grid, const Vec3& kprime, int lambda,
                                int r, double snap_warn_tol = 1e-3,
                                double* snap_distance = nullptr);

// Amplitude e^{i k x'} (pure phase) at every node, optionally tempered by a
// Gaussian regulator e^{-sigma_x^2 k^2 / 2}.  sigma_x = 0 reproduces the
// exact eigenstate phases.
KSpaceState position_eigenstate(GridPtr grid, const Vec3& xprime, int lambda,
                                int r, double sigma_x = 0.0,
                                double tprime = 0.0);

// Envelope N exp(-|k - k0|^2 / (4 sigma_k^2)) in a single (r, lambda)
// component, with N fixed so the flat-measure norm of the envelope is 1
// (for r = -1 that is exactly the Born norm).
// Throws ResolutionError when the Born-weight envelope tail (squared,
// relative to peak) at k_min or k_max exceeds 1e-12.
KSpaceState gaussian_wavepacket(GridPtr grid, const Vec3& k0, double sigma_k,
                                int lambda, int r);

KSpaceState superpose(const KSpaceState& a, const KSpaceState& b, cplx ca,
                      cplx cb);

// Pulse delayed by tau: amplitudes gain e^{i omega tau} (origin t' -> t'+tau).
KSpaceState time_shifted(const KSpaceState& s, double tau);

// Pulse displaced by dx: amplitudes gain e^{-i k.dx} (origin r' -> r'+dx).
KSpaceState displaced(const KSpaceState& s, const Vec3& dx);

// Sign-of-energy operator: exchanges the parity components
// (a_{+1}, a_{-1}) -> (a_{-1}, a_{+1}).  Involution; +1 on positive-energy
// states, -1 on negative-energy ones.
KSpaceState sign_of_energy(const KSpaceState& s);

// Flat-measure probability norm sqrt(Sum_lambda Sum_i w_flat |a_{-1,lambda}|^2);
// only the odd series carries Born weight.
double born_norm(const KSpaceState& s);
KSpaceState normalized_born(const KSpaceState& s);

// Conserved frequency-asymmetry charge
//   Q = Sum_lambda Sum_i w_flat_i Re(conj(a_{+1,lambda,i}) a_{-1,lambda,i})
// which equals Sum w_flat (|a_+|^2 - |a_-|^2) for the half-convention
// frequency amplitudes a_± = (a_{+1} ± a_{-1})/2.  Anchors: 0 for either
// single-parity (real-field) series, ±1 for unit-Born-norm pure
// positive/negative-energy states, invariant under time translation.
double conserved_charge(const KSpaceState& s);

}  // namespace photonwave
