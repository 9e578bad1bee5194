#pragma once
#include <array>
#include <cstdint>
#include <vector>

#include "photonwave/kstate.hpp"
#include "photonwave/waveguide.hpp"

namespace photonwave {

// Symmetrized pair of one-photon k-space states,
//   amplitude(1, 2) = coeff * [first(1) second(2) + first(2) second(1)].
// coeff is 1/sqrt 2 for distinct factors.  When the factors compare equal
// sample for sample the constructor uses 1/2, which collapses the sum to the
// plain product state; its self-product is then 1, while the bare pairing
// rule applied to a product of identical states gives 2.
struct TwoPhotonKState {
  KSpaceState first;
  KSpaceState second;
  double coeff = 0.0;
};

// Factors must share a grid and be normalized under the covariant product.
TwoPhotonKState symmetrize(const KSpaceState& a, const KSpaceState& b);

// Joint amplitude at node pair (i, j) in blocks (r1, l1), (r2, l2).
// Symmetric under exchanging the two slots exactly, not just to rounding.
cplx joint_amplitude(const TwoPhotonKState& S, int r1, int l1, std::size_t i,
                     int r2, int l2, std::size_t j);

// (S, T) by pairing factors both ways:
//   2 coeff_S coeff_T [(s1,t1)(s2,t2) + (s1,t2)(s2,t1)].
// Reordering the factors inside either argument leaves the value unchanged.
cplx two_photon_scalar_product(const TwoPhotonKState& S,
                               const TwoPhotonKState& T);

// Counter-propagating photon pair with zero total momentum and angular
// momentum: one shared envelope, read in u = x - ct for the right mover and
// v = x + ct for the left, with opposite helicities.  branch_weight[0]
// multiplies (right +1, left -1), branch_weight[1] the helicity-swapped
// term.  Exchange of the two photons swaps the table entries, so the state
// is exchange-symmetric exactly when the weights are equal.
struct EntangledPair {
  CharacteristicGrid grid;
  std::vector<cplx> envelope;
  std::array<cplx, 2> branch_weight{};
};

// Equal-weight pair from a normalized envelope (dx * Sum |f|^2 = 1).
EntangledPair entangled_pair(const CharacteristicGrid& g,
                             const std::vector<cplx>& envelope);

enum class Detector { right, left };

// {P(+1), P(-1)} for the photon reaching the given detector
std::array<double, 2> helicity_marginal(const EntangledPair& p, Detector d);

// P(right mover has lam_right AND left mover has lam_left); zero unless the
// helicities are opposite
double joint_helicity_probability(const EntangledPair& p, int lam_right,
                                  int lam_left);

// Detection of the right-moving photon with helicity lam projects the
// partner onto the left-moving branch with helicity -lam, renormalized.
// Detecting on a zero-weight branch raises DetectionError.
Waveguide1DState collapse(const EntangledPair& p, int lam);

struct Detection {
  std::size_t cell = 0;
  double x = 0.0;
};

// Inverse-CDF sampler over the cells of a normalized density.  Construction
// builds the prefix table once; each trial draws from its own
// (seed, trial) stream, so results do not depend on trial order.
class DetectionSampler {
 public:
  explicit DetectionSampler(const DensityField1D& rho);

  Detection sample(std::uint64_t seed, std::uint64_t trial) const;

  const CharacteristicGrid& grid() const { return grid_; }

 private:
  CharacteristicGrid grid_;
  std::vector<double> cdf_;
};

// One Born-rule draw, one detection per trial by construction.
Detection sample_detection(const DensityField1D& rho, std::uint64_t seed,
                           std::uint64_t trial = 0);

// Per-cell counts over n_trials draws.  The parallel version splits trials
// across threads and merges integer tallies, so it is bit-identical to the
// serial one.
std::vector<std::uint64_t> detection_counts(const DetectionSampler& sampler,
                                            std::uint64_t seed,
                                            std::uint64_t n_trials);
std::vector<std::uint64_t> detection_counts_serial(
    const DetectionSampler& sampler, std::uint64_t seed,
    std::uint64_t n_trials);

}  // namespace photonwave
