#include "photonwave/multiphoton.hpp"

#include <algorithm>
#include <cmath>

#include "photonwave/rng.hpp"
#include "photonwave/scalar_product.hpp"

namespace photonwave {

namespace {

bool same_samples(const KSpaceState& a, const KSpaceState& b) {
  for (int r : {1, -1}) {
    for (int lambda : {1, -1}) {
      if (a.amp(r, lambda) != b.amp(r, lambda)) return false;
    }
  }
  return true;
}

void require_unit_norm(const KSpaceState& s, const char* who) {
  const double n2 = scalar_product(s, s).real();
  if (std::abs(n2 - 1.0) > 1e-8) {
    throw ConfigError(std::string(who) +
                      ": factor is not covariant-normalized");
  }
}

}  // namespace

TwoPhotonKState symmetrize(const KSpaceState& a, const KSpaceState& b) {
  if (!a.grid()->same_discretization(*b.grid())) {
    throw ConfigError("symmetrize: factors live on different grids");
  }
  require_unit_norm(a, "symmetrize");
  require_unit_norm(b, "symmetrize");
  const double coeff = same_samples(a, b) ? 0.5 : 1.0 / std::sqrt(2.0);
  return {a, b, coeff};
}

cplx joint_amplitude(const TwoPhotonKState& S, int r1, int l1, std::size_t i,
                     int r2, int l2, std::size_t j) {
  return S.coeff * (S.first.amp(r1, l1)[i] * S.second.amp(r2, l2)[j] +
                    S.second.amp(r1, l1)[i] * S.first.amp(r2, l2)[j]);
}

cplx two_photon_scalar_product(const TwoPhotonKState& S,
                               const TwoPhotonKState& T) {
  const cplx direct = scalar_product(S.first, T.first) *
                      scalar_product(S.second, T.second);
  const cplx exchanged = scalar_product(S.first, T.second) *
                         scalar_product(S.second, T.first);
  return 2.0 * S.coeff * T.coeff * (direct + exchanged);
}

EntangledPair entangled_pair(const CharacteristicGrid& g,
                             const std::vector<cplx>& envelope) {
  if (g.n < 2 || g.dx <= 0.0) {
    throw ConfigError("entangled_pair: grid needs dx > 0 and n >= 2");
  }
  if (envelope.size() != g.n) {
    throw ConfigError("entangled_pair: envelope does not match the grid");
  }
  double n2 = 0.0;
  for (const cplx& v : envelope) n2 += std::norm(v);
  n2 *= g.dx;
  if (std::abs(n2 - 1.0) > 1e-8) {
    throw ConfigError("entangled_pair: envelope is not normalized");
  }
  EntangledPair p;
  p.grid = g;
  p.envelope = envelope;
  const double w = 1.0 / std::sqrt(2.0);
  p.branch_weight = {cplx(w, 0.0), cplx(w, 0.0)};
  return p;
}

std::array<double, 2> helicity_marginal(const EntangledPair& p, Detector d) {
  const double wp = std::norm(p.branch_weight[0]);
  const double wm = std::norm(p.branch_weight[1]);
  const double tot = wp + wm;
  if (tot <= 0.0) {
    throw ConfigError("helicity_marginal: zero branch table");
  }
  // the left mover carries the helicity opposite to its partner
  if (d == Detector::right) return {wp / tot, wm / tot};
  return {wm / tot, wp / tot};
}

double joint_helicity_probability(const EntangledPair& p, int lam_right,
                                  int lam_left) {
  if (lam_left != -lam_right) return 0.0;
  const double wp = std::norm(p.branch_weight[0]);
  const double wm = std::norm(p.branch_weight[1]);
  const double tot = wp + wm;
  if (tot <= 0.0) {
    throw ConfigError("joint_helicity_probability: zero branch table");
  }
  return (lam_right == 1 ? wp : wm) / tot;
}

Waveguide1DState collapse(const EntangledPair& p, int lam) {
  if (lam != 1 && lam != -1) {
    throw ConfigError("collapse: helicity must be +1 or -1");
  }
  const cplx w = p.branch_weight[lam == 1 ? 0 : 1];
  if (std::norm(w) == 0.0) {
    throw DetectionError("collapse: detected branch has zero amplitude");
  }
  Waveguide1DState out;
  out.grid = p.grid;
  out.right.assign(p.grid.n, cplx(0.0, 0.0));
  out.left = p.envelope;
  out.helicity_right = -lam;
  out.helicity_left = -lam;
  return normalized_1d(out);
}

DetectionSampler::DetectionSampler(const DensityField1D& rho)
    : grid_(rho.grid) {
  if (rho.values.size() != grid_.n || grid_.n == 0) {
    throw ConfigError("DetectionSampler: density does not match its grid");
  }
  if (std::abs(rho.total - 1.0) > 1e-6) {
    throw ConfigError("DetectionSampler: density is not normalized");
  }
  cdf_.resize(grid_.n);
  double acc = 0.0;
  for (std::size_t i = 0; i < grid_.n; ++i) {
    if (rho.values[i] < 0.0) {
      throw ConfigError("DetectionSampler: negative density sample");
    }
    acc += rho.values[i] * grid_.dx;
    cdf_[i] = acc;
  }
}

Detection DetectionSampler::sample(std::uint64_t seed,
                                   std::uint64_t trial) const {
  SplitMix64 rng(seed, trial);
  const double u = rng.uniform() * cdf_.back();
  const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
  const std::size_t cell =
      std::min(static_cast<std::size_t>(it - cdf_.begin()), grid_.n - 1);
  return {cell, grid_.coord(cell)};
}

Detection sample_detection(const DensityField1D& rho, std::uint64_t seed,
                           std::uint64_t trial) {
  return DetectionSampler(rho).sample(seed, trial);
}

std::vector<std::uint64_t> detection_counts_serial(
    const DetectionSampler& sampler, std::uint64_t seed,
    std::uint64_t n_trials) {
  std::vector<std::uint64_t> counts(sampler.grid().n, 0);
  for (std::uint64_t t = 0; t < n_trials; ++t) {
    ++counts[sampler.sample(seed, t).cell];
  }
  return counts;
}

std::vector<std::uint64_t> detection_counts(const DetectionSampler& sampler,
                                            std::uint64_t seed,
                                            std::uint64_t n_trials) {
  std::vector<std::uint64_t> counts(sampler.grid().n, 0);
#pragma omp parallel
  {
    std::vector<std::uint64_t> local(counts.size(), 0);
#pragma omp for nowait
    for (long long t = 0; t < static_cast<long long>(n_trials); ++t) {
      ++local[sampler.sample(seed, static_cast<std::uint64_t>(t)).cell];
    }
#pragma omp critical
    for (std::size_t i = 0; i < local.size(); ++i) counts[i] += local[i];
  }
  return counts;
}

}  // namespace photonwave
