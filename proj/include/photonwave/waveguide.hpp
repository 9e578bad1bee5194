#pragma once
#include <cstddef>
#include <utility>
#include <vector>

#include "photonwave/common.hpp"

namespace photonwave {

// Uniform 1D sample grid shared by both characteristic envelopes.
struct CharacteristicGrid {
  double x_min = 0.0;
  double dx = 0.0;
  std::size_t n = 0;

  double coord(std::size_t i) const {
    return x_min + dx * static_cast<double>(i);
  }
  bool operator==(const CharacteristicGrid&) const = default;
};

// Single photon in a 1D waveguide, stored as sampled envelopes of the
// characteristics u = x - ct (right mover) and v = x + ct (left mover).
// Free evolution never deforms the envelopes; it only slides them, so
// propagation is an exact index shift.  Each branch carries one helicity.
struct Waveguide1DState {
  CharacteristicGrid grid;
  std::vector<cplx> right;
  std::vector<cplx> left;
  int helicity_right = 1;
  int helicity_left = 1;
};

enum class Direction { right, left };

// dx * Sum (|f_right|^2 + |f_left|^2)
double waveguide_norm2(const Waveguide1DState& s);

// (right, left) branch weights as fractions of the total norm
std::pair<double, double> branch_probabilities(const Waveguide1DState& s);

Waveguide1DState normalized_1d(const Waveguide1DState& s);

// Normalized Gaussian pulse on one branch: envelope exp(-(s - center)^2 /
// (4 sigma^2)) with carrier e^{i k0 s} on the right branch or e^{-i k0 s} on
// the left, so both move with positive frequency.
Waveguide1DState gaussian_pulse_1d(const CharacteristicGrid& g, Direction d,
                                   double center, double sigma, double k0,
                                   int helicity);

// Branchwise ca * s1 + cb * s2; grids and branch helicities must match.
Waveguide1DState superpose(const Waveguide1DState& s1,
                           const Waveguide1DState& s2, cplx ca, cplx cb);

// Slide the right envelope by +ct and the left by -ct.  c t must land on a
// whole number of grid steps; samples pushed past the window are dropped
// (logged when the lost weight is significant).
Waveguide1DState propagate(const Waveguide1DState& s, double t);

// 50/50 splitter at the origin: a normalized pure right mover becomes
// (1/sqrt 2)[f(x - ct) + f(x + ct)] with the same helicity on both branches.
// Branch probabilities are exactly (1/2, 1/2) because the two envelopes are
// copies.  The zero state passes through unchanged.
Waveguide1DState beam_split(const Waveguide1DState& s);

// Adjoint of beam_split: right' = (f_right + f_left)/sqrt 2, left' =
// (f_right - f_left)/sqrt 2, so split followed by recombine restores the
// input pulse and empties the left port.
Waveguide1DState recombine(const Waveguide1DState& s);

// Nonnegative samples on the grid; total is the dx-weighted sum.
struct DensityField1D {
  CharacteristicGrid grid;
  std::vector<double> values;
  double total = 0.0;
};

// |f_right + f_left|^2 when both branches share a helicity, |f_right|^2 +
// |f_left|^2 when the helicities are orthogonal.
DensityField1D position_density(const Waveguide1DState& s);

// Two-beam intensity law on the same envelopes: I1 + I2 +
// 2 sqrt(I1 I2) cos(phi1 - phi2) for a shared helicity, I1 + I2 otherwise.
// Independent of position_density's complex-sum path; the two agree to
// rounding, which is the point of keeping both.
std::vector<double> classical_intensity(const Waveguide1DState& s);

struct FringeResult {
  DensityField1D density;
  double visibility = 0.0;
  // mean spacing of refined interference maxima; 0 when none are resolved
  double period = 0.0;
};

// Interference pattern of the two branches.  Visibility is the contrast
// between the refined global maximum and the smaller neighbouring minimum;
// the period averages the spacing of maxima in the upper half of the
// envelope.  Branches that do not overlap give visibility 0 and a log note.
FringeResult fringe_pattern(const Waveguide1DState& s);

}  // namespace photonwave
