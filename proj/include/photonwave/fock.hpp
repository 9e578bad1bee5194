#pragma once
#include <array>
#include <cstddef>
#include <vector>

#include "photonwave/grid.hpp"

namespace photonwave {

// One second-quantized mode per (k node, helicity).
struct Mode {
  std::size_t node = 0;
  int lambda = 1;
};

// Modes with their covariant normalization factors nu_i = 1/w_cov_i, the
// discretization of (2pi)^3 omega delta(k - k'): [a_i, a_j^dag] = nu_i d_ij.
class ModeSet {
 public:
  ModeSet(GridPtr grid, std::vector<Mode> modes);

  const GridPtr& grid() const { return grid_; }
  std::size_t size() const { return modes_.size(); }
  const Mode& mode(std::size_t i) const { return modes_[i]; }
  double nu(std::size_t i) const { return nu_[i]; }

 private:
  GridPtr grid_;
  std::vector<Mode> modes_;
  std::vector<double> nu_;
};

// every node of the grid at one helicity
ModeSet full_grid_modes(GridPtr grid, int lambda);

// Occupation-number space over a ModeSet, each mode truncated at n_max.
// Coefficients live in the dimensionless b-basis (b = a/sqrt(nu)), so the
// metric is the plain l2 one and the covariant factors sit in the operators.
// Index i encodes occupations in mixed radix: n_m = (i / (n_max+1)^m) mod
// (n_max+1).
class FockSpace {
 public:
  FockSpace(ModeSet modes, int n_max);

  const ModeSet& modes() const { return modes_; }
  int n_max() const { return n_max_; }
  std::size_t dim() const { return dim_; }
  std::size_t stride(std::size_t mode) const;
  int occupation(std::size_t index, std::size_t mode) const;

 private:
  ModeSet modes_;
  int n_max_;
  std::size_t dim_;
};

struct FockVector {
  std::vector<cplx> coeff;
};

cplx inner(const FockVector& a, const FockVector& b);
double fock_norm(const FockVector& a);

// Dense row-major complex matrix.
struct OperatorMatrix {
  std::size_t dim = 0;
  std::vector<cplx> a;

  explicit OperatorMatrix(std::size_t n) : dim(n), a(n * n, cplx(0.0, 0.0)) {}
  cplx& at(std::size_t i, std::size_t j) { return a[i * dim + j]; }
  const cplx& at(std::size_t i, std::size_t j) const { return a[i * dim + j]; }
};

OperatorMatrix mul(const OperatorMatrix& x, const OperatorMatrix& y);
OperatorMatrix dagger(const OperatorMatrix& x);
FockVector apply(const OperatorMatrix& x, const FockVector& v);
cplx expectation(const OperatorMatrix& x, const FockVector& v);

// Dense matrices are refused above this dimension; use the matrix-free
// apply_* paths there, which produce identical results where both exist.
inline constexpr std::size_t kDenseDimCap = 4096;

// dimensionless ladder matrices for one mode: b_i and its dagger
OperatorMatrix lowering_matrix(const FockSpace& space, std::size_t mode);
OperatorMatrix raising_matrix(const FockSpace& space, std::size_t mode);

// matrix-free ladder application
FockVector apply_lowering(const FockSpace& space, std::size_t mode,
                          const FockVector& v);
FockVector apply_raising(const FockSpace& space, std::size_t mode,
                         const FockVector& v);

FockVector vacuum_state(const FockSpace& space);

// (a^dag)^n |0> / sqrt(n! nu^n): occupation-n basis state of one mode
FockVector n_photon_state(const FockSpace& space, std::size_t mode, int n);

// Vector potential component matrices on a truncated Fock space,
//   A_c = -i sqrt(hbar/(2 eps0)) Sum_m sqrt(w_cov_m)
//         [b_m e_c(k_m) e^{-i k x} - b_m^dag e_c*(k_m) e^{+i k x}],
// and the transverse electric field E = -dA/dt with the +-i omega factors
// applied analytically.  Hermitian by construction.
std::array<OperatorMatrix, 3> field_operator(const FockSpace& space,
                                             const SpaceTime& x);
std::array<OperatorMatrix, 3> electric_operator(const FockSpace& space,
                                                const SpaceTime& x);

// Same operators restricted to the vacuum + one-photon sector
// {|0>, b_m^dag|0>} of an arbitrarily large mode set (dimension M + 1).
// Vacuum expectations of quadratic products only route through one-photon
// intermediates, so this sector gives them exactly.
struct SingleExcitationFields {
  std::size_t dim = 0;
  std::array<OperatorMatrix, 3> A;
  std::array<OperatorMatrix, 3> E;
};
SingleExcitationFields field_operators_1x(const ModeSet& modes,
                                          const SpaceTime& x);

// <0| A(xa) . E(xe) |0> by matrix evaluation in the one-photon sector; its
// real part is odd under swapping the two points, the imaginary part even.
cplx vacuum_field_product(const ModeSet& modes, const SpaceTime& xa,
                          const SpaceTime& xe);

// <0| i (eps0/hbar) [A(x).E(x') - E(x').A(x)] |0>.  On the shared grid this
// equals Sum_i w_flat_i cos(omega_i (t-t') - k_i.(x-x')): the real part of
// the flat-measure amplitude of a point state, a bandlimited delta at equal
// times and a pair of light-cone shells in general.
double causality_commutator(const ModeSet& modes, const SpaceTime& x,
                            const SpaceTime& xprime);

// Truncated product coherent state, per mode Sum_n e^{-|a|^2/2} a^n/sqrt(n!)
// |n>.  Requires the per-mode eigenvalue residual |alpha| |c_nmax| to stay
// below 1e-10; otherwise TruncationError suggesting a sufficient n_max.
FockVector coherent_state(const FockSpace& space,
                          const std::vector<cplx>& alpha);

// Closed-form <{alpha}| A(x) |{alpha}>: the operator expansion with b, b^dag
// replaced by alpha, alpha*.  positive/negative are the two frequency
// branches; total is their (real) sum.
struct CoherentField {
  CVec3 total;
  CVec3 positive;
  CVec3 negative;
};
CoherentField coherent_field_closed_form(const ModeSet& modes,
                                         const std::vector<cplx>& alpha,
                                         const SpaceTime& x);

}  // namespace photonwave
