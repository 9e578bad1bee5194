#include "photonwave/fock.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "photonwave/polarization.hpp"

namespace photonwave {

namespace {

// hard ceiling on (n_max+1)^M so a single coefficient vector stays in memory
constexpr std::size_t kSpaceDimCap = std::size_t(1) << 22;

void require_dense(std::size_t dim) {
  if (dim > kDenseDimCap) {
    throw TruncationError("dense operator of dimension " + std::to_string(dim) +
                          " exceeds the cap " + std::to_string(kDenseDimCap) +
                          "; use the matrix-free path");
  }
}

std::array<OperatorMatrix, 3> zero3(std::size_t dim) {
  return {OperatorMatrix(dim), OperatorMatrix(dim), OperatorMatrix(dim)};
}

// Per-mode scalar x polarization coefficients of one field component set:
//   A: lower = -i C sqrt(w_cov) e_c e^{-i(w t - k.x)},        raise = conj
//   E: lower = +C sqrt(w_cov) omega e_c e^{-i(w t - k.x)},    raise = conj
// with C = sqrt(hbar / (2 eps0)).  raise = conj(lower) componentwise makes
// both operators Hermitian by construction.
struct ModeCoeff {
  std::array<cplx, 3> lower;
  std::array<cplx, 3> raise;
};

ModeCoeff field_coeff(const ModeSet& modes, std::size_t m, const SpaceTime& x,
                      bool electric) {
  const auto& grid = *modes.grid();
  const Mode& mode = modes.mode(m);
  const int node = static_cast<int>(mode.node);
  const Vec3& k = grid.kvec(node);
  const double omega = grid.omega(node);
  const double root_w = std::sqrt(grid.w_cov(node));
  const CVec3 pol = polarization_basis(k).helicity(mode.lambda);
  const cplx wave = std::exp(cplx(0.0, -(omega * x.t - dot(k, x.r))));
  const double C = std::sqrt(units.hbar / (2.0 * units.eps0));
  const cplx scale =
      electric ? cplx(C * root_w * omega) * wave : -I * (C * root_w) * wave;
  ModeCoeff out;
  out.lower = {scale * pol.x, scale * pol.y, scale * pol.z};
  for (int c = 0; c < 3; ++c) out.raise[c] = std::conj(out.lower[c]);
  return out;
}

std::array<OperatorMatrix, 3> build_fields(const FockSpace& space,
                                           const SpaceTime& x, bool electric) {
  require_dense(space.dim());
  const ModeSet& modes = space.modes();
  std::array<OperatorMatrix, 3> out = zero3(space.dim());
  for (std::size_t m = 0; m < modes.size(); ++m) {
    const ModeCoeff coeff = field_coeff(modes, m, x, electric);
    const std::size_t s = space.stride(m);
    for (std::size_t idx = 0; idx < space.dim(); ++idx) {
      const int n = space.occupation(idx, m);
      if (n >= 1) {
        const double root_n = std::sqrt(static_cast<double>(n));
        for (int c = 0; c < 3; ++c)
          out[c].at(idx - s, idx) += coeff.lower[c] * root_n;
      }
      if (n < space.n_max()) {
        const double root_n1 = std::sqrt(static_cast<double>(n + 1));
        for (int c = 0; c < 3; ++c)
          out[c].at(idx + s, idx) += coeff.raise[c] * root_n1;
      }
    }
  }
  return out;
}

}  // namespace

ModeSet::ModeSet(GridPtr grid, std::vector<Mode> modes)
    : grid_(std::move(grid)), modes_(std::move(modes)) {
  if (!grid_) throw ConfigError("ModeSet: grid must not be null");
  if (modes_.empty()) throw ConfigError("ModeSet: mode list must not be empty");
  const std::size_t n_nodes = static_cast<std::size_t>(grid_->size());
  std::vector<std::size_t> keys;
  keys.reserve(modes_.size());
  nu_.reserve(modes_.size());
  for (const Mode& m : modes_) {
    if (m.node >= n_nodes)
      throw ConfigError("ModeSet: node " + std::to_string(m.node) +
                        " is outside the grid");
    if (m.lambda != 1 && m.lambda != -1)
      throw ConfigError("ModeSet: helicity must be +1 or -1");
    keys.push_back(2 * m.node + (m.lambda == 1 ? 1 : 0));
    nu_.push_back(1.0 / grid_->w_cov(static_cast<int>(m.node)));
  }
  std::sort(keys.begin(), keys.end());
  if (std::adjacent_find(keys.begin(), keys.end()) != keys.end())
    throw ConfigError("ModeSet: duplicate (node, helicity) mode");
}

ModeSet full_grid_modes(GridPtr grid, int lambda) {
  if (!grid) throw ConfigError("full_grid_modes: grid must not be null");
  std::vector<Mode> modes;
  modes.reserve(static_cast<std::size_t>(grid->size()));
  for (int i = 0; i < grid->size(); ++i)
    modes.push_back({static_cast<std::size_t>(i), lambda});
  return ModeSet(std::move(grid), std::move(modes));
}

FockSpace::FockSpace(ModeSet modes, int n_max)
    : modes_(std::move(modes)), n_max_(n_max) {
  if (n_max_ < 1) throw ConfigError("FockSpace: n_max must be at least 1");
  const std::size_t radix = static_cast<std::size_t>(n_max_) + 1;
  dim_ = 1;
  for (std::size_t m = 0; m < modes_.size(); ++m) {
    if (dim_ > kSpaceDimCap / radix)
      throw ConfigError("FockSpace: dimension (n_max+1)^modes exceeds " +
                        std::to_string(kSpaceDimCap) +
                        "; reduce the mode count or n_max");
    dim_ *= radix;
  }
}

std::size_t FockSpace::stride(std::size_t mode) const {
  if (mode >= modes_.size())
    throw ConfigError("FockSpace: mode index out of range");
  const std::size_t radix = static_cast<std::size_t>(n_max_) + 1;
  std::size_t s = 1;
  for (std::size_t m = 0; m < mode; ++m) s *= radix;
  return s;
}

int FockSpace::occupation(std::size_t index, std::size_t mode) const {
  if (index >= dim_) throw ConfigError("FockSpace: state index out of range");
  const std::size_t radix = static_cast<std::size_t>(n_max_) + 1;
  return static_cast<int>((index / stride(mode)) % radix);
}

cplx inner(const FockVector& a, const FockVector& b) {
  if (a.coeff.size() != b.coeff.size())
    throw ConfigError("inner: dimension mismatch");
  cplx acc(0.0, 0.0);
  for (std::size_t i = 0; i < a.coeff.size(); ++i)
    acc += std::conj(a.coeff[i]) * b.coeff[i];
  return acc;
}

double fock_norm(const FockVector& a) {
  double acc = 0.0;
  for (const cplx& c : a.coeff) acc += std::norm(c);
  return std::sqrt(acc);
}

OperatorMatrix mul(const OperatorMatrix& x, const OperatorMatrix& y) {
  if (x.dim != y.dim) throw ConfigError("mul: dimension mismatch");
  OperatorMatrix out(x.dim);
  for (std::size_t i = 0; i < x.dim; ++i) {
    for (std::size_t k = 0; k < x.dim; ++k) {
      const cplx xik = x.at(i, k);
      if (xik == cplx(0.0, 0.0)) continue;
      for (std::size_t j = 0; j < x.dim; ++j) out.at(i, j) += xik * y.at(k, j);
    }
  }
  return out;
}

OperatorMatrix dagger(const OperatorMatrix& x) {
  OperatorMatrix out(x.dim);
  for (std::size_t i = 0; i < x.dim; ++i)
    for (std::size_t j = 0; j < x.dim; ++j)
      out.at(i, j) = std::conj(x.at(j, i));
  return out;
}

FockVector apply(const OperatorMatrix& x, const FockVector& v) {
  if (v.coeff.size() != x.dim) throw ConfigError("apply: dimension mismatch");
  FockVector out;
  out.coeff.assign(x.dim, cplx(0.0, 0.0));
  for (std::size_t i = 0; i < x.dim; ++i) {
    cplx acc(0.0, 0.0);
    for (std::size_t j = 0; j < x.dim; ++j) acc += x.at(i, j) * v.coeff[j];
    out.coeff[i] = acc;
  }
  return out;
}

cplx expectation(const OperatorMatrix& x, const FockVector& v) {
  return inner(v, apply(x, v));
}

OperatorMatrix lowering_matrix(const FockSpace& space, std::size_t mode) {
  require_dense(space.dim());
  const std::size_t s = space.stride(mode);
  OperatorMatrix out(space.dim());
  for (std::size_t idx = 0; idx < space.dim(); ++idx) {
    const int n = space.occupation(idx, mode);
    if (n >= 1) out.at(idx - s, idx) = std::sqrt(static_cast<double>(n));
  }
  return out;
}

OperatorMatrix raising_matrix(const FockSpace& space, std::size_t mode) {
  require_dense(space.dim());
  const std::size_t s = space.stride(mode);
  OperatorMatrix out(space.dim());
  for (std::size_t idx = 0; idx < space.dim(); ++idx) {
    const int n = space.occupation(idx, mode);
    if (n < space.n_max())
      out.at(idx + s, idx) = std::sqrt(static_cast<double>(n + 1));
  }
  return out;
}

FockVector apply_lowering(const FockSpace& space, std::size_t mode,
                          const FockVector& v) {
  if (v.coeff.size() != space.dim())
    throw ConfigError("apply_lowering: dimension mismatch");
  const std::size_t s = space.stride(mode);
  FockVector out;
  out.coeff.assign(space.dim(), cplx(0.0, 0.0));
  for (std::size_t idx = 0; idx < space.dim(); ++idx) {
    const int n = space.occupation(idx, mode);
    if (n >= 1)
      out.coeff[idx - s] += std::sqrt(static_cast<double>(n)) * v.coeff[idx];
  }
  return out;
}

FockVector apply_raising(const FockSpace& space, std::size_t mode,
                         const FockVector& v) {
  if (v.coeff.size() != space.dim())
    throw ConfigError("apply_raising: dimension mismatch");
  const std::size_t s = space.stride(mode);
  FockVector out;
  out.coeff.assign(space.dim(), cplx(0.0, 0.0));
  for (std::size_t idx = 0; idx < space.dim(); ++idx) {
    const int n = space.occupation(idx, mode);
    if (n < space.n_max())
      out.coeff[idx + s] +=
          std::sqrt(static_cast<double>(n + 1)) * v.coeff[idx];
  }
  return out;
}

FockVector vacuum_state(const FockSpace& space) {
  FockVector out;
  out.coeff.assign(space.dim(), cplx(0.0, 0.0));
  out.coeff[0] = cplx(1.0, 0.0);
  return out;
}

FockVector n_photon_state(const FockSpace& space, std::size_t mode, int n) {
  const std::size_t s = space.stride(mode);
  if (n < 0 || n > space.n_max())
    throw ConfigError("n_photon_state: occupation outside [0, n_max]");
  FockVector out;
  out.coeff.assign(space.dim(), cplx(0.0, 0.0));
  out.coeff[static_cast<std::size_t>(n) * s] = cplx(1.0, 0.0);
  return out;
}

std::array<OperatorMatrix, 3> field_operator(const FockSpace& space,
                                             const SpaceTime& x) {
  return build_fields(space, x, false);
}

std::array<OperatorMatrix, 3> electric_operator(const FockSpace& space,
                                                const SpaceTime& x) {
  return build_fields(space, x, true);
}

SingleExcitationFields field_operators_1x(const ModeSet& modes,
                                          const SpaceTime& x) {
  const std::size_t dim = modes.size() + 1;
  require_dense(dim);
  SingleExcitationFields out{dim, zero3(dim), zero3(dim)};
  for (std::size_t m = 0; m < modes.size(); ++m) {
    const ModeCoeff a = field_coeff(modes, m, x, false);
    const ModeCoeff e = field_coeff(modes, m, x, true);
    for (int c = 0; c < 3; ++c) {
      out.A[c].at(0, 1 + m) = a.lower[c];
      out.A[c].at(1 + m, 0) = a.raise[c];
      out.E[c].at(0, 1 + m) = e.lower[c];
      out.E[c].at(1 + m, 0) = e.raise[c];
    }
  }
  return out;
}

cplx vacuum_field_product(const ModeSet& modes, const SpaceTime& xa,
                          const SpaceTime& xe) {
  const SingleExcitationFields fa = field_operators_1x(modes, xa);
  const SingleExcitationFields fe = field_operators_1x(modes, xe);
  cplx acc(0.0, 0.0);
  for (int c = 0; c < 3; ++c) acc += mul(fa.A[c], fe.E[c]).at(0, 0);
  return acc;
}

double causality_commutator(const ModeSet& modes, const SpaceTime& x,
                            const SpaceTime& xprime) {
  const SingleExcitationFields fx = field_operators_1x(modes, x);
  const SingleExcitationFields fp = field_operators_1x(modes, xprime);
  cplx acc(0.0, 0.0);
  for (int c = 0; c < 3; ++c)
    acc += mul(fx.A[c], fp.E[c]).at(0, 0) - mul(fp.E[c], fx.A[c]).at(0, 0);
  const cplx out = I * (units.eps0 / units.hbar) * acc;
  return out.real();
}

FockVector coherent_state(const FockSpace& space,
                          const std::vector<cplx>& alpha) {
  const ModeSet& modes = space.modes();
  if (alpha.size() != modes.size())
    throw ConfigError("coherent_state: need one amplitude per mode");
  const int n_max = space.n_max();
  const double log_tol = std::log(1e-10);
  std::vector<std::vector<cplx>> table(modes.size());
  for (std::size_t m = 0; m < modes.size(); ++m) {
    std::vector<cplx>& c = table[m];
    c.assign(static_cast<std::size_t>(n_max) + 1, cplx(0.0, 0.0));
    const double mag = std::abs(alpha[m]);
    if (mag == 0.0) {
      c[0] = cplx(1.0, 0.0);
      continue;
    }
    const double lmag = std::log(mag);
    const double phase = std::arg(alpha[m]);
    // log |c_n| with c_n = e^{-|a|^2/2} a^n / sqrt(n!), stable for any |a|
    auto log_c = [=](int n) {
      return -0.5 * mag * mag + n * lmag -
             0.5 * std::lgamma(static_cast<double>(n) + 1.0);
    };
    if (lmag + log_c(n_max) >= log_tol) {
      int need = n_max + 1;
      while (need < 1000000 && lmag + log_c(need) >= log_tol) ++need;
      throw TruncationError(
          "coherent_state: amplitude of magnitude " + std::to_string(mag) +
          " leaves an eigenvalue residual above 1e-10 at n_max = " +
          std::to_string(n_max) + "; use n_max >= " + std::to_string(need));
    }
    for (int n = 0; n <= n_max; ++n)
      c[static_cast<std::size_t>(n)] =
          std::polar(std::exp(log_c(n)), phase * n);
  }
  FockVector out;
  out.coeff.assign(space.dim(), cplx(0.0, 0.0));
  for (std::size_t idx = 0; idx < space.dim(); ++idx) {
    cplx prod(1.0, 0.0);
    for (std::size_t m = 0; m < modes.size(); ++m)
      prod *= table[m][static_cast<std::size_t>(space.occupation(idx, m))];
    out.coeff[idx] = prod;
  }
  return out;
}

CoherentField coherent_field_closed_form(const ModeSet& modes,
                                         const std::vector<cplx>& alpha,
                                         const SpaceTime& x) {
  if (alpha.size() != modes.size())
    throw ConfigError(
        "coherent_field_closed_form: need one amplitude per mode");
  CoherentField out;
  for (std::size_t m = 0; m < modes.size(); ++m) {
    const ModeCoeff coeff = field_coeff(modes, m, x, false);
    const cplx a = alpha[m];
    const cplx ac = std::conj(a);
    out.positive = out.positive + CVec3(coeff.lower[0] * a, coeff.lower[1] * a,
                                        coeff.lower[2] * a);
    out.negative = out.negative + CVec3(coeff.raise[0] * ac,
                                        coeff.raise[1] * ac,
                                        coeff.raise[2] * ac);
  }
  out.total = out.positive + out.negative;
  return out;
}

}  // namespace photonwave
