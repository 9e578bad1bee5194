#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <string>

#include "photonwave/fock.hpp"
#include "photonwave/kstate.hpp"
#include "photonwave/propagator.hpp"

using namespace photonwave;
using doctest::Approx;

namespace {

GridPtr small_grid() { return make_grid(GridSpec{8, 4, 4, 0.05, 12.0}); }

ModeSet three_modes(GridPtr g) {
  return ModeSet(std::move(g), {{0, 1}, {5, -1}, {17, 1}});
}

OperatorMatrix sub(OperatorMatrix x, const OperatorMatrix& y) {
  REQUIRE(x.dim == y.dim);
  for (std::size_t i = 0; i < x.a.size(); ++i) x.a[i] -= y.a[i];
  return x;
}

OperatorMatrix commutator(const OperatorMatrix& x, const OperatorMatrix& y) {
  return sub(mul(x, y), mul(y, x));
}

double max_abs(const OperatorMatrix& x) {
  double m = 0.0;
  for (const cplx& v : x.a) m = std::max(m, std::abs(v));
  return m;
}

// direct quadrature of the flat-measure cosine transform between two events
double flat_cos_sum(const QuadratureGrid& g, const SpaceTime& a,
                    const SpaceTime& b) {
  double acc = 0.0;
  for (int i = 0; i < g.size(); ++i) {
    const double phi = g.omega(i) * (a.t - b.t) - dot(g.kvec(i), a.r - b.r);
    acc += g.w_flat(i) * std::cos(phi);
  }
  return acc;
}

double total_flat_weight(const QuadratureGrid& g) {
  double acc = 0.0;
  for (int i = 0; i < g.size(); ++i) acc += g.w_flat(i);
  return acc;
}

double eigen_residual(const FockSpace& space, std::size_t mode,
                      const FockVector& v, cplx alpha) {
  const FockVector lowered = apply_lowering(space, mode, v);
  double acc = 0.0;
  for (std::size_t i = 0; i < v.coeff.size(); ++i)
    acc += std::norm(lowered.coeff[i] - alpha * v.coeff[i]);
  return std::sqrt(acc);
}

cplx ladder_expectation(const FockSpace& space, std::size_t mode,
                        const FockVector& v) {
  return inner(v, apply_lowering(space, mode, v));
}

SpaceTime random_event(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> ut(-1.0, 1.0);
  std::uniform_real_distribution<double> ur(-2.0, 2.0);
  return {ut(rng), {ur(rng), ur(rng), ur(rng)}};
}

// <0| i (eps0/hbar) [A(x).E(x') - E(x').A(x)] |0> from dense full-space
// matrices, as an independent cross-check of the one-photon-sector path
double full_rep_commutator(const FockSpace& space, const SpaceTime& x,
                           const SpaceTime& xprime) {
  const auto A = field_operator(space, x);
  const auto E = electric_operator(space, xprime);
  const FockVector vac = vacuum_state(space);
  cplx acc(0.0, 0.0);
  for (int c = 0; c < 3; ++c)
    acc += expectation(mul(A[c], E[c]), vac) -
           expectation(mul(E[c], A[c]), vac);
  return (I * (units.eps0 / units.hbar) * acc).real();
}

}  // namespace

TEST_CASE("mode sets validate their inputs and expose covariant weights") {
  auto g = small_grid();
  const ModeSet ms = three_modes(g);
  CHECK(ms.size() == 3);
  CHECK(ms.mode(1).node == 5);
  CHECK(ms.mode(1).lambda == -1);
  for (std::size_t i = 0; i < ms.size(); ++i) {
    const double w = g->w_cov(static_cast<int>(ms.mode(i).node));
    CHECK(ms.nu(i) * w == Approx(1.0).epsilon(1e-14));
  }

  const ModeSet full = full_grid_modes(g, 1);
  CHECK(full.size() == static_cast<std::size_t>(g->size()));
  CHECK(full.mode(17).node == 17);

  CHECK_THROWS_AS((void)ModeSet(nullptr, {{0, 1}}), ConfigError);
  CHECK_THROWS_AS((void)ModeSet(g, {}), ConfigError);
  CHECK_THROWS_AS((void)ModeSet(g, {{std::size_t(g->size()), 1}}),
                  ConfigError);
  CHECK_THROWS_AS((void)ModeSet(g, {{0, 0}}), ConfigError);
  CHECK_THROWS_AS((void)ModeSet(g, {{3, 1}, {4, 1}, {3, 1}}), ConfigError);
  CHECK_THROWS_AS((void)full_grid_modes(nullptr, 1), ConfigError);
}

TEST_CASE("occupation indexing is mixed radix little endian") {
  const FockSpace space(three_modes(small_grid()), 3);
  CHECK(space.dim() == 64);
  CHECK(space.stride(0) == 1);
  CHECK(space.stride(1) == 4);
  CHECK(space.stride(2) == 16);
  for (std::size_t idx = 0; idx < space.dim(); ++idx) {
    std::size_t rebuilt = 0;
    for (std::size_t m = 0; m < 3; ++m) {
      const int n = space.occupation(idx, m);
      CHECK(n >= 0);
      CHECK(n <= 3);
      rebuilt += static_cast<std::size_t>(n) * space.stride(m);
    }
    CHECK(rebuilt == idx);
  }
  CHECK_THROWS_AS(space.stride(3), ConfigError);
  CHECK_THROWS_AS(space.occupation(64, 0), ConfigError);
  CHECK_THROWS_AS((void)FockSpace(three_modes(small_grid()), 0), ConfigError);
  // (n_max+1)^128 cannot be represented; the constructor must refuse it
  CHECK_THROWS_AS((void)FockSpace(full_grid_modes(small_grid(), 1), 2),
                  ConfigError);
}

TEST_CASE("ladder matrices and matrix-free application agree") {
  const FockSpace space(three_modes(small_grid()), 3);
  std::mt19937_64 rng(91);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  FockVector v;
  v.coeff.resize(space.dim());
  for (auto& c : v.coeff) c = cplx(u(rng), u(rng));

  for (std::size_t m = 0; m < 3; ++m) {
    const OperatorMatrix L = lowering_matrix(space, m);
    const OperatorMatrix R = raising_matrix(space, m);
    CHECK(max_abs(sub(dagger(L), R)) == 0.0);

    const FockVector dl = apply(L, v);
    const FockVector ml = apply_lowering(space, m, v);
    const FockVector dr = apply(R, v);
    const FockVector mr = apply_raising(space, m, v);
    double worst = 0.0;
    for (std::size_t i = 0; i < space.dim(); ++i) {
      worst = std::max(worst, std::abs(dl.coeff[i] - ml.coeff[i]));
      worst = std::max(worst, std::abs(dr.coeff[i] - mr.coeff[i]));
    }
    CHECK(worst == 0.0);
  }

  // above the dense cap only the matrix-free path exists
  auto g = small_grid();
  const FockSpace big(ModeSet(g, {{0, 1}, {1, 1}, {2, 1}, {3, 1}}), 9);
  CHECK(big.dim() == 10000);
  CHECK_THROWS_AS((void)lowering_matrix(big, 0), TruncationError);
  CHECK_THROWS_AS((void)field_operator(big, SpaceTime{}), TruncationError);
  const FockVector one = n_photon_state(big, 2, 1);
  const FockVector down = apply_lowering(big, 2, one);
  CHECK(std::abs(inner(vacuum_state(big), down) - cplx(1.0, 0.0)) == 0.0);
}

TEST_CASE("canonical commutators hold below the truncation boundary") {
  const FockSpace space(three_modes(small_grid()), 4);
  std::vector<OperatorMatrix> L, R;
  for (std::size_t m = 0; m < 3; ++m) {
    L.push_back(lowering_matrix(space, m));
    R.push_back(raising_matrix(space, m));
  }

  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      if (i != j) {
        CHECK(max_abs(commutator(L[i], L[j])) == 0.0);
        CHECK(max_abs(commutator(L[i], R[j])) == 0.0);
      }
    }
  }

  for (std::size_t m = 0; m < 3; ++m) {
    const OperatorMatrix C = commutator(L[m], R[m]);
    double off = 0.0;
    double worst = 0.0;
    for (std::size_t i = 0; i < space.dim(); ++i) {
      for (std::size_t j = 0; j < space.dim(); ++j) {
        if (i != j) off = std::max(off, std::abs(C.at(i, j)));
      }
      const int n = space.occupation(i, m);
      if (n < space.n_max()) {
        worst = std::max(worst, std::abs(C.at(i, i) - cplx(1.0, 0.0)));
      } else {
        // top of the ladder: b b^dag is cut off, leaving -n_max
        CHECK(C.at(i, i).real() == Approx(-4.0).epsilon(1e-14));
      }
    }
    CHECK(off == 0.0);
    CHECK(worst < 1e-13);
  }

  // covariant ladder a = sqrt(nu) b scales the commutator to nu
  const ModeSet& ms = space.modes();
  const double root_nu = std::sqrt(ms.nu(0));
  OperatorMatrix aL = L[0], aR = R[0];
  for (auto& v : aL.a) v *= root_nu;
  for (auto& v : aR.a) v *= root_nu;
  const OperatorMatrix Ca = commutator(aL, aR);
  for (std::size_t i = 0; i < space.dim(); ++i) {
    if (space.occupation(i, 0) < space.n_max())
      CHECK(std::abs(Ca.at(i, i) / ms.nu(0) - cplx(1.0, 0.0)) < 1e-13);
  }
}

TEST_CASE("number states are orthonormal with the right occupation") {
  auto g = small_grid();
  const FockSpace space(ModeSet(g, {{2, 1}, {9, -1}}), 4);
  for (int n = 0; n <= 4; ++n) {
    const FockVector s = n_photon_state(space, 0, n);
    CHECK(fock_norm(s) == 1.0);
    const FockVector lowered = apply_lowering(space, 0, s);
    double occ = 0.0;
    for (const cplx& c : lowered.coeff) occ += std::norm(c);
    CHECK(occ == Approx(static_cast<double>(n)).epsilon(1e-14));
    // the other mode stays empty
    const FockVector other = apply_lowering(space, 1, s);
    CHECK(fock_norm(other) == 0.0);
    for (int m = 0; m < n; ++m) {
      const cplx overlap = inner(n_photon_state(space, 0, m), s);
      CHECK(std::abs(overlap) == 0.0);
    }
  }
  CHECK_THROWS_AS((void)n_photon_state(space, 0, 5), ConfigError);
  CHECK_THROWS_AS((void)n_photon_state(space, 0, -1), ConfigError);
  CHECK_THROWS_AS((void)n_photon_state(space, 2, 1), ConfigError);
}

TEST_CASE("field operators are Hermitian with vanishing vacuum mean") {
  auto g = small_grid();
  const ModeSet ms(g, {{4, 1}, {40, -1}});
  const FockSpace space(ms, 2);
  const SpaceTime x{0.3, {0.1, -0.2, 0.45}};
  const auto A = field_operator(space, x);
  const auto E = electric_operator(space, x);
  const FockVector vac = vacuum_state(space);

  for (int c = 0; c < 3; ++c) {
    CHECK(max_abs(sub(dagger(A[c]), A[c])) == 0.0);
    CHECK(max_abs(sub(dagger(E[c]), E[c])) == 0.0);
    CHECK(std::abs(expectation(A[c], vac)) == 0.0);
    CHECK(std::abs(expectation(E[c], vac)) == 0.0);
  }

  // <1_m| A |0> recovers the mode coupling sqrt(hbar w_cov / (2 eps0))
  for (std::size_t m = 0; m < ms.size(); ++m) {
    const FockVector one = n_photon_state(space, m, 1);
    double strength = 0.0;
    for (int c = 0; c < 3; ++c)
      strength += std::norm(inner(one, apply(A[c], vac)));
    const double w = g->w_cov(static_cast<int>(ms.mode(m).node));
    CHECK(strength ==
          Approx(0.5 * units.hbar / units.eps0 * w).epsilon(1e-12));
  }

  // E = -dA/dt, checked with a central difference in the time argument
  const double h = 1e-4;
  const auto Ap = field_operator(space, SpaceTime{x.t + h, x.r});
  const auto Am = field_operator(space, SpaceTime{x.t - h, x.r});
  for (int c = 0; c < 3; ++c) {
    OperatorMatrix diff = sub(Am[c], Ap[c]);
    for (auto& v : diff.a) v /= 2.0 * h;
    CHECK(max_abs(sub(diff, E[c])) < 1e-5 * max_abs(E[c]));
  }
}

TEST_CASE("single excitation sector reproduces the full representation") {
  auto g = small_grid();
  const ModeSet ms = three_modes(g);
  const FockSpace space(ms, 2);
  std::mt19937_64 rng(7);
  for (int rep = 0; rep < 4; ++rep) {
    const SpaceTime x = random_event(rng);
    const SpaceTime xp = random_event(rng);
    const double full = full_rep_commutator(space, x, xp);
    const double sector = causality_commutator(ms, x, xp);
    CHECK(std::abs(full - sector) < 1e-14 * (1.0 + std::abs(full)));

    const auto A = field_operator(space, x);
    const auto E = electric_operator(space, xp);
    const FockVector vac = vacuum_state(space);
    cplx prod(0.0, 0.0);
    for (int c = 0; c < 3; ++c) prod += expectation(mul(A[c], E[c]), vac);
    const cplx sector_prod = vacuum_field_product(ms, x, xp);
    CHECK(std::abs(prod - sector_prod) < 1e-14 * (1.0 + std::abs(prod)));
  }
}

TEST_CASE("vacuum commutator equals the flat measure point amplitude") {
  auto g = small_grid();
  const ModeSet ms = full_grid_modes(g, 1);

  SUBCASE("equal times give the bandlimited delta") {
    const SpaceTime x{0.37, {0.2, -0.4, 0.1}};
    const SpaceTime same{0.37, {0.2, -0.4, 0.1}};
    CHECK(causality_commutator(ms, x, same) ==
          Approx(total_flat_weight(*g)).epsilon(1e-12));
    const SpaceTime shifted{0.37, {0.9, 0.1, -0.3}};
    const double direct = flat_cos_sum(*g, x, shifted);
    CHECK(std::abs(causality_commutator(ms, x, shifted) - direct) < 1e-10);
  }

  SUBCASE("general separations match the point state amplitude") {
    std::mt19937_64 rng(2718);
    for (int rep = 0; rep < 20; ++rep) {
      const SpaceTime x = random_event(rng);
      const SpaceTime xp = random_event(rng);
      const KSpaceState point =
          position_eigenstate(g, xp.r, 1, -1, 0.0, xp.t);
      const double ref = born_amplitude(point, 1, x.r, x.t).real();
      CHECK(std::abs(causality_commutator(ms, x, xp) - ref) < 1e-10);
    }
  }

  SUBCASE("both helicity sheets carry the same commutator") {
    const ModeSet minus = full_grid_modes(g, -1);
    std::mt19937_64 rng(31);
    const SpaceTime x = random_event(rng);
    const SpaceTime xp = random_event(rng);
    CHECK(std::abs(causality_commutator(ms, x, xp) -
                   causality_commutator(minus, x, xp)) < 1e-12);
  }

  SUBCASE("field product parity under swapping the points") {
    std::mt19937_64 rng(57);
    const SpaceTime x = random_event(rng);
    const SpaceTime xp = random_event(rng);
    const cplx fwd = vacuum_field_product(ms, x, xp);
    const cplx rev = vacuum_field_product(ms, xp, x);
    CHECK(std::abs(fwd.real() + rev.real()) < 1e-12);
    CHECK(std::abs(fwd.imag() - rev.imag()) < 1e-12);
    // coincident events: the real (odd) part must vanish
    const cplx same = vacuum_field_product(ms, x, x);
    CHECK(std::abs(same.real()) < 1e-14);
    CHECK(same.imag() == Approx(-0.5 * total_flat_weight(*g)).epsilon(1e-12));
  }
}

TEST_CASE("commutator residual does not grow with the cutoff") {
  auto g = small_grid();
  const ModeSet ms = three_modes(g);
  const SpaceTime x{0.25, {0.3, 0.0, -0.6}};
  const SpaceTime xp{-0.1, {0.0, 0.5, 0.2}};

  // a subset of modes reproduces exactly its own share of the quadrature
  double subset = 0.0;
  for (std::size_t m = 0; m < ms.size(); ++m) {
    const int node = static_cast<int>(ms.mode(m).node);
    const double phi =
        g->omega(node) * (x.t - xp.t) - dot(g->kvec(node), x.r - xp.r);
    subset += g->w_flat(node) * std::cos(phi);
  }
  CHECK(std::abs(causality_commutator(ms, x, xp) - subset) < 1e-13);

  // raising n_max cannot move the vacuum value away from the reference
  const KSpaceState point = position_eigenstate(g, xp.r, 1, -1, 0.0, xp.t);
  const double ref = born_amplitude(point, 1, x.r, x.t).real();
  double prev = -1.0;
  for (int n_max = 1; n_max <= 4; ++n_max) {
    const FockSpace space(ms, n_max);
    const double res = std::abs(full_rep_commutator(space, x, xp) - ref);
    if (n_max > 1) CHECK(res <= prev + 1e-15);
    prev = res;
  }
}

TEST_CASE("coherent states satisfy the eigenvalue property within truncation") {
  auto g = small_grid();
  const ModeSet one_mode(g, {{11, 1}});

  SUBCASE("zero amplitude is the vacuum") {
    const FockSpace space(one_mode, 4);
    const FockVector s = coherent_state(space, {cplx(0.0, 0.0)});
    const FockVector vac = vacuum_state(space);
    for (std::size_t i = 0; i < space.dim(); ++i)
      CHECK(s.coeff[i] == vac.coeff[i]);
  }

  SUBCASE("approximate lowering eigenstate at alpha = 2") {
    const FockSpace space(one_mode, 40);
    const cplx alpha(2.0, 0.0);
    const FockVector s = coherent_state(space, {alpha});
    CHECK(fock_norm(s) == Approx(1.0).epsilon(1e-12));
    CHECK(eigen_residual(space, 0, s, alpha) < 1e-10);
    const FockVector lowered = apply_lowering(space, 0, s);
    double mean_n = 0.0;
    for (const cplx& c : lowered.coeff) mean_n += std::norm(c);
    CHECK(mean_n == Approx(4.0).epsilon(1e-10));
  }

  SUBCASE("complex phase carries through") {
    const FockSpace space(one_mode, 40);
    const cplx alpha = std::polar(2.0, 1.0471975511965976);
    const FockVector s = coherent_state(space, {alpha});
    CHECK(eigen_residual(space, 0, s, alpha) < 1e-10);
    CHECK(std::abs(ladder_expectation(space, 0, s) - alpha) < 1e-10);
  }

  SUBCASE("insufficient cutoff is refused with a usable suggestion") {
    const FockSpace space(one_mode, 8);
    try {
      (void)coherent_state(space, {cplx(2.0, 0.0)});
      FAIL("expected TruncationError");
    } catch (const TruncationError& e) {
      const std::string msg = e.what();
      const auto pos = msg.find("use n_max >= ");
      REQUIRE(pos != std::string::npos);
      const int need = std::stoi(msg.substr(pos + 13));
      CHECK(need > 8);
      const FockSpace enough(one_mode, need);
      CHECK_NOTHROW((void)coherent_state(enough, {cplx(2.0, 0.0)}));
    }
  }

  SUBCASE("two mode product state") {
    const ModeSet pair(g, {{11, 1}, {30, -1}});
    const FockSpace space(pair, 20);
    const std::vector<cplx> alpha{cplx(0.8, 0.0), cplx(0.0, -0.5)};
    const FockVector s = coherent_state(space, alpha);
    CHECK(fock_norm(s) == Approx(1.0).epsilon(1e-12));
    for (std::size_t m = 0; m < 2; ++m) {
      CHECK(eigen_residual(space, m, s, alpha[m]) < 1e-10);
      CHECK(std::abs(ladder_expectation(space, m, s) - alpha[m]) < 1e-12);
    }
    CHECK_THROWS_AS((void)coherent_state(space, {cplx(0.8, 0.0)}),
                    ConfigError);
  }
}

TEST_CASE("coherent field expectation matches the closed form") {
  auto g = small_grid();
  const SpaceTime x{0.2, {0.5, -1.0, 0.25}};

  SUBCASE("one mode, dense operator path") {
    const ModeSet ms(g, {{23, 1}});
    const FockSpace space(ms, 40);
    const std::vector<cplx> alpha{cplx(1.2, -0.3)};
    const FockVector s = coherent_state(space, alpha);
    const auto A = field_operator(space, x);
    const CoherentField closed = coherent_field_closed_form(ms, alpha, x);
    const cplx expect[3] = {expectation(A[0], s), expectation(A[1], s),
                            expectation(A[2], s)};
    CHECK(std::abs(expect[0] - closed.total.x) < 1e-10);
    CHECK(std::abs(expect[1] - closed.total.y) < 1e-10);
    CHECK(std::abs(expect[2] - closed.total.z) < 1e-10);
    // the mean field of any occupation eigenstate vanishes instead
    for (int c = 0; c < 3; ++c)
      CHECK(std::abs(expectation(A[c], n_photon_state(space, 0, 2))) == 0.0);
  }

  SUBCASE("two modes, ladder expectation path") {
    const ModeSet ms(g, {{23, 1}, {77, -1}});
    const FockSpace space(ms, 20);
    const std::vector<cplx> alpha{cplx(0.8, 0.2), cplx(-0.4, 0.5)};
    const FockVector s = coherent_state(space, alpha);
    const SingleExcitationFields f1 = field_operators_1x(ms, x);
    const CoherentField closed = coherent_field_closed_form(ms, alpha, x);
    cplx expect[3] = {cplx(0, 0), cplx(0, 0), cplx(0, 0)};
    for (std::size_t m = 0; m < ms.size(); ++m) {
      const cplx b = ladder_expectation(space, m, s);
      for (int c = 0; c < 3; ++c) {
        expect[c] += f1.A[c].at(0, 1 + m) * b;
        expect[c] += f1.A[c].at(1 + m, 0) * std::conj(b);
      }
    }
    CHECK(std::abs(expect[0] - closed.total.x) < 1e-10);
    CHECK(std::abs(expect[1] - closed.total.y) < 1e-10);
    CHECK(std::abs(expect[2] - closed.total.z) < 1e-10);
  }

  SUBCASE("closed form structure") {
    const ModeSet ms(g, {{23, 1}, {77, -1}});
    const std::vector<cplx> alpha{cplx(0.8, 0.2), cplx(-0.4, 0.5)};
    const CoherentField f = coherent_field_closed_form(ms, alpha, x);
    CHECK(f.total.x.imag() == 0.0);
    CHECK(f.total.y.imag() == 0.0);
    CHECK(f.total.z.imag() == 0.0);
    CHECK(std::abs(f.total.x - (f.positive.x + f.negative.x)) == 0.0);

    // rotating every amplitude rotates the frequency branches oppositely
    const cplx rot = std::polar(1.0, 0.8);
    const std::vector<cplx> rotated{alpha[0] * rot, alpha[1] * rot};
    const CoherentField fr = coherent_field_closed_form(ms, rotated, x);
    CHECK(std::abs(fr.positive.x - f.positive.x * rot) < 1e-14);
    CHECK(std::abs(fr.negative.z - f.negative.z * std::conj(rot)) < 1e-14);
    CHECK_THROWS_AS((void)coherent_field_closed_form(ms, {alpha[0]}, x),
                    ConfigError);
  }
}
