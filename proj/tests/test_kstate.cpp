#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "photonwave/kstate.hpp"

using namespace photonwave;

namespace {
GridPtr small_grid() {
  return make_grid({.n_radial = 8, .n_costheta = 4, .n_phi = 4});
}
// resolves a k0 = 5, sigma_k = 0.5 packet well; axisymmetric about z so the
// small phi count costs nothing
GridPtr packet_grid() {
  return make_grid({.n_radial = 128, .n_costheta = 64, .n_phi = 8});
}
const Vec3 k0{0.0, 0.0, 5.0};
}  // namespace

TEST_CASE("momentum eigenstate is 1/w_cov at the snapped node") {
  auto g = small_grid();
  const std::size_t target = 37;
  double dist = -1.0;
  auto s = momentum_eigenstate(g, g->kvec(target), 1, -1, 1e-3, &dist);
  CHECK(dist == doctest::Approx(0.0));
  const auto& a = s.amp(-1, 1);
  for (std::size_t i = 0; i < g->size(); ++i) {
    if (i == target) {
      CHECK(a[i].real() == doctest::Approx(1.0 / g->w_cov(i)).epsilon(1e-14));
      CHECK(a[i].imag() == 0.0);
    } else {
      CHECK(a[i] == cplx(0.0, 0.0));
    }
  }
  // the other three (r, lambda) components stay empty
  for (auto [r, l] : {std::pair{1, 1}, {1, -1}, {-1, -1}}) {
    for (auto v : s.amp(r, l)) CHECK(v == cplx(0.0, 0.0));
  }
  CHECK_THROWS_AS(momentum_eigenstate(g, {0.0, 0.0, 100.0}, 1, 1),
                  std::out_of_range);
}

TEST_CASE("position eigenstate is a pure folded phase") {
  auto g = small_grid();
  SUBCASE("origin at zero gives unit amplitudes") {
    auto s = position_eigenstate(g, {0.0, 0.0, 0.0}, 1, -1);
    for (auto v : s.amp(-1, 1)) {
      CHECK(v.real() == doctest::Approx(1.0).epsilon(1e-15));
      CHECK(v.imag() == doctest::Approx(0.0));
    }
  }
  SUBCASE("generic origin and release time") {
    const Vec3 xp{0.3, -1.2, 0.7};
    const double tp = 0.45;
    auto s = position_eigenstate(g, xp, -1, 1, 0.0, tp);
    CHECK(s.origin().t == tp);
    for (std::size_t i = 0; i < g->size(); ++i) {
      const cplx v = s.amp(1, -1)[i];
      CHECK(std::abs(v) == doctest::Approx(1.0).epsilon(1e-14));
      const cplx expect =
          std::exp(I * (g->omega(i) * tp - dot(g->kvec(i), xp)));
      CHECK(std::abs(v - expect) < 1e-14);
    }
  }
  SUBCASE("gaussian regulator tempers the modulus") {
    const double sx = 0.7;
    auto s = position_eigenstate(g, {0.1, 0.0, -0.2}, 1, -1, sx);
    for (std::size_t i = 0; i < g->size(); ++i) {
      const double k = g->k(i);
      CHECK(std::abs(s.amp(-1, 1)[i]) ==
            doctest::Approx(std::exp(-0.5 * sx * sx * k * k)).epsilon(1e-13));
    }
  }
}

TEST_CASE("gaussian wavepacket is unit-normalized against the flat measure") {
  auto g = packet_grid();
  auto s = gaussian_wavepacket(g, k0, 0.5, 1, -1);
  CHECK(born_norm(s) == doctest::Approx(1.0).epsilon(1e-12));

  // peak amplitude reproduces the continuum constant (2 pi)^{3/4} / sigma^{3/2}
  double best = 1e300;
  std::size_t ipk = 0;
  for (std::size_t i = 0; i < g->size(); ++i) {
    const double d = (g->kvec(i) - k0).norm();
    if (d < best) {
      best = d;
      ipk = i;
    }
  }
  const Vec3 dk = g->kvec(ipk) - k0;
  const double env = std::exp(-dot(dk, dk) / (4.0 * 0.5 * 0.5));
  const double scale = s.amp(-1, 1)[ipk].real() / env;
  CHECK(scale == doctest::Approx(11.22483316427372821353).epsilon(1e-6));
}

TEST_CASE("wavepacket spilling past the radial window is rejected") {
  auto g = small_grid();  // k in [0.05, 12]
  CHECK_THROWS_AS(gaussian_wavepacket(g, k0, 2.0, 1, -1), ResolutionError);
  CHECK_THROWS_AS(gaussian_wavepacket(g, {0.0, 0.0, 11.8}, 0.5, 1, -1),
                  ResolutionError);
  CHECK_THROWS_AS(gaussian_wavepacket(g, k0, 0.0, 1, -1),
                  std::invalid_argument);
}

TEST_CASE("frequency decomposition separates energy signs") {
  auto g = packet_grid();
  auto even = gaussian_wavepacket(g, k0, 0.5, 1, 1);
  auto odd = gaussian_wavepacket(g, k0, 0.5, 1, -1);
  auto pos = superpose(even, odd, 1.0, 1.0);
  auto neg = superpose(even, odd, 1.0, -1.0);
  for (std::size_t i = 0; i < g->size(); i += 97) {
    CHECK(std::abs(pos.freq_minus(1, i)) < 1e-14);
    CHECK(std::abs(pos.freq_plus(1, i) - 2.0 * even.amp(1, 1)[i]) < 1e-12);
    CHECK(std::abs(neg.freq_plus(1, i)) < 1e-14);
  }
}

TEST_CASE("conserved charge anchors and invariance") {
  auto g = packet_grid();
  auto even = gaussian_wavepacket(g, k0, 0.5, 1, 1);
  auto odd = gaussian_wavepacket(g, k0, 0.5, 1, -1);
  CHECK(std::abs(conserved_charge(even)) < 1e-12);
  CHECK(std::abs(conserved_charge(odd)) < 1e-12);

  auto pos = superpose(even, odd, 1.0, 1.0);
  auto neg = superpose(even, odd, 1.0, -1.0);
  CHECK(born_norm(pos) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(conserved_charge(pos) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(conserved_charge(neg) == doctest::Approx(-1.0).epsilon(1e-12));

  auto later = time_shifted(pos, 7.3);
  CHECK(conserved_charge(later) ==
        doctest::Approx(conserved_charge(pos)).epsilon(1e-12));
  CHECK(born_norm(later) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("sign_of_energy is an involution with the expected eigenstates") {
  auto g = packet_grid();
  auto even = gaussian_wavepacket(g, k0, 0.5, -1, 1);
  auto odd = gaussian_wavepacket(g, k0, 0.5, -1, -1);
  auto pos = superpose(even, odd, 1.0, 1.0);
  auto neg = superpose(even, odd, 1.0, -1.0);

  auto eps_pos = sign_of_energy(pos);
  auto eps_neg = sign_of_energy(neg);
  auto twice = sign_of_energy(sign_of_energy(odd));
  for (std::size_t i = 0; i < g->size(); i += 131) {
    for (int r : {1, -1}) {
      CHECK(eps_pos.amp(r, -1)[i] == pos.amp(r, -1)[i]);
      CHECK(eps_neg.amp(r, -1)[i] == -neg.amp(r, -1)[i]);
      CHECK(twice.amp(r, -1)[i] == odd.amp(r, -1)[i]);
    }
  }
}

TEST_CASE("time_shifted applies e^{i omega tau} and moves the origin") {
  auto g = small_grid();
  auto s = position_eigenstate(g, {0.2, 0.0, 0.1}, 1, -1, 0.3);
  const double tau = 0.37;
  auto sh = time_shifted(s, tau);
  CHECK(sh.origin().t == doctest::Approx(s.origin().t + tau));
  for (std::size_t i = 0; i < g->size(); ++i) {
    const cplx expect =
        s.amp(-1, 1)[i] * std::exp(I * (g->omega(i) * tau));
    CHECK(std::abs(sh.amp(-1, 1)[i] - expect) < 1e-14);
  }
}

TEST_CASE("superpose rejects mismatched grids and normalized_born rescales") {
  auto g = small_grid();
  auto h = make_grid({.n_radial = 8, .n_costheta = 4, .n_phi = 4, .k_min = 0.06});
  auto s = position_eigenstate(g, {0.0, 0.0, 0.0}, 1, -1, 0.5);
  auto t = position_eigenstate(h, {0.0, 0.0, 0.0}, 1, -1, 0.5);
  CHECK_THROWS_AS(superpose(s, t, 1.0, 1.0), ConfigError);

  auto scaled = superpose(s, s, 3.7, 0.0);
  CHECK(born_norm(normalized_born(scaled)) ==
        doctest::Approx(1.0).epsilon(1e-13));
}
