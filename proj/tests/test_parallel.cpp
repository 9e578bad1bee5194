#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdint>
#include <vector>

#include "doctest.h"
#include "photonwave/fields.hpp"
#include "photonwave/kstate.hpp"
#include "photonwave/multiphoton.hpp"
#include "photonwave/propagator.hpp"
#include "photonwave/waveguide.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace photonwave;

namespace {

// oversubscribe so the threaded paths exercise real work splitting even on
// a single-core runner
void force_threads() {
#ifdef _OPENMP
  omp_set_num_threads(4);
#endif
}

constexpr EvalOptions kSerial{.parallel = false, .warn_aliasing = false};
constexpr EvalOptions kParallel{.parallel = true, .warn_aliasing = false};

std::vector<Vec3> probe_points() {
  std::vector<Vec3> xs;
  for (int i = 0; i < 97; ++i) {
    const double s = 0.07 * i;
    xs.push_back({0.02 * i - 1.0, 0.5 - s, 0.3 * ((i % 5) - 2)});
  }
  return xs;
}

}  // namespace

TEST_CASE("threaded batch evaluators match the serial reference bitwise") {
  force_threads();
  auto g = make_grid({.n_radial = 48, .n_costheta = 16, .n_phi = 8});
  auto s = gaussian_wavepacket(g, {0.0, 0.0, 5.0}, 0.5, 1, -1);
  const auto xs = probe_points();
  const double t = 0.37;

  const auto wf_s = wavefunction_batch(s, -1, 1, xs, t, kSerial);
  const auto wf_p = wavefunction_batch(s, -1, 1, xs, t, kParallel);
  REQUIRE(wf_s.size() == xs.size());
  REQUIRE(wf_p.size() == xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) CHECK(wf_s[i] == wf_p[i]);

  const auto born_s = born_amplitude_batch(s, 1, xs, t, kSerial);
  const auto born_p = born_amplitude_batch(s, 1, xs, t, kParallel);
  for (std::size_t i = 0; i < xs.size(); ++i) CHECK(born_s[i] == born_p[i]);
}

TEST_CASE("threaded potential sampling matches the serial reference bitwise") {
  force_threads();
  auto g = make_grid({.n_radial = 32, .n_costheta = 12, .n_phi = 8});
  auto s = gaussian_wavepacket(g, {0.0, 0.0, 4.0}, 0.45, 1, -1);
  const SlabSpec slab{.origin = {-0.3, -0.3, -0.3},
                      .dx = 0.12,
                      .nx = 6,
                      .ny = 5,
                      .nz = 5,
                      .t0 = 0.0,
                      .dt = 0.05,
                      .nt = 5};

  const auto a_s = sample_potential(s, slab, kSerial);
  const auto a_p = sample_potential(s, slab, kParallel);
  REQUIRE(a_s.values.size() == slab.size());
  REQUIRE(a_p.values.size() == slab.size());
  for (std::size_t i = 0; i < a_s.values.size(); ++i) {
    CHECK(a_s.values[i].x == a_p.values[i].x);
    CHECK(a_s.values[i].y == a_p.values[i].y);
    CHECK(a_s.values[i].z == a_p.values[i].z);
  }
}

TEST_CASE("threaded source integration matches the serial reference bitwise") {
  force_threads();
  const double sx = 0.25, st = 0.15, tc = 0.6;
  const SlabSpec lattice{.origin = {-1.75, -1.75, -1.75},
                         .dx = 0.25,
                         .nx = 15,
                         .ny = 15,
                         .nz = 15,
                         .t0 = tc - 1.05,
                         .dt = 0.05,
                         .nt = 43};
  const auto J = gaussian_flash_source({0, 0, 0}, sx, tc, st, lattice, 1);
  const SlabSpec eval{.origin = {2.0, -0.2, -0.2},
                      .dx = 0.1,
                      .nx = 5,
                      .ny = 5,
                      .nz = 5,
                      .t0 = 2.6,
                      .dt = 0.1,
                      .nt = 5};

  const auto phi_s = sample_particular_solution(J, eval, kSerial);
  const auto phi_p = sample_particular_solution(J, eval, kParallel);
  REQUIRE(phi_s.size() == eval.size());
  REQUIRE(phi_p.size() == eval.size());
  for (std::size_t i = 0; i < phi_s.size(); ++i) CHECK(phi_s[i] == phi_p[i]);
}

TEST_CASE("threaded detection tallies match the serial reference bitwise") {
  force_threads();
  const CharacteristicGrid g{-6.0, 12.0 / 256, 256};
  const auto pulse = gaussian_pulse_1d(g, Direction::right, -1.5, 0.5, 30.0, 1);
  const DetectionSampler sampler(position_density(pulse));

  const auto counts_p = detection_counts(sampler, 987654321u, 40000);
  const auto counts_s = detection_counts_serial(sampler, 987654321u, 40000);
  REQUIRE(counts_p.size() == counts_s.size());
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < counts_p.size(); ++i) {
    CHECK(counts_p[i] == counts_s[i]);
    total += counts_p[i];
  }
  CHECK(total == 40000);
}
