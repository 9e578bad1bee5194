// Times the threaded kernels against their serial reference paths and prints
// a small table.  Wall times come from steady_clock; each kernel runs once
// warm and then `reps` timed repetitions, reporting the best.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>
#include <vector>

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

double best_seconds(int reps, const std::function<void()>& fn) {
  fn();  // warm caches and thread pool
  double best = 1e300;
  for (int i = 0; i < reps; ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    const auto t1 = std::chrono::steady_clock::now();
    best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
  }
  return best;
}

void report(const char* name, double serial, double parallel) {
  std::printf("%-22s %12.3f %12.3f %10.2fx\n", name, serial * 1e3,
              parallel * 1e3, serial / parallel);
}

volatile double sink;  // keeps the timed work observable

}  // namespace

int main(int argc, char** argv) {
  int reps = 3;
  if (argc > 1) reps = std::max(1, std::atoi(argv[1]));

  int threads = 0;
#ifdef _OPENMP
  threads = omp_get_max_threads();
#endif
  std::printf("threads: %d (0 means built without OpenMP), reps: %d\n",
              threads, reps);
  std::printf("%-22s %12s %12s %10s\n", "kernel", "serial ms", "parallel ms",
              "speedup");

  const EvalOptions serial{.parallel = false, .warn_aliasing = false};
  const EvalOptions parallel{.parallel = true, .warn_aliasing = false};

  auto g = make_grid({.n_radial = 96, .n_costheta = 32, .n_phi = 16});
  auto s = gaussian_wavepacket(g, {0.0, 0.0, 5.0}, 0.5, 1, -1);
  std::vector<Vec3> xs;
  for (int i = 0; i < 512; ++i)
    xs.push_back({0.004 * i - 1.0, 0.3 - 0.002 * i, 0.001 * i});

  report("wavefunction_batch",
         best_seconds(reps,
                      [&] {
                        const auto v =
                            wavefunction_batch(s, -1, 1, xs, 0.4, serial);
                        sink = v.back().real();
                      }),
         best_seconds(reps, [&] {
           const auto v = wavefunction_batch(s, -1, 1, xs, 0.4, parallel);
           sink = v.back().real();
         }));

  report("born_amplitude_batch",
         best_seconds(reps,
                      [&] {
                        const auto v =
                            born_amplitude_batch(s, 1, xs, 0.4, serial);
                        sink = v.back().real();
                      }),
         best_seconds(reps, [&] {
           const auto v = born_amplitude_batch(s, 1, xs, 0.4, parallel);
           sink = v.back().real();
         }));

  const SlabSpec slab{.origin = {-0.3, -0.3, -0.3},
                      .dx = 0.1,
                      .nx = 7,
                      .ny = 7,
                      .nz = 7,
                      .t0 = 0.0,
                      .dt = 0.05,
                      .nt = 5};
  report("sample_potential",
         best_seconds(reps,
                      [&] {
                        const auto a = sample_potential(s, slab, serial);
                        sink = a.values.back().x.real();
                      }),
         best_seconds(reps, [&] {
           const auto a = sample_potential(s, slab, parallel);
           sink = a.values.back().x.real();
         }));

  const double tc = 0.6;
  const SlabSpec lattice{.origin = {-1.75, -1.75, -1.75},
                         .dx = 0.25,
                         .nx = 15,
                         .ny = 15,
                         .nz = 15,
                         .t0 = tc - 1.05,
                         .dt = 0.05,
                         .nt = 43};
  const auto J = gaussian_flash_source({0, 0, 0}, 0.25, tc, 0.15, lattice, 1);
  const SlabSpec eval{.origin = {2.0, -0.2, -0.2},
                      .dx = 0.1,
                      .nx = 6,
                      .ny = 6,
                      .nz = 6,
                      .t0 = 2.6,
                      .dt = 0.1,
                      .nt = 5};
  report("particular_solution",
         best_seconds(reps,
                      [&] {
                        const auto p =
                            sample_particular_solution(J, eval, serial);
                        sink = p.back().real();
                      }),
         best_seconds(reps, [&] {
           const auto p = sample_particular_solution(J, eval, parallel);
           sink = p.back().real();
         }));

  const CharacteristicGrid wg{-6.0, 12.0 / 512, 512};
  const auto pulse =
      gaussian_pulse_1d(wg, Direction::right, -1.5, 0.5, 40.0, 1);
  const DetectionSampler sampler(position_density(pulse));
  report("detection_counts",
         best_seconds(reps,
                      [&] {
                        const auto c =
                            detection_counts_serial(sampler, 7u, 2000000);
                        sink = static_cast<double>(c.back());
                      }),
         best_seconds(reps, [&] {
           const auto c = detection_counts(sampler, 7u, 2000000);
           sink = static_cast<double>(c.back());
         }));

  return 0;
}
