#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "photonwave/grid.hpp"

using namespace photonwave;

TEST_CASE("gauss_legendre integrates polynomials exactly") {
  std::vector<double> x, w;
  gauss_legendre(3, 0.0, 1.0, x, w);
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += w[i] * std::pow(x[i], 5);
  CHECK(s == doctest::Approx(1.0 / 6.0).epsilon(1e-14));

  gauss_legendre(8, -2.0, 3.0, x, w);
  s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    s += w[i] * (std::pow(x[i], 7) - 4.0 * x[i] * x[i]);
  }
  // int_{-2}^{3} (x^7 - 4 x^2) dx = (3^8 - 2^8)/8 - 4 (3^3 + 2^3)/3
  const double exact = (6561.0 - 256.0) / 8.0 - 4.0 * 35.0 / 3.0;
  CHECK(s == doctest::Approx(exact).epsilon(1e-14));
}

TEST_CASE("raw weights sum to the shell volume") {
  auto g = make_grid({.n_radial = 32, .n_costheta = 16, .n_phi = 8});
  double s = 0.0;
  for (std::size_t i = 0; i < g->size(); ++i) s += g->w_raw(i);
  CHECK(s == doctest::Approx(g->shell_volume()).epsilon(1e-13));
}

TEST_CASE("weight families differ by the documented factors") {
  auto g = make_grid({.n_radial = 16, .n_costheta = 8, .n_phi = 4});
  const double twopi3 = std::pow(2.0 * M_PI, 3);
  for (std::size_t i = 0; i < g->size(); ++i) {
    CHECK(g->w_flat(i) ==
          doctest::Approx(g->w_raw(i) / twopi3).epsilon(1e-14));
    CHECK(g->w_cov(i) * g->omega(i) ==
          doctest::Approx(g->w_flat(i)).epsilon(1e-14));
    CHECK(g->omega(i) == doctest::Approx(g->k(i)).epsilon(1e-15));
  }
}

TEST_CASE("isotropic integrand against raw weights matches closed form") {
  // 4 pi int_{0.05}^{12} k^3 e^{-k} dk, antiderivative -e^{-k}(k^3+3k^2+6k+6)
  const double expect = 75.22540783434084874777;
  auto g = make_grid({.n_radial = 96, .n_costheta = 8, .n_phi = 4});
  double s = 0.0;
  for (std::size_t i = 0; i < g->size(); ++i) {
    s += g->w_raw(i) * g->k(i) * std::exp(-g->k(i));
  }
  CHECK(s == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("nearest_node finds the closest grid point") {
  auto g = make_grid({.n_radial = 32, .n_costheta = 16, .n_phi = 8});
  const std::size_t target = g->size() / 2 + 3;
  double dist = -1.0;
  const std::size_t found = g->nearest_node(g->kvec(target), &dist);
  CHECK(found == target);
  CHECK(dist == doctest::Approx(0.0));

  // perturb by much less than any node spacing
  Vec3 kp = g->kvec(target) + Vec3{1e-9, -1e-9, 1e-9};
  CHECK(g->nearest_node(kp, &dist) == target);
  CHECK(dist > 0.0);
  CHECK(dist < 1e-8);

  CHECK_THROWS_AS((void)g->nearest_node({0.0, 0.0, 13.0}, nullptr),
                  std::out_of_range);
  CHECK_THROWS_AS((void)g->nearest_node({0.0, 0.0, 1e-4}, nullptr),
                  std::out_of_range);
}

TEST_CASE("same_discretization compares every spec field") {
  GridSpec base{.n_radial = 16, .n_costheta = 8, .n_phi = 4};
  auto g = make_grid(base);
  CHECK(g->same_discretization(*make_grid(base)));
  GridSpec s1 = base;
  s1.n_radial = 17;
  CHECK_FALSE(g->same_discretization(*make_grid(s1)));
  GridSpec s2 = base;
  s2.k_max = 11.0;
  CHECK_FALSE(g->same_discretization(*make_grid(s2)));
}

TEST_CASE("grid construction rejects bad parameters") {
  CHECK_THROWS_AS(make_grid({.k_min = 0.0}), ConfigError);
  CHECK_THROWS_AS(make_grid({.k_min = -1.0}), ConfigError);
  CHECK_THROWS_AS(make_grid({.k_min = 5.0, .k_max = 2.0}), ConfigError);
  CHECK_THROWS_AS(make_grid({.n_radial = 0}), ConfigError);
}

TEST_CASE("radial grid weights sum to the interval length") {
  RadialGrid rg(48, 0.1, 9.3);
  double s = 0.0;
  for (std::size_t i = 0; i < rg.size(); ++i) s += rg.w(i);
  CHECK(s == doctest::Approx(9.2).epsilon(1e-13));
}
