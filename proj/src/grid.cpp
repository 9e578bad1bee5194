#include "photonwave/grid.hpp"

#include <gsl/gsl_integration.h>

#include <cmath>
#include <limits>

namespace photonwave {

namespace {
// P_n(t) and P_n'(t) by the three-term recurrence, in extended precision
void legendre_pair(int n, long double t, long double& p, long double& dp) {
  long double p0 = 1.0L, p1 = t;
  for (int j = 2; j <= n; ++j) {
    const long double p2 = ((2 * j - 1) * t * p1 - (j - 1) * p0) / j;
    p0 = p1;
    p1 = p2;
  }
  p = p1;
  dp = n * (t * p1 - p0) / (t * t - 1.0L);
}
}  // namespace

void gauss_legendre(int n, double a, double b, std::vector<double>& x,
                    std::vector<double>& w) {
  if (n < 1) throw ConfigError("gauss_legendre: need at least one node");
  gsl_integration_glfixed_table* t =
      gsl_integration_glfixed_table_alloc(static_cast<size_t>(n));
  x.resize(n);
  w.resize(n);
  for (int i = 0; i < n; ++i) {
    gsl_integration_glfixed_point(a, b, static_cast<size_t>(i), &x[i], &w[i], t);
  }
  gsl_integration_glfixed_table_free(t);
  if (n == 1) return;
  // GSL only carries precomputed high-precision tables for select sizes; for
  // other n its on-the-fly nodes are ~1e-10. Polish every node with Newton on
  // the Legendre recurrence and rebuild the weights from P_n'.
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  for (int i = 0; i < n; ++i) {
    long double xi = (x[i] - mid) / half;
    for (int it = 0; it < 3; ++it) {
      long double p, dp;
      legendre_pair(n, xi, p, dp);
      xi -= p / dp;
    }
    long double p, dp;
    legendre_pair(n, xi, p, dp);
    x[i] = static_cast<double>(mid + half * xi);
    w[i] = static_cast<double>(half * 2.0L / ((1.0L - xi * xi) * dp * dp));
  }
}

QuadratureGrid::QuadratureGrid(const GridSpec& spec) : spec_(spec) {
  if (spec.k_min <= 0.0)
    throw ConfigError("k_min must be positive: k = 0 is excluded from the grid");
  if (spec.k_max <= spec.k_min)
    throw ConfigError("k_max must exceed k_min");
  if (spec.n_radial < 1 || spec.n_costheta < 1 || spec.n_phi < 1)
    throw ConfigError("grid node counts must be positive");

  gauss_legendre(spec.n_radial, spec.k_min, spec.k_max, kr_, rw_);
  gauss_legendre(spec.n_costheta, -1.0, 1.0, cu_, cw_);
  phi_.resize(spec.n_phi);
  const double dphi = 2.0 * M_PI / spec.n_phi;
  for (int p = 0; p < spec.n_phi; ++p) phi_[p] = (p + 0.5) * dphi;

  const int n = spec.n_radial * spec.n_costheta * spec.n_phi;
  kvec_.reserve(n);
  k_.reserve(n);
  w_cov_.reserve(n);
  w_flat_.reserve(n);
  w_raw_.reserve(n);
  const double twopi3 = 8.0 * M_PI * M_PI * M_PI;
  for (int j = 0; j < spec.n_radial; ++j) {
    const double k = kr_[j];
    for (int m = 0; m < spec.n_costheta; ++m) {
      const double u = cu_[m];
      const double s = std::sqrt(std::max(0.0, 1.0 - u * u));
      for (int p = 0; p < spec.n_phi; ++p) {
        kvec_.push_back({k * s * std::cos(phi_[p]), k * s * std::sin(phi_[p]),
                         k * u});
        k_.push_back(k);
        const double raw = rw_[j] * cw_[m] * dphi * k * k;
        w_raw_.push_back(raw);
        w_flat_.push_back(raw / twopi3);
        w_cov_.push_back(raw / (twopi3 * units.c * k));
      }
    }
  }
}

int QuadratureGrid::nearest_node(const Vec3& kprime, double* distance) const {
  const double kp = kprime.norm();
  if (kp < spec_.k_min || kp > spec_.k_max)
    throw std::out_of_range("requested k magnitude lies outside [k_min, k_max]");
  int best = -1;
  double best_d2 = std::numeric_limits<double>::max();
  for (int i = 0; i < size(); ++i) {
    const Vec3 d = kvec_[i] - kprime;
    const double d2 = d.dot(d);
    if (d2 < best_d2) {
      best_d2 = d2;
      best = i;
    }
  }
  if (distance) *distance = std::sqrt(best_d2);
  return best;
}

bool QuadratureGrid::same_discretization(const QuadratureGrid& o) const {
  return spec_.n_radial == o.spec_.n_radial &&
         spec_.n_costheta == o.spec_.n_costheta &&
         spec_.n_phi == o.spec_.n_phi && spec_.k_min == o.spec_.k_min &&
         spec_.k_max == o.spec_.k_max;
}

double QuadratureGrid::shell_volume() const {
  const double a = spec_.k_min, b = spec_.k_max;
  return 4.0 * M_PI / 3.0 * (b * b * b - a * a * a);
}

GridPtr make_grid(const GridSpec& spec) {
  return std::make_shared<const QuadratureGrid>(spec);
}

RadialGrid::RadialGrid(int n, double k_min, double k_max)
    : k_min_(k_min), k_max_(k_max) {
  if (k_min <= 0.0)
    throw ConfigError("k_min must be positive: k = 0 is excluded from the grid");
  if (k_max <= k_min) throw ConfigError("k_max must exceed k_min");
  gauss_legendre(n, k_min, k_max, k_, w_);
}

RadialGrid::RadialGrid(std::vector<double> nodes, std::vector<double> weights)
    : k_(std::move(nodes)), w_(std::move(weights)) {
  if (k_.empty() || k_.size() != w_.size()) {
    throw ConfigError("RadialGrid: node and weight counts must match");
  }
  if (k_.front() <= 0.0) {
    throw ConfigError("k_min must be positive: k = 0 is excluded from the grid");
  }
  for (std::size_t i = 1; i < k_.size(); ++i) {
    if (k_[i] <= k_[i - 1]) {
      throw ConfigError("RadialGrid: nodes must be strictly increasing");
    }
  }
  k_min_ = k_.front();
  k_max_ = k_.back();
}

}  // namespace photonwave
