#include "photonwave/fields.hpp"

#include <cmath>
#include <functional>

#include "photonwave/polarization.hpp"

namespace photonwave {

namespace {

enum class FieldKind { potential, electric, electric_tilde };

CVec3 spectral_field(const KSpaceState& s, const Vec3& x, double t,
                     FieldKind kind) {
  const auto& g = *s.grid();
  const double C = std::sqrt(units.hbar / (2.0 * units.eps0));
  CVec3 acc;
  for (int lambda : {1, -1}) {
    for (std::size_t i = 0; i < g.size(); ++i) {
      const cplx p = s.freq_plus(lambda, i);
      const cplx n = s.freq_minus(lambda, i);
      if (p == cplx(0.0, 0.0) && n == cplx(0.0, 0.0)) continue;
      const CVec3 e = polarization_basis(g.kvec(i)).helicity(lambda);
      const double phase = g.omega(i) * t - dot(g.kvec(i), x);
      const cplx E = cplx(std::cos(phase), -std::sin(phase));
      cplx cp = p, cn = n;
      if (kind != FieldKind::potential) {
        const cplx iw = I * g.omega(i);
        cp *= iw;
        cn *= (kind == FieldKind::electric) ? -iw : iw;
      }
      acc = acc + g.w_cov(i) * (cp * E * e + cn * std::conj(E) * e.conj());
    }
  }
  return C * acc;
}

}  // namespace

CVec3 transverse_potential(const KSpaceState& s, const Vec3& x, double t) {
  return spectral_field(s, x, t, FieldKind::potential);
}

CVec3 transverse_electric(const KSpaceState& s, const Vec3& x, double t) {
  return spectral_field(s, x, t, FieldKind::electric);
}

CVec3 transverse_electric_tilde(const KSpaceState& s, const Vec3& x,
                                double t) {
  return spectral_field(s, x, t, FieldKind::electric_tilde);
}

VectorFieldSlab sample_potential(const KSpaceState& s, const SlabSpec& slab,
                                 const EvalOptions& opt) {
  VectorFieldSlab out;
  out.spec = slab;
  out.values.resize(slab.size());
  const int threads = opt.parallel ? omp_get_max_threads() : 1;
  const long long npts = static_cast<long long>(slab.size());
#pragma omp parallel for schedule(static) num_threads(threads)
  for (long long idx = 0; idx < npts; ++idx) {
    const long long cell = idx % static_cast<long long>(slab.cells());
    const int it = static_cast<int>(idx / static_cast<long long>(slab.cells()));
    const int iz = static_cast<int>(cell % slab.nz);
    const int iy = static_cast<int>((cell / slab.nz) % slab.ny);
    const int ix = static_cast<int>(cell / (static_cast<long long>(slab.nz) * slab.ny));
    out.values[idx] =
        transverse_potential(s, slab.point(ix, iy, iz), slab.time(it));
  }
  return out;
}

namespace {

// 4th-order first derivative along one axis given a sample accessor; the
// stencil shifts to one-sided forms within two points of either boundary
cplx derivative_1d(const std::function<cplx(int)>& f, int j, int n, double h) {
  if (n < 5) throw ConfigError("derivative stencil needs at least 5 samples");
  auto c5 = [&](int o0, double a0, double a1, double a2, double a3, double a4) {
    return (a0 * f(j + o0) + a1 * f(j + o0 + 1) + a2 * f(j + o0 + 2) +
            a3 * f(j + o0 + 3) + a4 * f(j + o0 + 4)) /
           h;
  };
  if (j >= 2 && j <= n - 3) {
    return (f(j - 2) - 8.0 * f(j - 1) + 8.0 * f(j + 1) - f(j + 2)) /
           (12.0 * h);
  }
  if (j == 0) return c5(0, -25.0 / 12.0, 4.0, -3.0, 4.0 / 3.0, -1.0 / 4.0);
  if (j == 1) return c5(-1, -1.0 / 4.0, -5.0 / 6.0, 3.0 / 2.0, -1.0 / 2.0, 1.0 / 12.0);
  if (j == n - 2)
    return c5(-3, -1.0 / 12.0, 1.0 / 2.0, -3.0 / 2.0, 5.0 / 6.0, 1.0 / 4.0);
  return c5(-4, 1.0 / 4.0, -4.0 / 3.0, 3.0, -4.0, 25.0 / 12.0);
}

}  // namespace

DerivedFields derive_fields(const VectorFieldSlab& A) {
  const SlabSpec& sp = A.spec;
  if (sp.nt < 5) {
    throw ConfigError(
        "derive_fields: the time axis needs at least 5 slices for the "
        "derivative stencil");
  }
  if (sp.nx < 5 || sp.ny < 5 || sp.nz < 5) {
    throw ConfigError(
        "derive_fields: the curl needs at least 5 points per spatial axis");
  }
  DerivedFields out;
  out.E.spec = sp;
  out.E.sigma = A.sigma;
  out.E.values.resize(sp.size());
  out.B.spec = sp;
  out.B.sigma = A.sigma;
  out.B.values.resize(sp.size());

  auto comp = [&](const CVec3& v, int c) -> cplx {
    return c == 0 ? v.x : (c == 1 ? v.y : v.z);
  };

  const long long total = static_cast<long long>(sp.size());
#pragma omp parallel for schedule(static)
  for (long long idx = 0; idx < total; ++idx) {
    const long long cell = idx % static_cast<long long>(sp.cells());
    const int it = static_cast<int>(idx / static_cast<long long>(sp.cells()));
    const int iz = static_cast<int>(cell % sp.nz);
    const int iy = static_cast<int>((cell / sp.nz) % sp.ny);
    const int ix = static_cast<int>(cell / (static_cast<long long>(sp.nz) * sp.ny));

    auto dA = [&](int axis, int c) -> cplx {
      // derivative of component c along the given axis (0=t, 1=x, 2=y, 3=z)
      switch (axis) {
        case 0:
          return derivative_1d(
              [&](int j) { return comp(A.values[sp.index(j, ix, iy, iz)], c); },
              it, sp.nt, sp.dt);
        case 1:
          return derivative_1d(
              [&](int j) { return comp(A.values[sp.index(it, j, iy, iz)], c); },
              ix, sp.nx, sp.dx);
        case 2:
          return derivative_1d(
              [&](int j) { return comp(A.values[sp.index(it, ix, j, iz)], c); },
              iy, sp.ny, sp.dx);
        default:
          return derivative_1d(
              [&](int j) { return comp(A.values[sp.index(it, ix, iy, j)], c); },
              iz, sp.nz, sp.dx);
      }
    };

    out.E.values[idx] = CVec3(-dA(0, 0), -dA(0, 1), -dA(0, 2));
    out.B.values[idx] = CVec3(dA(2, 2) - dA(3, 1),   // dAz/dy - dAy/dz
                              dA(3, 0) - dA(1, 2),   // dAx/dz - dAz/dx
                              dA(1, 1) - dA(2, 0));  // dAy/dx - dAx/dy
  }
  return out;
}

cplx SourceCurrent::at_time(std::size_t cell, double tprime) const {
  const double u = (tprime - lattice.t0) / lattice.dt;
  if (u < 0.0 || u > lattice.nt - 1) return {0.0, 0.0};
  const int i0 = std::min(static_cast<int>(u), lattice.nt - 2);
  const double f = u - i0;
  const std::size_t base = lattice.cells();
  auto at = [&](int i) {
    i = std::max(0, std::min(i, lattice.nt - 1));
    return values[static_cast<std::size_t>(i) * base + cell];
  };
  const cplx v0 = at(i0), v1 = at(i0 + 1);
  if (lattice.nt < 4) return (1.0 - f) * v0 + f * v1;
  // Catmull-Rom: C^1 interpolation keeps the retarded-time profile smooth
  // enough for finite-difference wave operators applied to the solution
  const cplx vm = at(i0 - 1), v2 = at(i0 + 2);
  const cplx a1 = 0.5 * (v1 - vm);
  const cplx a2 = vm - 2.5 * v0 + 2.0 * v1 - 0.5 * v2;
  const cplx a3 = 1.5 * (v0 - v1) + 0.5 * (v2 - vm);
  return v0 + f * (a1 + f * (a2 + f * a3));
}

SourceCurrent gaussian_flash_source(const Vec3& center, double sigma_x,
                                    double t_center, double sigma_t,
                                    const SlabSpec& lattice, int lambda) {
  if (sigma_x <= 0.0 || sigma_t <= 0.0) {
    throw ConfigError("gaussian_flash_source: widths must be positive");
  }
  SourceCurrent J;
  J.lattice = lattice;
  J.lambda = lambda;
  J.values.resize(lattice.size());
  const double nx3 =
      1.0 / (std::pow(2.0 * M_PI, 1.5) * sigma_x * sigma_x * sigma_x);
  for (int it = 0; it < lattice.nt; ++it) {
    const double tv = delta_sigma(lattice.time(it) - t_center, sigma_t);
    for (int ix = 0; ix < lattice.nx; ++ix) {
      for (int iy = 0; iy < lattice.ny; ++iy) {
        for (int iz = 0; iz < lattice.nz; ++iz) {
          const Vec3 d = lattice.point(ix, iy, iz) - center;
          J.values[lattice.index(it, ix, iy, iz)] =
              nx3 * std::exp(-0.5 * dot(d, d) / (sigma_x * sigma_x)) * tv;
        }
      }
    }
  }
  return J;
}

namespace {

void check_compact_support(const SourceCurrent& J) {
  double peak = 0.0;
  for (const auto& v : J.values) peak = std::max(peak, std::abs(v));
  if (peak == 0.0) return;
  const double tol = 1e-10 * peak;
  const SlabSpec& L = J.lattice;
  for (int it = 0; it < L.nt; ++it) {
    const bool t_edge = (it == 0 || it == L.nt - 1);
    for (int ix = 0; ix < L.nx; ++ix) {
      for (int iy = 0; iy < L.ny; ++iy) {
        for (int iz = 0; iz < L.nz; ++iz) {
          const bool x_edge = ix == 0 || ix == L.nx - 1 || iy == 0 ||
                              iy == L.ny - 1 || iz == 0 || iz == L.nz - 1;
          if (!t_edge && !x_edge) continue;
          if (std::abs(J.values[L.index(it, ix, iy, iz)]) > tol) {
            throw CoverageError(
                "particular_solution: source is still alive at its lattice "
                "boundary; enlarge the source lattice so the support is "
                "compact inside it");
          }
        }
      }
    }
  }
}

cplx particular_solution_checked(const SourceCurrent& J, const Vec3& x,
                                 double t) {
  const SlabSpec& L = J.lattice;
  const double V = L.dx * L.dx * L.dx;
  const double r_eq = std::cbrt(3.0 * V / (4.0 * M_PI));
  cplx acc{0.0, 0.0};
  for (int ix = 0; ix < L.nx; ++ix) {
    for (int iy = 0; iy < L.ny; ++iy) {
      for (int iz = 0; iz < L.nz; ++iz) {
        const std::size_t cell = L.cell_index(ix, iy, iz);
        const double R = (x - L.point(ix, iy, iz)).norm();
        const double w = R < r_eq ? 0.5 * r_eq * r_eq : V / (4.0 * M_PI * R);
        const cplx ret = J.at_time(cell, t - R / units.c);
        const cplx adv = J.at_time(cell, t + R / units.c);
        acc += w * 0.5 * (ret + adv);
      }
    }
  }
  return acc;
}

}  // namespace

cplx particular_solution(const SourceCurrent& J, const Vec3& x, double t) {
  check_compact_support(J);
  return particular_solution_checked(J, x, t);
}

std::vector<cplx> sample_particular_solution(const SourceCurrent& J,
                                             const SlabSpec& slab,
                                             const EvalOptions& opt) {
  check_compact_support(J);
  std::vector<cplx> out(slab.size());
  const int threads = opt.parallel ? omp_get_max_threads() : 1;
  const long long total = static_cast<long long>(slab.size());
#pragma omp parallel for schedule(static) num_threads(threads)
  for (long long idx = 0; idx < total; ++idx) {
    const long long cell = idx % static_cast<long long>(slab.cells());
    const int it = static_cast<int>(idx / static_cast<long long>(slab.cells()));
    const int iz = static_cast<int>(cell % slab.nz);
    const int iy = static_cast<int>((cell / slab.nz) % slab.ny);
    const int ix = static_cast<int>(cell / (static_cast<long long>(slab.nz) * slab.ny));
    out[idx] =
        particular_solution_checked(J, slab.point(ix, iy, iz), slab.time(it));
  }
  return out;
}

double wave_residual_l2(const std::vector<cplx>& phi,
                        const std::vector<cplx>& j, const SlabSpec& slab) {
  if (phi.size() != slab.size() || j.size() != slab.size()) {
    throw ConfigError("wave_residual_l2: sample counts do not match the slab");
  }
  if (slab.nt < 3 || slab.nx < 3 || slab.ny < 3 || slab.nz < 3) {
    throw ConfigError("wave_residual_l2: need at least 3 points per axis");
  }
  const double c2 = units.c * units.c;
  double sum = 0.0;
  std::size_t count = 0;
  for (int it = 1; it < slab.nt - 1; ++it) {
    for (int ix = 1; ix < slab.nx - 1; ++ix) {
      for (int iy = 1; iy < slab.ny - 1; ++iy) {
        for (int iz = 1; iz < slab.nz - 1; ++iz) {
          auto p = [&](int dt_, int dx_, int dy_, int dz_) {
            return phi[slab.index(it + dt_, ix + dx_, iy + dy_, iz + dz_)];
          };
          const cplx center = p(0, 0, 0, 0);
          const cplx dtt =
              (p(1, 0, 0, 0) - 2.0 * center + p(-1, 0, 0, 0)) /
              (slab.dt * slab.dt);
          const cplx lap = (p(0, 1, 0, 0) + p(0, -1, 0, 0) + p(0, 0, 1, 0) +
                            p(0, 0, -1, 0) + p(0, 0, 0, 1) + p(0, 0, 0, -1) -
                            6.0 * center) /
                           (slab.dx * slab.dx);
          const cplx res = dtt / c2 - lap - j[slab.index(it, ix, iy, iz)];
          sum += std::norm(res);
          ++count;
        }
      }
    }
  }
  return std::sqrt(sum / static_cast<double>(count));
}

}  // namespace photonwave
