#include "photonwave/waveguide.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <utility>

namespace photonwave {

namespace {

double branch_norm2(const CharacteristicGrid& g, const std::vector<cplx>& f) {
  double acc = 0.0;
  for (const cplx& v : f) acc += std::norm(v);
  return g.dx * acc;
}

void validate_grid(const CharacteristicGrid& g, const char* who) {
  if (g.n < 2 || g.dx <= 0.0) {
    throw ConfigError(std::string(who) + ": grid needs dx > 0 and n >= 2");
  }
}

void validate_state(const Waveguide1DState& s, const char* who) {
  validate_grid(s.grid, who);
  if (s.right.size() != s.grid.n || s.left.size() != s.grid.n) {
    throw ConfigError(std::string(who) +
                      ": branch sample counts do not match the grid");
  }
}

// parabola through (i-1, i, i+1) samples; returns refined (coord, value)
std::pair<double, double> refine_extremum(const DensityField1D& rho,
                                          std::size_t i) {
  const double ym = rho.values[i - 1];
  const double y0 = rho.values[i];
  const double yp = rho.values[i + 1];
  const double curv = ym - 2.0 * y0 + yp;
  if (curv == 0.0) return {rho.grid.coord(i), y0};
  const double off = 0.5 * (ym - yp) / curv;
  const double val = y0 - 0.25 * (ym - yp) * off;
  return {rho.grid.coord(i) + off * rho.grid.dx, val};
}

}  // namespace

double waveguide_norm2(const Waveguide1DState& s) {
  validate_state(s, "waveguide_norm2");
  return branch_norm2(s.grid, s.right) + branch_norm2(s.grid, s.left);
}

std::pair<double, double> branch_probabilities(const Waveguide1DState& s) {
  validate_state(s, "branch_probabilities");
  const double nr = branch_norm2(s.grid, s.right);
  const double nl = branch_norm2(s.grid, s.left);
  const double tot = nr + nl;
  if (tot <= 0.0) {
    throw ConfigError("branch_probabilities: zero state");
  }
  return {nr / tot, nl / tot};
}

Waveguide1DState normalized_1d(const Waveguide1DState& s) {
  const double n2 = waveguide_norm2(s);
  if (n2 <= 0.0) {
    throw ConfigError("normalized_1d: zero state");
  }
  Waveguide1DState out = s;
  const double scale = 1.0 / std::sqrt(n2);
  for (cplx& v : out.right) v *= scale;
  for (cplx& v : out.left) v *= scale;
  return out;
}

Waveguide1DState gaussian_pulse_1d(const CharacteristicGrid& g, Direction d,
                                   double center, double sigma, double k0,
                                   int helicity) {
  validate_grid(g, "gaussian_pulse_1d");
  if (sigma <= 0.0) {
    throw ConfigError("gaussian_pulse_1d: sigma must be positive");
  }
  if (helicity != 1 && helicity != -1) {
    throw ConfigError("gaussian_pulse_1d: helicity must be +1 or -1");
  }
  Waveguide1DState s;
  s.grid = g;
  s.right.assign(g.n, cplx(0.0, 0.0));
  s.left.assign(g.n, cplx(0.0, 0.0));
  s.helicity_right = helicity;
  s.helicity_left = helicity;
  std::vector<cplx>& f = (d == Direction::right) ? s.right : s.left;
  const double q = (d == Direction::right) ? k0 : -k0;
  for (std::size_t i = 0; i < g.n; ++i) {
    const double x = g.coord(i);
    const double arg = (x - center) / (2.0 * sigma);
    f[i] = std::exp(-arg * arg) * std::exp(I * (q * x));
  }
  return normalized_1d(s);
}

Waveguide1DState superpose(const Waveguide1DState& s1,
                           const Waveguide1DState& s2, cplx ca, cplx cb) {
  validate_state(s1, "superpose");
  validate_state(s2, "superpose");
  if (!(s1.grid == s2.grid)) {
    throw ConfigError("superpose: states live on different grids");
  }
  if (s1.helicity_right != s2.helicity_right ||
      s1.helicity_left != s2.helicity_left) {
    throw ConfigError("superpose: branch helicities differ");
  }
  Waveguide1DState out = s1;
  for (std::size_t i = 0; i < out.grid.n; ++i) {
    out.right[i] = ca * s1.right[i] + cb * s2.right[i];
    out.left[i] = ca * s1.left[i] + cb * s2.left[i];
  }
  return out;
}

Waveguide1DState propagate(const Waveguide1DState& s, double t) {
  validate_state(s, "propagate");
  const double steps = units.c * t / s.grid.dx;
  const double m = std::round(steps);
  if (std::abs(steps - m) > 1e-9) {
    throw ConfigError(
        "propagate: c t must be a whole number of grid steps (got " +
        std::to_string(steps) + ")");
  }
  const long shift = static_cast<long>(m);
  const long n = static_cast<long>(s.grid.n);
  Waveguide1DState out = s;
  double lost = 0.0;
  for (long i = 0; i < n; ++i) {
    const long jr = i - shift;
    out.right[static_cast<std::size_t>(i)] =
        (jr >= 0 && jr < n) ? s.right[static_cast<std::size_t>(jr)]
                            : cplx(0.0, 0.0);
    const long jl = i + shift;
    out.left[static_cast<std::size_t>(i)] =
        (jl >= 0 && jl < n) ? s.left[static_cast<std::size_t>(jl)]
                            : cplx(0.0, 0.0);
  }
  // weight carried past either end of the window
  for (long i = 0; i < n; ++i) {
    const long ir = i + shift;
    if (ir < 0 || ir >= n) lost += std::norm(s.right[static_cast<std::size_t>(i)]);
    const long il = i - shift;
    if (il < 0 || il >= n) lost += std::norm(s.left[static_cast<std::size_t>(i)]);
  }
  lost *= s.grid.dx;
  const double tot = waveguide_norm2(s);
  if (tot > 0.0 && lost > 1e-10 * tot) {
    std::clog << "propagate: " << lost / tot
              << " of the norm left the sample window\n";
  }
  return out;
}

Waveguide1DState beam_split(const Waveguide1DState& s) {
  validate_state(s, "beam_split");
  const double nl = branch_norm2(s.grid, s.left);
  if (nl != 0.0) {
    throw ConfigError("beam_split: input must be a pure right mover");
  }
  const double n2 = waveguide_norm2(s);
  if (n2 == 0.0) return s;
  if (std::abs(n2 - 1.0) > 1e-8) {
    throw ConfigError("beam_split: input pulse is not normalized");
  }
  Waveguide1DState out = s;
  const double scale = 1.0 / std::sqrt(2.0);
  for (std::size_t i = 0; i < out.grid.n; ++i) {
    out.right[i] = scale * s.right[i];
  }
  out.left = out.right;
  out.helicity_left = s.helicity_right;
  return out;
}

Waveguide1DState recombine(const Waveguide1DState& s) {
  validate_state(s, "recombine");
  if (s.helicity_right != s.helicity_left) {
    throw ConfigError("recombine: branch helicities differ");
  }
  Waveguide1DState out = s;
  const double scale = 1.0 / std::sqrt(2.0);
  for (std::size_t i = 0; i < out.grid.n; ++i) {
    out.right[i] = scale * (s.right[i] + s.left[i]);
    out.left[i] = scale * (s.right[i] - s.left[i]);
  }
  return out;
}

DensityField1D position_density(const Waveguide1DState& s) {
  validate_state(s, "position_density");
  DensityField1D rho;
  rho.grid = s.grid;
  rho.values.resize(s.grid.n);
  const bool coherent = (s.helicity_right == s.helicity_left);
  for (std::size_t i = 0; i < s.grid.n; ++i) {
    rho.values[i] = coherent ? std::norm(s.right[i] + s.left[i])
                             : std::norm(s.right[i]) + std::norm(s.left[i]);
    rho.total += rho.values[i];
  }
  rho.total *= s.grid.dx;
  return rho;
}

std::vector<double> classical_intensity(const Waveguide1DState& s) {
  validate_state(s, "classical_intensity");
  std::vector<double> out(s.grid.n);
  const bool coherent = (s.helicity_right == s.helicity_left);
  for (std::size_t i = 0; i < s.grid.n; ++i) {
    const double i1 = std::norm(s.right[i]);
    const double i2 = std::norm(s.left[i]);
    double v = i1 + i2;
    if (coherent && i1 > 0.0 && i2 > 0.0) {
      const double dphi = std::arg(s.right[i]) - std::arg(s.left[i]);
      v += 2.0 * std::sqrt(i1 * i2) * std::cos(dphi);
    }
    out[i] = v;
  }
  return out;
}

FringeResult fringe_pattern(const Waveguide1DState& s) {
  FringeResult res;
  res.density = position_density(s);
  const double nr = branch_norm2(s.grid, s.right);
  const double nl = branch_norm2(s.grid, s.left);
  double cross = 0.0;
  for (std::size_t i = 0; i < s.grid.n; ++i) {
    cross += std::abs(s.right[i]) * std::abs(s.left[i]);
  }
  cross *= s.grid.dx;
  if (nr == 0.0 || nl == 0.0 || cross < 1e-6 * std::sqrt(nr * nl)) {
    std::clog << "fringe_pattern: branches do not overlap, visibility 0\n";
    return res;
  }

  const auto& v = res.density.values;
  std::vector<std::pair<double, double>> maxima;
  std::vector<std::pair<double, double>> minima;
  for (std::size_t i = 1; i + 1 < v.size(); ++i) {
    if (v[i] > v[i - 1] && v[i] >= v[i + 1]) {
      maxima.push_back(refine_extremum(res.density, i));
    } else if (v[i] < v[i - 1] && v[i] <= v[i + 1]) {
      minima.push_back(refine_extremum(res.density, i));
    }
  }
  if (maxima.empty() || minima.empty()) return res;

  const auto peak = *std::max_element(
      maxima.begin(), maxima.end(),
      [](const auto& a, const auto& b) { return a.second < b.second; });
  // contrast against the smaller minimum bracketing the global peak
  double floor_val = -1.0;
  for (std::size_t i = 0; i < minima.size(); ++i) {
    if (minima[i].first > peak.first) {
      floor_val = minima[i].second;
      if (i > 0) floor_val = std::min(floor_val, minima[i - 1].second);
      break;
    }
  }
  if (floor_val < 0.0) floor_val = minima.back().second;
  floor_val = std::max(floor_val, 0.0);
  res.visibility = (peak.second - floor_val) / (peak.second + floor_val);

  // average spacing over the upper half of the envelope
  std::vector<double> strong;
  for (const auto& m : maxima) {
    if (m.second >= 0.5 * peak.second) strong.push_back(m.first);
  }
  if (strong.size() >= 2) {
    res.period = (strong.back() - strong.front()) /
                 static_cast<double>(strong.size() - 1);
  }
  return res;
}

}  // namespace photonwave
