#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "photonwave/grid.hpp"

namespace photonwave {

// Runner experiment names, in documentation order.
const std::vector<std::string>& experiment_names();
bool is_experiment(const std::string& name);

// One flat key set shared by every experiment, with per-experiment defaults.
// Dimensionful values are in the internal units c = hbar = eps0 = 1.
struct ExperimentConfig {
  std::string experiment;

  GridSpec grid;  // spectral quadrature: n_radial, n_costheta, n_phi, k_min, k_max

  // spherical packet parameters
  double sigma_x = 0.25;      // localization width of the regulated point state
  double time_factor = 20.0;  // evolve to t = time_factor * sigma_x / c

  // sampled two-path channel
  int samples = 8192;         // cells across [-x_half_span, x_half_span)
  double x_half_span = 8.0;
  double pulse_sigma = 0.35;
  double k0 = 12.0;           // carrier wavenumber

  // detection Monte Carlo
  std::uint64_t trials = 1000000;
  std::uint64_t seed = 20240817;

  // occupation-number layer
  int n_max = 40;
  double alpha_re = 2.0;
  double alpha_im = 0.0;
  int pairs = 100;            // random point pairs for the vacuum identity

  int refine_levels = 2;      // lattice halvings for the source residual

  int threads = 0;            // 0 = library default
  std::string out_dir = "out";
};

// Defaults for one experiment; unknown names throw ConfigError.
ExperimentConfig default_config(const std::string& experiment);

// Parse and range-check `text` over the defaults of `experiment`.  The text
// is either `key = value` lines (with # comments) or a flat JSON object.
// Unknown keys, type mismatches, and out-of-range values throw ConfigError
// naming the offending key (and line, for the key-value format).  Empty
// text yields the defaults.
ExperimentConfig validate_config(const std::string& text,
                                 const std::string& experiment);

// validate_config over the contents of `path`
ExperimentConfig load_config(const std::string& path,
                             const std::string& experiment);

// Range checks shared by every entry point; throws ConfigError.
void check_config(const ExperimentConfig& cfg);

}  // namespace photonwave
