#include <cstdint>
#include <exception>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "photonwave/experiments.hpp"

namespace {

const char* describe(const std::string& name) {
  if (name == "localize") return "x-space norm conservation of a localized shell packet";
  if (name == "lightcone") return "Born probability confined to the light-cone shell";
  if (name == "hegerfeldt") return "even/odd field contrast far off the light cone";
  if (name == "evenfield-tail") return "power-law fit of the even-field off-cone tail";
  if (name == "beamsplit") return "50/50 splitter probabilities and detection Monte Carlo";
  if (name == "fringes") return "two-path interference visibility, period, classical match";
  if (name == "entangle-collapse") return "helicity-entangled pair marginals and collapse";
  if (name == "fock-verify") return "ladder commutators and the vacuum field-commutator identity";
  if (name == "coherent-limit") return "coherent-state field expectation against the closed form";
  if (name == "source-emission") return "flash-source shell oracle and stencil convergence";
  return "";
}

std::string key_table() {
  return
      "Config keys (key = value lines with # comments, or a flat JSON object);\n"
      "dimensionful values are in internal units c = hbar = eps0 = 1:\n"
      "  n_radial=256 n_costheta=64 n_phi=32   spectral quadrature counts\n"
      "  k_min=0.05 k_max=12                   radial band (k = 0 excluded)\n"
      "  sigma_x=0.25 time_factor=20           packet width, evolve to t = factor*sigma_x/c\n"
      "  samples=8192 x_half_span=8            1D channel cells across [-span, span)\n"
      "  pulse_sigma=0.35 k0=12                1D pulse width and carrier\n"
      "  trials=1000000 seed=20240817          detection Monte Carlo\n"
      "  n_max=40 alpha_re=2 alpha_im=0        occupation truncation, coherent amplitude\n"
      "  pairs=100                             random point pairs for fock-verify\n"
      "  refine_levels=2                       lattice halvings for source-emission\n"
      "  threads=0                             0 = library default\n"
      "  out_dir=out                           output directory\n"
      "Per-experiment default overrides: localize/lightcone sigma_x=0.6 k0=5;\n"
      "fringes pulse_sigma=2 k0=40; fock-verify/coherent-limit grid 8x4x4.\n"
      "Exit codes: 0 all checks passed, 2 a threshold check failed, 1 error.";
}

}  // namespace

int main(int argc, char** argv) {
  using namespace photonwave;

  CLI::App app{"photonwave: first-quantized photon wave mechanics experiments"};
  app.require_subcommand(1);
  app.footer(key_table());

  std::string config_path;
  std::string out_dir;
  std::uint64_t seed = 0;
  int threads = 0;
  app.add_option("--config", config_path,
                 "experiment config file (key = value or JSON)");
  app.add_option("--out", out_dir,
                 "output directory for report.json, run.log and CSV tables")
      ->envname("PHOTONWAVE_OUT");
  auto* seed_opt = app.add_option("--seed", seed, "override the config seed");
  auto* threads_opt =
      app.add_option("--threads", threads, "override the config thread count");

  for (const auto& name : experiment_names()) {
    app.add_subcommand(name, describe(name))->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }
  const std::string experiment = app.get_subcommands().front()->get_name();

  try {
    ExperimentConfig cfg = config_path.empty()
                               ? default_config(experiment)
                               : load_config(config_path, experiment);
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    if (seed_opt->count() > 0) cfg.seed = seed;
    if (threads_opt->count() > 0) cfg.threads = threads;

    const RunReport rep = run_experiment(cfg);
    int total = 0, failed = 0;
    for (const auto& m : rep.metrics) {
      if (m.threshold.empty()) continue;
      ++total;
      if (!m.pass) ++failed;
      std::cout << (m.pass ? "  ok   " : "  FAIL ") << m.name << " = "
                << m.value << " (want " << m.threshold << ")\n";
    }
    std::cout << experiment << ": " << (total - failed) << "/" << total
              << " checks passed; report in " << cfg.out_dir << "\n";
    return rep.pass() ? 0 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
