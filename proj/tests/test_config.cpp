#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <string>

#include "photonwave/common.hpp"
#include "photonwave/config.hpp"

using namespace photonwave;

namespace {

template <typename F>
std::string config_error_message(F&& f) {
  try {
    f();
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "<no ConfigError thrown>";
}

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("defaults are per experiment") {
  const ExperimentConfig loc = default_config("localize");
  CHECK(loc.experiment == "localize");
  CHECK(loc.grid.n_radial == 256);
  CHECK(loc.grid.n_costheta == 64);
  CHECK(loc.grid.n_phi == 32);
  CHECK(loc.sigma_x == 0.6);
  CHECK(loc.k0 == 5.0);
  CHECK(loc.seed == 20240817);
  CHECK(default_config("hegerfeldt").sigma_x == 0.25);

  const ExperimentConfig fr = default_config("fringes");
  CHECK(fr.pulse_sigma == 2.0);
  CHECK(fr.k0 == 40.0);

  const ExperimentConfig fv = default_config("fock-verify");
  CHECK(fv.grid.n_radial == 8);
  CHECK(fv.grid.n_costheta == 4);
  CHECK(fv.grid.n_phi == 4);
  CHECK(fv.n_max == 40);
  CHECK(fv.pairs == 100);

  CHECK(experiment_names().size() == 10);
  CHECK(is_experiment("beamsplit"));
  CHECK(!is_experiment("beamsplitter"));
  const std::string msg =
      config_error_message([] { (void)default_config("beamsplitter"); });
  CHECK(contains(msg, "unknown experiment 'beamsplitter'"));
  CHECK(contains(msg, "expected one of"));
}

TEST_CASE("empty text yields the defaults") {
  const ExperimentConfig parsed = validate_config("", "beamsplit");
  const ExperimentConfig def = default_config("beamsplit");
  CHECK(parsed.experiment == def.experiment);
  CHECK(parsed.grid.n_radial == def.grid.n_radial);
  CHECK(parsed.sigma_x == def.sigma_x);
  CHECK(parsed.samples == def.samples);
  CHECK(parsed.trials == def.trials);
  CHECK(parsed.out_dir == def.out_dir);
  CHECK(validate_config("   \n\t\n", "beamsplit").seed == def.seed);
}

TEST_CASE("key value text is parsed with comments and overrides") {
  const std::string text =
      "# two-path setup\n"
      "samples = 4096\n"
      "pulse_sigma = 0.5   # narrow pulse\n"
      "k0 = 24.0\n"
      "seed = 99\n"
      "\n"
      "out_dir = run1\n";
  const ExperimentConfig cfg = validate_config(text, "beamsplit");
  CHECK(cfg.samples == 4096);
  CHECK(cfg.pulse_sigma == 0.5);
  CHECK(cfg.k0 == 24.0);
  CHECK(cfg.seed == 99);
  CHECK(cfg.out_dir == "run1");
  // untouched keys keep their defaults
  CHECK(cfg.x_half_span == 8.0);
}

TEST_CASE("malformed key value text names the line and key") {
  auto message = [](const std::string& text) {
    return config_error_message(
        [&] { (void)validate_config(text, "localize"); });
  };
  CHECK(contains(message("nonsense\n"), "line 1"));
  CHECK(contains(message("nonsense\n"), "expected 'key = value'"));
  CHECK(contains(message("\nwidget = 3\n"), "line 2"));
  CHECK(contains(message("widget = 3\n"), "unknown key 'widget'"));
  CHECK(contains(message("k_max =\n"), "key 'k_max' has no value"));
  CHECK(contains(message("k_max = # lost\n"), "key 'k_max' has no value"));
  CHECK(contains(message("n_radial = twelve\n"),
                 "key 'n_radial' expects an integer"));
  CHECK(contains(message("k_min = 0.05x\n"), "key 'k_min' expects a number"));
  CHECK(contains(message("seed = -4\n"), "non-negative integer"));
  CHECK(contains(message("seed = 1\nseed = 2\n"), "duplicate key 'seed'"));
  CHECK(contains(message("= 3\n"), "missing key"));
}

TEST_CASE("json config is accepted with the same key set") {
  const std::string text =
      "{\"n_radial\": 64, \"k_max\": 9.5, \"out_dir\": \"jdir\","
      " \"trials\": 5000, \"alpha_im\": -0.25}";
  const ExperimentConfig cfg = validate_config(text, "coherent-limit");
  CHECK(cfg.grid.n_radial == 64);
  CHECK(cfg.grid.k_max == 9.5);
  CHECK(cfg.out_dir == "jdir");
  CHECK(cfg.trials == 5000);
  CHECK(cfg.alpha_im == -0.25);

  auto message = [](const std::string& text) {
    return config_error_message(
        [&] { (void)validate_config(text, "coherent-limit"); });
  };
  CHECK(contains(message("{\"widget\": 3}"), "unknown key 'widget'"));
  CHECK(contains(message("{\"samples\": 2.5}"),
                 "key 'samples' expects an integer"));
  CHECK(contains(message("{\"k_min\": \"small\"}"),
                 "key 'k_min' expects a number"));
  CHECK(contains(message("{\"out_dir\": 7}"), "key 'out_dir' expects a string"));
  CHECK(contains(message("{\"seed\": -1}"), "non-negative integer"));
  CHECK(contains(message("[1, 2]"), "top level must be an object"));
  CHECK(contains(message("{\"k_min\": }"), "config JSON"));
}

TEST_CASE("range checks reject unusable values") {
  auto message = [](const std::string& text) {
    return config_error_message(
        [&] { (void)validate_config(text, "localize"); });
  };
  CHECK(contains(message("k_min = 0\n"), "k = 0 excluded"));
  CHECK(contains(message("k_min = -1\n"), "k = 0 excluded"));
  CHECK(contains(message("k_min = 8\nk_max = 4\n"),
                 "k_max must exceed k_min"));
  CHECK(contains(message("n_radial = 0\n"), "n_radial must be positive"));
  CHECK(contains(message("n_radial = 2000000\n"), "cap"));
  CHECK(contains(message("sigma_x = -0.1\n"), "sigma_x must be positive"));
  CHECK(contains(message("sigma_x = 80\n"), "use sigma_x <="));
  CHECK(contains(message("pulse_sigma = 3.0\n"), "use pulse_sigma <="));
  CHECK(contains(message("samples = 8\n"), "samples must be at least 16"));
  CHECK(contains(message("samples = 64\nk0 = 40\n"), "use samples >="));
  CHECK(contains(message("trials = 0\n"), "trials must be at least 1"));
  CHECK(contains(message("n_max = 0\n"), "n_max must be positive"));
  CHECK(contains(message("refine_levels = 7\n"),
                 "refine_levels must be between 2 and 5"));
  CHECK(contains(message("threads = -2\n"), "threads must be between"));
  CHECK(contains(message("{\"out_dir\": \"\"}"), "out_dir must not be empty"));

  // a fringes carrier of 40 needs the default 8192 samples
  CHECK_NOTHROW((void)validate_config("", "fringes"));
  const std::string fewer = "samples = 128\n";
  CHECK(contains(config_error_message(
                     [&] { (void)validate_config(fewer, "fringes"); }),
                 "use samples >="));
}

TEST_CASE("load_config reads files and reports missing ones") {
  const std::string path = "test_config_tmp.props";
  {
    std::ofstream out(path);
    out << "seed = 123\nthreads = 2\n";
  }
  const ExperimentConfig cfg = load_config(path, "fringes");
  CHECK(cfg.seed == 123);
  CHECK(cfg.threads == 2);
  CHECK(cfg.pulse_sigma == 2.0);
  std::remove(path.c_str());

  const std::string msg = config_error_message(
      [&] { (void)load_config("no_such_file.props", "fringes"); });
  CHECK(contains(msg, "cannot read config file"));
}
