#include "photonwave/config.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "photonwave/common.hpp"

namespace photonwave {

namespace {

enum class Kind { integer, unsigned_integer, real, text };

struct Value {
  long long i = 0;
  std::uint64_t u = 0;
  double d = 0.0;
  std::string s;
};

struct KeyDef {
  const char* name;
  Kind kind;
  void (*set)(ExperimentConfig&, const Value&);
};

constexpr KeyDef kKeys[] = {
    {"n_radial", Kind::integer,
     [](ExperimentConfig& c, const Value& v) {
       c.grid.n_radial = static_cast<int>(v.i);
     }},
    {"n_costheta", Kind::integer,
     [](ExperimentConfig& c, const Value& v) {
       c.grid.n_costheta = static_cast<int>(v.i);
     }},
    {"n_phi", Kind::integer,
     [](ExperimentConfig& c, const Value& v) {
       c.grid.n_phi = static_cast<int>(v.i);
     }},
    {"k_min", Kind::real,
     [](ExperimentConfig& c, const Value& v) { c.grid.k_min = v.d; }},
    {"k_max", Kind::real,
     [](ExperimentConfig& c, const Value& v) { c.grid.k_max = v.d; }},
    {"sigma_x", Kind::real,
     [](ExperimentConfig& c, const Value& v) { c.sigma_x = v.d; }},
    {"time_factor", Kind::real,
     [](ExperimentConfig& c, const Value& v) { c.time_factor = v.d; }},
    {"samples", Kind::integer,
     [](ExperimentConfig& c, const Value& v) {
       c.samples = static_cast<int>(v.i);
     }},
    {"x_half_span", Kind::real,
     [](ExperimentConfig& c, const Value& v) { c.x_half_span = v.d; }},
    {"pulse_sigma", Kind::real,
     [](ExperimentConfig& c, const Value& v) { c.pulse_sigma = v.d; }},
    {"k0", Kind::real,
     [](ExperimentConfig& c, const Value& v) { c.k0 = v.d; }},
    {"trials", Kind::unsigned_integer,
     [](ExperimentConfig& c, const Value& v) { c.trials = v.u; }},
    {"seed", Kind::unsigned_integer,
     [](ExperimentConfig& c, const Value& v) { c.seed = v.u; }},
    {"n_max", Kind::integer,
     [](ExperimentConfig& c, const Value& v) {
       c.n_max = static_cast<int>(v.i);
     }},
    {"alpha_re", Kind::real,
     [](ExperimentConfig& c, const Value& v) { c.alpha_re = v.d; }},
    {"alpha_im", Kind::real,
     [](ExperimentConfig& c, const Value& v) { c.alpha_im = v.d; }},
    {"pairs", Kind::integer,
     [](ExperimentConfig& c, const Value& v) {
       c.pairs = static_cast<int>(v.i);
     }},
    {"refine_levels", Kind::integer,
     [](ExperimentConfig& c, const Value& v) {
       c.refine_levels = static_cast<int>(v.i);
     }},
    {"threads", Kind::integer,
     [](ExperimentConfig& c, const Value& v) {
       c.threads = static_cast<int>(v.i);
     }},
    {"out_dir", Kind::text,
     [](ExperimentConfig& c, const Value& v) { c.out_dir = v.s; }},
};

const KeyDef* find_key(const std::string& name) {
  for (const KeyDef& k : kKeys) {
    if (name == k.name) return &k;
  }
  return nullptr;
}

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

[[noreturn]] void fail_at(int line, const std::string& what) {
  if (line > 0)
    throw ConfigError("config line " + std::to_string(line) + ": " + what);
  throw ConfigError("config: " + what);
}

Value parse_value(const KeyDef& key, const std::string& raw, int line) {
  Value v;
  const std::string text = trim(raw);
  if (text.empty())
    fail_at(line, "key '" + std::string(key.name) + "' has no value");
  try {
    std::size_t used = 0;
    switch (key.kind) {
      case Kind::integer:
        v.i = std::stoll(text, &used);
        break;
      case Kind::unsigned_integer:
        if (text[0] == '-')
          fail_at(line, "key '" + std::string(key.name) +
                            "' expects a non-negative integer, got '" + text +
                            "'");
        v.u = std::stoull(text, &used);
        break;
      case Kind::real:
        v.d = std::stod(text, &used);
        break;
      case Kind::text:
        v.s = text;
        used = text.size();
        break;
    }
    if (used != text.size()) throw std::invalid_argument("trailing characters");
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception&) {
    const char* want = key.kind == Kind::real ? "a number" : "an integer";
    fail_at(line, "key '" + std::string(key.name) + "' expects " +
                      std::string(want) + ", got '" + text + "'");
  }
  return v;
}

void apply_key_value_text(ExperimentConfig& cfg, const std::string& text) {
  std::istringstream in(text);
  std::string raw;
  std::set<std::string> seen;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::size_t hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    const std::string stripped = trim(raw);
    if (stripped.empty()) continue;
    const std::size_t eq = stripped.find('=');
    if (eq == std::string::npos)
      fail_at(line, "expected 'key = value', got '" + stripped + "'");
    const std::string name = trim(stripped.substr(0, eq));
    if (name.empty()) fail_at(line, "missing key before '='");
    const KeyDef* key = find_key(name);
    if (!key) fail_at(line, "unknown key '" + name + "'");
    if (!seen.insert(name).second)
      fail_at(line, "duplicate key '" + name + "'");
    key->set(cfg, parse_value(*key, stripped.substr(eq + 1), line));
  }
}

void apply_json_text(ExperimentConfig& cfg, const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("config JSON: ") + e.what());
  }
  if (!doc.is_object())
    throw ConfigError("config JSON: top level must be an object");
  for (const auto& [name, item] : doc.items()) {
    const KeyDef* key = find_key(name);
    if (!key) throw ConfigError("config: unknown key '" + name + "'");
    Value v;
    const std::string mismatch = "config: key '" + name + "' expects ";
    switch (key->kind) {
      case Kind::integer:
        if (!item.is_number_integer()) throw ConfigError(mismatch + "an integer");
        v.i = item.get<long long>();
        break;
      case Kind::unsigned_integer:
        if (!item.is_number_integer() || item.get<long long>() < 0)
          throw ConfigError(mismatch + "a non-negative integer");
        v.u = item.get<std::uint64_t>();
        break;
      case Kind::real:
        if (!item.is_number()) throw ConfigError(mismatch + "a number");
        v.d = item.get<double>();
        break;
      case Kind::text:
        if (!item.is_string()) throw ConfigError(mismatch + "a string");
        v.s = item.get<std::string>();
        break;
    }
    key->set(cfg, v);
  }
}

void require_positive_int(int value, const char* name, int cap) {
  if (value < 1)
    throw ConfigError(std::string(name) + " must be positive");
  if (value > cap)
    throw ConfigError(std::string(name) + " exceeds the cap " +
                      std::to_string(cap));
}

void require_positive_real(double value, const char* name) {
  if (!(value > 0.0) || !std::isfinite(value))
    throw ConfigError(std::string(name) + " must be positive and finite");
}

}  // namespace

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names = {
      "localize",         "lightcone",   "hegerfeldt",
      "evenfield-tail",   "beamsplit",   "fringes",
      "entangle-collapse", "fock-verify", "coherent-limit",
      "source-emission"};
  return names;
}

bool is_experiment(const std::string& name) {
  for (const auto& n : experiment_names())
    if (n == name) return true;
  return false;
}

ExperimentConfig default_config(const std::string& experiment) {
  if (!is_experiment(experiment)) {
    std::string all;
    for (const auto& n : experiment_names()) {
      if (!all.empty()) all += ", ";
      all += n;
    }
    throw ConfigError("unknown experiment '" + experiment +
                      "'; expected one of: " + all);
  }
  ExperimentConfig cfg;
  cfg.experiment = experiment;
  if (experiment == "fock-verify" || experiment == "coherent-limit")
    cfg.grid = GridSpec{8, 4, 4, 0.05, 12.0};
  if (experiment == "fringes") {
    cfg.pulse_sigma = 2.0;
    cfg.k0 = 40.0;
  }
  // shell packet with a radial carrier: both band edges must stay quiet for
  // the window-limited x-space norm, and the k = 0 endpoint suppressed for
  // the causal shell tails
  if (experiment == "localize" || experiment == "lightcone") {
    cfg.sigma_x = 0.6;
    cfg.k0 = 5.0;
  }
  return cfg;
}

ExperimentConfig validate_config(const std::string& text,
                                 const std::string& experiment) {
  ExperimentConfig cfg = default_config(experiment);
  std::size_t first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos) {
    if (text[first] == '{' || text[first] == '[')
      apply_json_text(cfg, text);
    else
      apply_key_value_text(cfg, text);
  }
  check_config(cfg);
  return cfg;
}

ExperimentConfig load_config(const std::string& path,
                             const std::string& experiment) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return validate_config(buf.str(), experiment);
}

void check_config(const ExperimentConfig& cfg) {
  if (!is_experiment(cfg.experiment))
    throw ConfigError("unknown experiment '" + cfg.experiment + "'");

  require_positive_int(cfg.grid.n_radial, "n_radial", 1 << 20);
  require_positive_int(cfg.grid.n_costheta, "n_costheta", 1 << 12);
  require_positive_int(cfg.grid.n_phi, "n_phi", 1 << 12);
  const long long nodes = static_cast<long long>(cfg.grid.n_radial) *
                          cfg.grid.n_costheta * cfg.grid.n_phi;
  if (nodes > (1 << 22))
    throw ConfigError("grid has " + std::to_string(nodes) +
                      " nodes; the cap is " + std::to_string(1 << 22));

  if (!(cfg.grid.k_min > 0.0))
    throw ConfigError(
        "k_min must be positive: k = 0 excluded by the covariant measure");
  if (!std::isfinite(cfg.grid.k_min) || !std::isfinite(cfg.grid.k_max))
    throw ConfigError("k_min and k_max must be finite");
  if (!(cfg.grid.k_max > cfg.grid.k_min))
    throw ConfigError("k_max must exceed k_min");

  require_positive_real(cfg.sigma_x, "sigma_x");
  const double sigma_cap = M_PI / cfg.grid.k_min;
  if (cfg.sigma_x > sigma_cap) {
    std::ostringstream msg;
    msg << "sigma_x = " << cfg.sigma_x
        << " exceeds the largest width resolvable above k_min = "
        << cfg.grid.k_min << "; use sigma_x <= " << sigma_cap;
    throw ConfigError(msg.str());
  }
  require_positive_real(cfg.time_factor, "time_factor");

  require_positive_int(cfg.samples, "samples", 1 << 22);
  if (cfg.samples < 16) throw ConfigError("samples must be at least 16");
  require_positive_real(cfg.x_half_span, "x_half_span");
  require_positive_real(cfg.pulse_sigma, "pulse_sigma");
  const double pulse_cap = cfg.x_half_span / 4.0;
  if (cfg.pulse_sigma > pulse_cap) {
    std::ostringstream msg;
    msg << "pulse_sigma = " << cfg.pulse_sigma
        << " does not fit the sample window; use pulse_sigma <= " << pulse_cap;
    throw ConfigError(msg.str());
  }
  require_positive_real(cfg.k0, "k0");
  const double dx = 2.0 * cfg.x_half_span / cfg.samples;
  if (cfg.k0 * dx >= M_PI) {
    const int need =
        static_cast<int>(std::ceil(2.0 * cfg.x_half_span * cfg.k0 / M_PI)) + 1;
    std::ostringstream msg;
    msg << "carrier k0 = " << cfg.k0 << " is not resolvable by "
        << cfg.samples << " samples; use samples >= " << need;
    throw ConfigError(msg.str());
  }

  if (cfg.trials < 1) throw ConfigError("trials must be at least 1");
  if (cfg.trials > 100000000ull)
    throw ConfigError("trials exceeds the cap 100000000");
  require_positive_int(cfg.n_max, "n_max", 512);
  require_positive_int(cfg.pairs, "pairs", 100000);
  if (!std::isfinite(cfg.alpha_re) || !std::isfinite(cfg.alpha_im))
    throw ConfigError("alpha_re and alpha_im must be finite");
  if (cfg.refine_levels < 2 || cfg.refine_levels > 5)
    throw ConfigError("refine_levels must be between 2 and 5");
  if (cfg.threads < 0 || cfg.threads > 256)
    throw ConfigError("threads must be between 0 and 256");
  if (cfg.out_dir.empty()) throw ConfigError("out_dir must not be empty");
}

}  // namespace photonwave
