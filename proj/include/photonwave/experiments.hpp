#pragma once
#include <string>
#include <vector>

#include "photonwave/config.hpp"

namespace photonwave {

// One named quantity from an experiment run.  `threshold` states the rule
// the value was held to, in words; an empty threshold marks a purely
// informational value, which cannot fail.
struct Metric {
  std::string name;
  double value = 0.0;
  std::string threshold;
  bool pass = true;
};

struct RunReport {
  int schema_version = 1;
  std::string experiment;
  std::vector<Metric> metrics;
  // measured wall time; written to run.log only, never serialized into
  // report.json, so reports stay byte-identical for a fixed config and seed
  double wall_seconds = 0.0;

  bool pass() const;
};

// report.json payload: schema version, experiment, parameter echo, metric
// values, per-check verdicts, overall verdict.  out_dir is plumbing rather
// than a parameter and is left out of the echo, so runs that differ only in
// their output directory serialize identically.
std::string report_json(const RunReport& rep, const ExperimentConfig& cfg);

// Runs cfg.experiment and writes report.json, run.log and the experiment's
// CSV tables under cfg.out_dir (created if absent).
RunReport run_experiment(const ExperimentConfig& cfg);

}  // namespace photonwave
