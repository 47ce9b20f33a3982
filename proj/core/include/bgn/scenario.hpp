#pragma once

#include <string>
#include <vector>

#include "bgn/dynamics.hpp"
#include "bgn/fields.hpp"
#include "bgn/regime.hpp"

namespace bgn {

struct GridSpec {
  double length = 20.0;
  int n = 256;
};

struct ControlSpec {
  double cfl = 0.5;
  double T = 1.0;  // horizon numerator: t_final = T / max(eps, beta)
  int snapshot_stride = 10;
  double s_energy = 2.0;
  Thresholds thresholds;
  double lambda_cap = 10.0;
};

// A full run description, read from a flat key/value file (dotted section
// prefixes, e.g. `params.mu = 0.04`) or from a JSON document with the same
// paths. Environment variables prefixed BILAYER_GN_ override file entries
// (dots map to underscores: BILAYER_GN_PARAMS_MU).
struct Scenario {
  RegimeParams params;
  RegimeBounds bounds;
  GridSpec grid;
  Profile bathymetry;
  Profile init_zeta;
  Profile init_v;
  ControlSpec control;
};

// All recognized config keys in canonical dotted form.
const std::vector<std::string>& scenario_keys();

// Parses a config file (flat text or JSON, sniffed), applies environment
// overrides, validates. Throws ParseError (with a line number for flat
// files) on malformed input or unknown keys, IoError if unreadable.
Scenario parse_scenario_file(const std::string& path);

// Same, from memory; `as_json` selects the frontend explicitly.
Scenario parse_scenario_text(const std::string& text, bool as_json = false);

void apply_env_overrides(Scenario& scenario);

State initial_state(const PeriodicGrid& grid, const Scenario& scenario);
double final_time(const Scenario& scenario);
SimulateOptions simulate_options(const Scenario& scenario);

// Assembles grid, bathymetry, initial data and coefficients, then runs.
SimulationResult run_scenario(const Scenario& scenario);

}  // namespace bgn
