#include "bgn/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include <json.hpp>

#include "bgn/errors.hpp"

namespace bgn {

namespace {

struct Entry {
  std::string key;
  std::string value;
  int line = 0;
};

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

double parse_double(const Entry& e) {
  try {
    size_t pos = 0;
    const double v = std::stod(e.value, &pos);
    if (pos != e.value.size()) throw std::invalid_argument("");
    if (!std::isfinite(v)) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    throw ParseError("expected a finite number for '" + e.key + "', got '" + e.value + "'",
                     e.line);
  }
}

int parse_int(const Entry& e) {
  try {
    size_t pos = 0;
    const long v = std::stol(e.value, &pos);
    if (pos != e.value.size()) throw std::invalid_argument("");
    return static_cast<int>(v);
  } catch (const std::exception&) {
    throw ParseError("expected an integer for '" + e.key + "', got '" + e.value + "'", e.line);
  }
}

ProfileKind parse_kind(const Entry& e) {
  const std::string v = lower(trim(e.value));
  if (v == "flat" || v == "rest") return ProfileKind::flat;
  if (v == "gaussian") return ProfileKind::gaussian;
  if (v == "sinusoid") return ProfileKind::sinusoid;
  throw ParseError("unknown profile '" + e.value + "' for '" + e.key +
                       "' (expected flat|rest|gaussian|sinusoid)",
                   e.line);
}

using Setter = std::function<void(Scenario&, const Entry&)>;

const std::map<std::string, Setter>& setter_table() {
  static const std::map<std::string, Setter> table = [] {
    std::map<std::string, Setter> t;
    auto set_d = [&t](const std::string& key, std::function<double&(Scenario&)> ref) {
      t[key] = [ref](Scenario& s, const Entry& e) { ref(s) = parse_double(e); };
    };
    auto set_i = [&t](const std::string& key, std::function<int&(Scenario&)> ref) {
      t[key] = [ref](Scenario& s, const Entry& e) { ref(s) = parse_int(e); };
    };
    auto set_k = [&t](const std::string& key, std::function<Profile&(Scenario&)> ref) {
      t[key] = [ref](Scenario& s, const Entry& e) { ref(s).kind = parse_kind(e); };
    };

    set_d("params.mu", [](Scenario& s) -> double& { return s.params.mu; });
    set_d("params.eps", [](Scenario& s) -> double& { return s.params.eps; });
    set_d("params.delta", [](Scenario& s) -> double& { return s.params.delta; });
    set_d("params.gamma", [](Scenario& s) -> double& { return s.params.gamma; });
    set_d("params.beta", [](Scenario& s) -> double& { return s.params.beta; });
    set_d("params.bo_inv", [](Scenario& s) -> double& { return s.params.bo_inv; });
    set_d("params.M", [](Scenario& s) -> double& { return s.params.M; });
    set_d("params.nu0", [](Scenario& s) -> double& { return s.params.nu0; });

    set_d("bounds.mu_max", [](Scenario& s) -> double& { return s.bounds.mu_max; });
    set_d("bounds.delta_min", [](Scenario& s) -> double& { return s.bounds.delta_min; });
    set_d("bounds.delta_max", [](Scenario& s) -> double& { return s.bounds.delta_max; });
    set_d("bounds.beta_max", [](Scenario& s) -> double& { return s.bounds.beta_max; });
    set_d("bounds.bo_inv_max", [](Scenario& s) -> double& { return s.bounds.bo_inv_max; });

    set_d("grid.L", [](Scenario& s) -> double& { return s.grid.length; });
    set_i("grid.n", [](Scenario& s) -> int& { return s.grid.n; });

    set_k("bathymetry.profile", [](Scenario& s) -> Profile& { return s.bathymetry; });
    set_d("bathymetry.height", [](Scenario& s) -> double& { return s.bathymetry.amplitude; });
    set_d("bathymetry.width", [](Scenario& s) -> double& { return s.bathymetry.width; });
    set_d("bathymetry.center", [](Scenario& s) -> double& { return s.bathymetry.center; });
    set_i("bathymetry.k", [](Scenario& s) -> int& { return s.bathymetry.k; });

    set_k("init.zeta.profile", [](Scenario& s) -> Profile& { return s.init_zeta; });
    set_d("init.zeta.amp", [](Scenario& s) -> double& { return s.init_zeta.amplitude; });
    set_d("init.zeta.width", [](Scenario& s) -> double& { return s.init_zeta.width; });
    set_d("init.zeta.center", [](Scenario& s) -> double& { return s.init_zeta.center; });
    set_i("init.zeta.k", [](Scenario& s) -> int& { return s.init_zeta.k; });

    set_k("init.v.profile", [](Scenario& s) -> Profile& { return s.init_v; });
    set_d("init.v.amp", [](Scenario& s) -> double& { return s.init_v.amplitude; });
    set_d("init.v.width", [](Scenario& s) -> double& { return s.init_v.width; });
    set_d("init.v.center", [](Scenario& s) -> double& { return s.init_v.center; });
    set_i("init.v.k", [](Scenario& s) -> int& { return s.init_v.k; });

    set_d("control.cfl", [](Scenario& s) -> double& { return s.control.cfl; });
    set_d("control.T", [](Scenario& s) -> double& { return s.control.T; });
    set_i("control.snapshot_stride",
          [](Scenario& s) -> int& { return s.control.snapshot_stride; });
    set_d("control.s_energy", [](Scenario& s) -> double& { return s.control.s_energy; });
    set_d("control.h01", [](Scenario& s) -> double& { return s.control.thresholds.h01; });
    set_d("control.h02", [](Scenario& s) -> double& { return s.control.thresholds.h02; });
    set_d("control.h03", [](Scenario& s) -> double& { return s.control.thresholds.h03; });
    set_d("control.lambda_cap", [](Scenario& s) -> double& { return s.control.lambda_cap; });
    return t;
  }();
  return table;
}

void apply_entries(Scenario& scenario, const std::vector<Entry>& entries) {
  const auto& table = setter_table();
  for (const Entry& e : entries) {
    const auto it = table.find(e.key);
    if (it == table.end()) throw ParseError("unknown config key '" + e.key + "'", e.line);
    it->second(scenario, e);
  }
}

std::vector<Entry> parse_flat(const std::string& text) {
  std::vector<Entry> entries;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    if (hash != std::string::npos) raw = raw.substr(0, hash);
    const std::string s = trim(raw);
    if (s.empty()) continue;
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw ParseError("expected 'key = value'", line);
    Entry e;
    e.key = trim(s.substr(0, eq));
    e.value = trim(s.substr(eq + 1));
    e.line = line;
    if (e.key.empty() || e.value.empty()) throw ParseError("expected 'key = value'", line);
    entries.push_back(std::move(e));
  }
  return entries;
}

void flatten_json(const nlohmann::json& node, const std::string& prefix,
                  std::vector<Entry>& out) {
  if (node.is_object()) {
    for (const auto& [key, value] : node.items()) {
      flatten_json(value, prefix.empty() ? key : prefix + "." + key, out);
    }
    return;
  }
  Entry e;
  e.key = prefix;
  if (node.is_string())
    e.value = node.get<std::string>();
  else
    e.value = node.dump();
  out.push_back(std::move(e));
}

std::vector<Entry> parse_json_text(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& err) {
    const size_t upto = std::min(text.size(), err.byte);
    const int line = 1 + static_cast<int>(std::count(text.begin(), text.begin() + upto, '\n'));
    throw ParseError(std::string("invalid JSON: ") + err.what(), line);
  }
  if (!doc.is_object()) throw ParseError("top-level JSON value must be an object", 1);
  std::vector<Entry> entries;
  flatten_json(doc, "", entries);
  return entries;
}

void validate_scenario(const Scenario& s) {
  auto fail = [](const std::string& what) { throw ParseError(what); };
  if (!(s.params.mu > 0.0)) fail("params.mu must be positive");
  if (!(s.params.delta > 0.0)) fail("params.delta must be positive");
  if (s.params.eps < 0.0) fail("params.eps must be nonnegative");
  if (s.params.beta < 0.0) fail("params.beta must be nonnegative");
  if (s.params.gamma < 0.0) fail("params.gamma must be nonnegative");
  if (s.params.bo_inv < 0.0) fail("params.bo_inv must be nonnegative");
  if (!(s.params.nu0 > 0.0)) fail("params.nu0 must be positive");
  if (!(s.grid.length > 0.0)) fail("grid.L must be positive");
  if (s.grid.n < 8 || s.grid.n % 2 != 0) fail("grid.n must be even and at least 8");
  if (!(s.control.T > 0.0)) fail("control.T must be positive");
  if (!(s.control.cfl > 0.0 && s.control.cfl <= 1.0)) fail("control.cfl must lie in (0, 1]");
  if (s.control.snapshot_stride < 1) fail("control.snapshot_stride must be at least 1");
  if (s.control.s_energy < 0.0) fail("control.s_energy must be nonnegative");
  for (const auto* p : {&s.bathymetry, &s.init_zeta, &s.init_v}) {
    if (p->kind == ProfileKind::gaussian && !(p->width > 0.0))
      fail("gaussian profiles need a positive width");
    if (p->kind == ProfileKind::sinusoid && p->k < 1) fail("sinusoid profiles need k >= 1");
  }
}

}  // namespace

const std::vector<std::string>& scenario_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> k;
    for (const auto& [key, setter] : setter_table()) k.push_back(key);
    return k;
  }();
  return keys;
}

Scenario parse_scenario_text(const std::string& text, bool as_json) {
  Scenario scenario;
  apply_entries(scenario, as_json ? parse_json_text(text) : parse_flat(text));
  validate_scenario(scenario);
  return scenario;
}

Scenario parse_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();

  const auto first = text.find_first_not_of(" \t\r\n");
  const bool as_json = first != std::string::npos && text[first] == '{';

  Scenario scenario;
  apply_entries(scenario, as_json ? parse_json_text(text) : parse_flat(text));
  apply_env_overrides(scenario);
  validate_scenario(scenario);
  return scenario;
}

void apply_env_overrides(Scenario& scenario) {
  std::vector<Entry> entries;
  for (const std::string& key : scenario_keys()) {
    std::string name = "BILAYER_GN_" + key;
    std::transform(name.begin(), name.end(), name.begin(), [](unsigned char c) {
      return c == '.' ? '_' : static_cast<char>(std::toupper(c));
    });
    if (const char* value = std::getenv(name.c_str())) {
      entries.push_back(Entry{key, value, 0});
    }
  }
  apply_entries(scenario, entries);
}

State initial_state(const PeriodicGrid& grid, const Scenario& scenario) {
  State state;
  state.t = 0.0;
  state.zeta = sample_profile(grid, scenario.init_zeta);
  state.v = sample_profile(grid, scenario.init_v);
  return state;
}

double final_time(const Scenario& scenario) {
  const double m = std::max(scenario.params.eps, scenario.params.beta);
  return m > 0.0 ? scenario.control.T / m : scenario.control.T;
}

SimulateOptions simulate_options(const Scenario& scenario) {
  SimulateOptions options;
  options.control.cfl = scenario.control.cfl;
  options.control.T = scenario.control.T;
  options.control.snapshot_stride = scenario.control.snapshot_stride;
  options.thresholds = scenario.control.thresholds;
  options.s_energy = scenario.control.s_energy;
  return options;
}

SimulationResult run_scenario(const Scenario& scenario) {
  const PeriodicGrid grid(scenario.grid.length, scenario.grid.n);
  const Bathymetry bathy = make_bathymetry(grid, scenario.bathymetry);
  const State initial = initial_state(grid, scenario);
  const ModelCoefficients coeffs = compute_coefficients(scenario.params);
  return simulate(grid, initial, bathy, scenario.params, coeffs, simulate_options(scenario));
}

}  // namespace bgn
