#include "bgn/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <ostream>

#include <json.hpp>

#include "bgn/diagnostics.hpp"
#include "bgn/dynamics.hpp"
#include "bgn/errors.hpp"
#include "bgn/io.hpp"
#include "bgn/scenario.hpp"

namespace bgn::cli {

namespace {

int run_guarded(const std::function<int()>& body, std::ostream& err) {
  try {
    return body();
  } catch (const ParseError& e) {
    err << "config error: " << e.what() << "\n";
    return exit_config;
  } catch (const IoError& e) {
    err << "io error: " << e.what() << "\n";
    return exit_io;
  } catch (const NonPositiveNu& e) {
    err << "config error: " << e.what() << "\n";
    return exit_config;
  } catch (const DepthViolation& e) {
    err << "condition violation: " << e.what() << "\n";
    return exit_condition;
  } catch (const EllipticityViolation& e) {
    err << "condition violation: " << e.what() << "\n";
    return exit_condition;
  } catch (const SymmetrizerViolation& e) {
    err << "condition violation: " << e.what() << "\n";
    return exit_condition;
  } catch (const ModelError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return exit_numeric;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "io error: " << e.what() << "\n";
    return exit_io;
  } catch (const std::invalid_argument& e) {
    err << "config error: " << e.what() << "\n";
    return exit_config;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_numeric;
  }
}

const char* condition_name(RunStatus status) {
  switch (status) {
    case RunStatus::halted_h1: return "H1";
    case RunStatus::halted_h2: return "H2";
    case RunStatus::halted_h3: return "H3";
    default: return nullptr;
  }
}

double sup_norm(const Field& f) {
  double m = 0.0;
  for (double x : f) m = std::max(m, std::abs(x));
  return m;
}

std::string snapshot_name(size_t index) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "snapshots/snapshot_%06zu.csv", index);
  return buf;
}

}  // namespace

int cmd_coeffs(const std::string& config_path, std::ostream& out, std::ostream& err) {
  return run_guarded(
      [&]() {
        const Scenario scenario = parse_scenario_file(config_path);
        const ModelCoefficients c = compute_coefficients(scenario.params);
        const RegimeReport report = validate_regime(scenario.params, scenario.bounds);

        out << "parameters:\n";
        const auto& p = scenario.params;
        out << "  mu       = " << format_double(p.mu) << "\n"
            << "  eps      = " << format_double(p.eps) << "\n"
            << "  delta    = " << format_double(p.delta) << "\n"
            << "  gamma    = " << format_double(p.gamma) << "\n"
            << "  beta     = " << format_double(p.beta) << "\n"
            << "  bo_inv   = " << format_double(p.bo_inv) << "\n"
            << "  M        = " << format_double(p.M) << "\n"
            << "  nu0      = " << format_double(p.nu0) << "\n";
        out << "coefficients:\n";
        out << "  lambda   = " << format_double(c.lambda) << "\n"
            << "  alpha    = " << format_double(c.alpha) << "\n"
            << "  theta    = " << format_double(c.theta) << "\n"
            << "  alpha1   = " << format_double(c.alpha1) << "\n"
            << "  theta1   = " << format_double(c.theta1) << "\n"
            << "  nu       = " << format_double(c.nu) << "\n"
            << "  kappa1   = " << format_double(c.kappa1) << "\n"
            << "  kappa2   = " << format_double(c.kappa2) << "\n"
            << "  omega1   = " << format_double(c.omega1) << "\n"
            << "  omega2   = " << format_double(c.omega2) << "\n"
            << "  varsigma = " << format_double(c.varsigma) << "\n"
            << "  kappa    = " << format_double(c.kappa) << "\n"
            << "  omega    = " << format_double(c.omega) << "\n";
        out << "regime: in_SW = " << (report.in_sw ? "true" : "false")
            << ", in_CH = " << (report.in_ch ? "true" : "false") << "\n";
        for (const std::string& v : report.violations) out << "  violated: " << v << "\n";
        return exit_ok;
      },
      err);
}

int cmd_check(const std::string& config_path, std::ostream& out, std::ostream& err) {
  return run_guarded(
      [&]() {
        const Scenario scenario = parse_scenario_file(config_path);
        const PeriodicGrid grid(scenario.grid.length, scenario.grid.n);
        const Bathymetry bathy = make_bathymetry(grid, scenario.bathymetry);
        const State initial = initial_state(grid, scenario);
        const ModelCoefficients coeffs = compute_coefficients(scenario.params);
        const ConditionReport rep = check_conditions(grid, initial, bathy, scenario.params,
                                                     coeffs, scenario.control.thresholds);

        const auto& th = scenario.control.thresholds;
        out << "min_h1 = " << format_double(rep.min_h1) << "  min_h2 = "
            << format_double(rep.min_h2) << "  (threshold " << format_double(th.h01) << ")\n";
        out << "min_q1 = " << format_double(rep.min_q1) << "  min_q2 = "
            << format_double(rep.min_q2) << "  (threshold " << format_double(th.h02) << ")\n";
        out << "min_H3 = " << format_double(rep.min_h3) << "  (threshold "
            << format_double(th.h03) << ")\n";
        out << "H1: " << (rep.ok_h1 ? "ok" : "FAIL") << "  H2: " << (rep.ok_h2 ? "ok" : "FAIL")
            << "  H3: " << (rep.ok_h3 ? "ok" : "FAIL") << "\n";
        if (rep.all_ok()) {
          out << "status: ok\n";
          return exit_ok;
        }
        const char* name = !rep.ok_h1 ? "H1" : (!rep.ok_h2 ? "H2" : "H3");
        out << "status: halted_" << name;
        if (rep.first_violation_location)
          out << " (first violation at node " << *rep.first_violation_location << ", x = "
              << format_double(grid.node(*rep.first_violation_location)) << ")";
        out << "\n";
        return exit_condition;
      },
      err);
}

int cmd_run(const std::string& config_path, const std::string& out_dir, std::uint64_t seed,
            std::ostream& out, std::ostream& err) {
  return run_guarded(
      [&]() {
        const Scenario scenario = parse_scenario_file(config_path);
        const PeriodicGrid grid(scenario.grid.length, scenario.grid.n);
        const Bathymetry bathy = make_bathymetry(grid, scenario.bathymetry);
        const State initial = initial_state(grid, scenario);
        const ModelCoefficients coeffs = compute_coefficients(scenario.params);

        namespace fs = std::filesystem;
        const fs::path root(out_dir);
        std::error_code ec;
        fs::create_directories(root / "snapshots", ec);
        if (ec || !fs::is_directory(root / "snapshots"))
          throw IoError("cannot create output directory '" + (root / "snapshots").string() + "'");

        const SimulationResult result =
            simulate(grid, initial, bathy, scenario.params, coeffs, simulate_options(scenario));

        std::vector<std::string> snapshot_files;
        for (size_t i = 0; i < result.snapshots.size(); ++i) {
          const std::string rel = snapshot_name(i);
          write_snapshot_csv((root / rel).string(), grid, result.snapshots[i], bathy);
          snapshot_files.push_back(rel);
        }
        write_diagnostics_csv((root / "diagnostics.csv").string(), result.diagnostics);

        nlohmann::json summary;
        summary["status"] = to_string(result.status);
        summary["final_time"] = result.final_state.t;
        summary["steps"] = result.steps;
        summary["seed"] = seed;
        if (const char* name = condition_name(result.status)) {
          summary["violated_condition"] = name;
          summary["violation_time"] = result.violation_time;
          summary["violation_index"] = result.violation_index;
        } else {
          summary["violated_condition"] = nullptr;
        }
        if (!result.message.empty()) summary["message"] = result.message;

        if (!result.diagnostics.empty()) {
          const GrowthFit fit = growth_bound_fit(result.diagnostics, scenario.params,
                                                 scenario.control.lambda_cap);
          summary["growth"] = {{"lambda", fit.lambda},
                               {"C", fit.c},
                               {"ok", fit.ok},
                               {"lambda_cap", scenario.control.lambda_cap}};
          const auto& first = result.diagnostics.front();
          const auto& last = result.diagnostics.back();
          summary["mass"] = {{"initial", first.mass},
                             {"final", last.mass},
                             {"drift", std::abs(last.mass - first.mass)}};
          summary["energy"] = {{"e0_initial", first.e0},
                               {"e0_final", last.e0},
                               {"es_final", last.es},
                               {"s", scenario.control.s_energy}};
        }
        summary["bathymetry_norms"] = {
            {"w2inf", sup_norm(bathy.b) + sup_norm(bathy.db) + sup_norm(bathy.d2b)},
            {"h4", sobolev_norm(grid, bathy.b, 4.0)}};
        summary["files"] = {{"diagnostics", "diagnostics.csv"}, {"snapshots", snapshot_files}};

        std::ofstream js((root / "summary.json").string());
        if (!js) throw IoError("cannot write summary.json");
        js << summary.dump(2) << "\n";
        if (!js) throw IoError("failed while writing summary.json");

        out << "status: " << to_string(result.status) << "\n";
        out << "final time: " << format_double(result.final_state.t) << " after "
            << result.steps << " steps\n";
        if (!result.diagnostics.empty()) {
          out << "mass drift: "
              << format_double(std::abs(result.diagnostics.back().mass -
                                        result.diagnostics.front().mass))
              << "\n";
        }
        if (const char* name = condition_name(result.status))
          out << "violated condition: " << name << " at t = "
              << format_double(result.violation_time) << "\n";
        if (!result.message.empty()) out << "message: " << result.message << "\n";
        out << "wrote " << (root / "summary.json").string() << "\n";

        switch (result.status) {
          case RunStatus::completed: return exit_ok;
          case RunStatus::failed: return exit_numeric;
          default: return exit_condition;
        }
      },
      err);
}

int cmd_orders(const std::string& config_path, const std::string& out_dir, std::ostream& out,
               std::ostream& err) {
  return run_guarded(
      [&]() {
        const Scenario scenario = parse_scenario_file(config_path);
        OrderStudyConfig config;
        config.params = scenario.params;
        config.scenario_length = scenario.grid.length;
        config.bathymetry = scenario.bathymetry;
        config.init_zeta = scenario.init_zeta;
        config.init_v = scenario.init_v;
        config.cfl = scenario.control.cfl;

        struct Row {
          const char* name;
          OrderTarget target;
        };
        const Row rows[] = {{"qbar_expansion", OrderTarget::qbar_expansion},
                            {"rbar_expansion", OrderTarget::rbar_expansion},
                            {"form_equivalence", OrderTarget::form_equivalence},
                            {"spatial", OrderTarget::spatial},
                            {"temporal", OrderTarget::temporal}};

        namespace fs = std::filesystem;
        const fs::path root(out_dir);
        std::error_code ec;
        fs::create_directories(root, ec);
        if (!fs::is_directory(root))
          throw IoError("cannot create output directory '" + root.string() + "'");

        std::ofstream csv((root / "orders.csv").string());
        if (!csv) throw IoError("cannot write orders.csv");
        csv << "study,ladder,residual\n";

        nlohmann::json doc;
        out << "study              slope   ladder\n";
        for (const Row& row : rows) {
          const OrderStudyResult res = order_study(row.target, config);
          char line[160];
          std::snprintf(line, sizeof(line), "%-18s %6.3f  ", row.name, res.slope);
          out << line;
          for (double x : res.ladder) out << format_double(x) << " ";
          out << "\n";
          for (size_t i = 0; i < res.ladder.size(); ++i)
            csv << row.name << ',' << format_double(res.ladder[i]) << ','
                << format_double(res.residuals[i]) << '\n';
          doc[row.name] = {
              {"slope", res.slope}, {"ladder", res.ladder}, {"residuals", res.residuals}};
        }
        if (!csv) throw IoError("failed while writing orders.csv");

        std::ofstream js((root / "orders.json").string());
        if (!js) throw IoError("cannot write orders.json");
        js << doc.dump(2) << "\n";

        out << "wrote " << (root / "orders.csv").string() << "\n";
        return exit_ok;
      },
      err);
}

}  // namespace bgn::cli
