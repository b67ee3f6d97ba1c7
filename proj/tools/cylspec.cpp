// Command-line front end: spectra and wavefunctions of the constrained and
// singular oscillators, barrier-position sweeps as plottable data files,
// and the module verification suites.
//
// Exit codes: 0 success, 1 bad flags or configuration, 2 solver failure,
// 3 failed verification.  Data goes to stdout (or --output); diagnostics
// to stderr.

#include <cstdio>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cylspec/format.hpp"
#include "cylspec/invariants.hpp"
#include "cylspec/oracle.hpp"
#include "cylspec/specfun.hpp"
#include "cylspec/superint2d.hpp"
#include "cylspec/susy.hpp"
#include "cylspec/weber_spectra.hpp"

namespace {

using nlohmann::json;

struct RunConfig {
  double hbar = 1.0;
  double omega = 1.0;
  double a = 1.0;
  int n_points = 401;  // sample count for wavefunction output
  double series_tol = 1e-14;
  double root_tol = 1e-11;
  double scan_step = 0.05;
  std::string format = "csv";
  std::string output;

  cylspec::EigenSolveConfig solve_config() const {
    cylspec::EigenSolveConfig cfg;
    cfg.root_tol = root_tol;
    cfg.scan_step = scan_step;
    cfg.precision.series_tol = series_tol;
    return cfg;
  }
};

// Plain `key = value` file, '#' comments.  Flag values override these.
void apply_config_file(const std::string& path, RunConfig& rc) {
  std::ifstream in(path);
  if (!in) throw CLI::ValidationError("--config", "cannot open " + path);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    const std::string stripped = trim(line);
    if (stripped.empty()) continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos)
      throw CLI::ValidationError("--config", "line " + std::to_string(lineno) +
                                                 ": expected key = value");
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    try {
      if (key == "hbar") rc.hbar = std::stod(value);
      else if (key == "omega") rc.omega = std::stod(value);
      else if (key == "a") rc.a = std::stod(value);
      else if (key == "grid.n_points") rc.n_points = std::stoi(value);
      else if (key == "tol.series_tol") rc.series_tol = std::stod(value);
      else if (key == "tol.root_tol") rc.root_tol = std::stod(value);
      else if (key == "tol.scan_step") rc.scan_step = std::stod(value);
      else
        throw CLI::ValidationError("--config", "unknown key '" + key + "'");
    } catch (const std::invalid_argument&) {
      throw CLI::ValidationError("--config", "bad value for '" + key + "'");
    }
  }
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw CLI::ValidationError("--output", "cannot open " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

void emit_levels_csv(std::ostream& os, const std::vector<cylspec::EigenLevel>& levels,
                     bool with_parity, const std::string& region) {
  os << "n,epsilon,energy," << (with_parity ? "parity" : "region") << "\n";
  for (const auto& l : levels) {
    const char* tag = l.parity == cylspec::Parity::Even  ? "even"
                      : l.parity == cylspec::Parity::Odd ? "odd"
                                                         : "none";
    os << l.n << ',' << cylspec::fmt_double(l.epsilon) << ','
       << cylspec::fmt_double(l.energy) << ',' << (with_parity ? tag : region.c_str())
       << "\n";
  }
}

json params_json(const RunConfig& rc, bool oscillator) {
  json p;
  p["hbar"] = rc.hbar;
  if (oscillator)
    p["omega"] = rc.omega;
  else
    p["a"] = rc.a;
  return p;
}

void emit_levels_json(std::ostream& os, const json& params,
                      const std::vector<cylspec::EigenLevel>& levels) {
  json doc;
  doc["params"] = params;
  doc["levels"] = json::array();
  for (const auto& l : levels) {
    json e;
    e["n"] = l.n;
    e["epsilon"] = l.epsilon;
    e["energy"] = l.energy;
    doc["levels"].push_back(e);
  }
  os << doc.dump(2) << "\n";
}

cylspec::Region parse_region(const std::string& s) {
  if (s == "R1") return cylspec::Region::R1;
  if (s == "R2") return cylspec::Region::R2;
  if (s == "R3") return cylspec::Region::R3;
  throw CLI::ValidationError("--region", "expected R1, R2 or R3, got '" + s + "'");
}

int run_verify(const std::string& suite, const RunConfig& rc) {
  using namespace cylspec;
  std::vector<CheckResult> results;
  const auto cfg = rc.solve_config();
  if (suite == "all" || suite == "specfun") {
    auto v = specfun_checks(cfg.precision);
    results.insert(results.end(), v.begin(), v.end());
  }
  if (suite == "all" || suite == "spectra") {
    auto v = spectra_checks(cfg);
    results.insert(results.end(), v.begin(), v.end());
  }
  if (suite == "all" || suite == "susy") {
    auto v = susy_checks({rc.hbar, rc.a}, cfg);
    results.insert(results.end(), v.begin(), v.end());
  }
  if (suite == "all" || suite == "superint") {
    auto v = superint_checks({rc.hbar, rc.a}, cfg);
    results.insert(results.end(), v.begin(), v.end());
  }
  int failures = 0;
  for (const auto& c : results) {
    std::printf("[%s] %-48s measured %.4e  limit %.1e  %s\n", c.suite.c_str(),
                c.name.c_str(), c.measured, c.threshold, c.pass ? "pass" : "FAIL");
    if (!c.pass) ++failures;
  }
  if (suite == "all" || suite == "superint") {
    const cylspec::IsotonicParams params{rc.hbar, rc.a};
    const auto rep = formal_vs_physical_report(Region::R2, 6, params, cfg);
    std::printf("formal ladder: E(p) = %s + %s p; physical R2 levels start at %s; "
                "nearest-physical mismatch in [%.3e, %.3e]; matches physical: %s\n",
                fmt_double(rep.formal_energies[0]).c_str(),
                fmt_double(rep.formal_spacing).c_str(),
                fmt_double(rep.physical_energies.front()).c_str(), rep.min_mismatch,
                rep.max_mismatch, rep.formal_matches_physical ? "yes" : "no");
    for (auto sys : {System2D::Hs1, System2D::Hs2, System2D::Hs3, System2D::Hs4}) {
      std::printf("x2 channel %s (units of hbar^2/2a^2, separable|unit ladder):",
                  system_name(sys));
      for (const auto& row : x2_unit_ladder_comparison(sys, 3, params))
        std::printf("  k=%d %.4f|%.4f", row.k, row.separable, row.unit_ladder);
      std::printf("\n");
    }
  }
  std::printf("%zu checks, %d failure%s\n", results.size(), failures,
              failures == 1 ? "" : "s");
  return failures == 0 ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cylspec: spectra of constrained and singular oscillators via "
               "parabolic cylinder functions"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig rc;
  std::string config_path;
  app.add_option("--config", config_path, "key = value configuration file");
  std::string format = "csv";
  app.add_option("--format", format, "output format: csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  std::string output;
  app.add_option("--output", output, "write data to this file instead of stdout");

  // spectrum ------------------------------------------------------------
  auto* spectrum = app.add_subcommand("spectrum", "discrete spectra");
  spectrum->require_subcommand(1);
  spectrum->fallthrough();

  double opt_b = 0.0, opt_hbar = -1.0, opt_omega = -1.0, opt_a = -1.0;
  int opt_levels = 1, opt_nmax = 0, opt_kmax = 0;
  std::string opt_region = "R2", opt_system = "hs1";

  auto* half = spectrum->add_subcommand("half-line", "wall at z = b, domain z >= b");
  half->fallthrough();
  half->add_option("--b", opt_b, "dimensionless wall position")->required();
  half->add_option("--levels", opt_levels, "number of levels")->required();
  half->add_option("--hbar", opt_hbar, "hbar (overrides config)");
  half->add_option("--omega", opt_omega, "omega (overrides config)");

  auto* box = spectrum->add_subcommand("box", "symmetric box |z| <= b");
  box->fallthrough();
  box->add_option("--b", opt_b, "dimensionless half-width")->required();
  box->add_option("--levels", opt_levels, "number of levels")->required();
  box->add_option("--hbar", opt_hbar, "hbar (overrides config)");
  box->add_option("--omega", opt_omega, "omega (overrides config)");

  auto* isotonic = spectrum->add_subcommand("isotonic", "singular isotonic oscillator");
  isotonic->fallthrough();
  isotonic->add_option("--a", opt_a, "singularity position a > 0");
  isotonic->add_option("--region", opt_region, "R1, R2 or R3")->required();
  isotonic->add_option("--levels", opt_levels, "number of levels")->required();
  isotonic->add_option("--hbar", opt_hbar, "hbar (overrides config)");

  auto* td = spectrum->add_subcommand("2d", "2D superintegrable systems");
  td->fallthrough();
  td->add_option("--system", opt_system, "hs1, hs2, hs3 or hs4")
      ->required()
      ->check(CLI::IsMember({"hs1", "hs2", "hs3", "hs4"}));
  td->add_option("--region", opt_region, "region of x1 (and x2 for hs4): R2 or R2,R2")
      ->required();
  td->add_option("--nmax", opt_nmax, "largest x1 index")->required();
  td->add_option("--kmax", opt_kmax, "largest x2 index")->required();
  td->add_option("--a", opt_a, "singularity position a > 0");
  td->add_option("--hbar", opt_hbar, "hbar (overrides config)");

  // sweep ----------------------------------------------------------------
  auto* sweep = app.add_subcommand("sweep", "levels vs wall position; figure data");
  sweep->fallthrough();
  std::string sweep_case = "II";
  double b_from = 0.0, b_to = 3.0, wf_b = 1.0;
  int b_steps = 60, sweep_levels = 11, wf_index = -1;
  sweep->add_option("--case", sweep_case, "II (half-line) or III (box)")
      ->check(CLI::IsMember({"II", "III"}));
  sweep->add_option("--b-from", b_from, "first wall position");
  sweep->add_option("--b-to", b_to, "last wall position");
  sweep->add_option("--b-steps", b_steps, "number of steps (rows = steps + 1)");
  sweep->add_option("--levels", sweep_levels, "levels per wall position (default 11)");
  sweep->add_option("--wavefunction", wf_index,
                    "emit (z, psi) samples of this level instead of a sweep");
  sweep->add_option("--b", wf_b, "wall position for --wavefunction");
  sweep->add_option("--hbar", opt_hbar, "hbar (overrides config)");
  sweep->add_option("--omega", opt_omega, "omega (overrides config)");

  // verify ---------------------------------------------------------------
  auto* verify = app.add_subcommand("verify", "run the module invariant suites");
  verify->fallthrough();
  std::string suite = "all";
  verify->add_option("--suite", suite, "all, specfun, spectra, susy or superint")
      ->check(CLI::IsMember({"all", "specfun", "spectra", "susy", "superint"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }

  try {
    if (!config_path.empty()) apply_config_file(config_path, rc);
    rc.format = format;
    rc.output = output;
    if (opt_hbar > 0) rc.hbar = opt_hbar;
    if (opt_omega > 0) rc.omega = opt_omega;
    if (opt_a > 0) rc.a = opt_a;
    if (!(rc.hbar > 0) || !(rc.omega > 0) || !(rc.a > 0))
      throw CLI::ValidationError("params", "hbar, omega and a must be positive");
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }

  using namespace cylspec;
  const EigenSolveConfig cfg = rc.solve_config();

  try {
    Output out(rc.output);
    std::ostream& os = out.stream();

    if (half->parsed() || box->parsed()) {
      const OscillatorParams params{rc.hbar, rc.omega};
      const auto levels =
          half->parsed()
              ? solve_half_line(BarrierGeometry::half_line(opt_b), opt_levels, params, cfg)
              : solve_box(BarrierGeometry::symmetric_box(opt_b), opt_levels, params, cfg);
      if (rc.format == "csv")
        emit_levels_csv(os, levels, true, "");
      else
        emit_levels_json(os, params_json(rc, true), levels);
      return 0;
    }

    if (isotonic->parsed()) {
      const IsotonicParams params{rc.hbar, rc.a};
      const Region region = parse_region(opt_region);
      std::vector<EigenLevel> rows;
      for (int n = 0; n < opt_levels; ++n) {
        const auto st = build_state(region, n, params, cfg);
        rows.push_back({n, st.epsilon, st.energy, Parity::None});
      }
      if (rc.format == "csv")
        emit_levels_csv(os, rows, false, opt_region);
      else
        emit_levels_json(os, params_json(rc, false), rows);
      return 0;
    }

    if (td->parsed()) {
      const IsotonicParams params{rc.hbar, rc.a};
      System2D sys = System2D::Hs1;
      if (opt_system == "hs2") sys = System2D::Hs2;
      else if (opt_system == "hs3") sys = System2D::Hs3;
      else if (opt_system == "hs4") sys = System2D::Hs4;
      std::string r1s = opt_region, r2s = "R2";
      const auto comma = opt_region.find(',');
      if (comma != std::string::npos) {
        r1s = opt_region.substr(0, comma);
        r2s = opt_region.substr(comma + 1);
      }
      const auto levels = spectrum_2d(sys, parse_region(r1s), opt_nmax, opt_kmax, params,
                                      cfg, parse_region(r2s));
      // a comma inside an unquoted csv field would break the column count
      const std::string region_label =
          sys == System2D::Hs4 ? "\"" + r1s + "," + r2s + "\"" : r1s;
      if (rc.format == "csv") {
        os << "n,k,epsilon,energy,region\n";
        for (const auto& l : levels)
          os << l.qn.n << ',' << l.qn.k << ','
             << fmt_double(l.e_x1 / params.energy_scale() + 2.5) << ','
             << fmt_double(l.energy) << ',' << region_label << "\n";
      } else {
        json doc;
        doc["params"] = params_json(rc, false);
        doc["levels"] = json::array();
        for (const auto& l : levels) {
          json e;
          e["n"] = l.qn.n;
          e["k"] = l.qn.k;
          e["epsilon"] = l.e_x1 / params.energy_scale() + 2.5;
          e["energy"] = l.energy;
          doc["levels"].push_back(e);
        }
        os << doc.dump(2) << "\n";
      }
      return 0;
    }

    if (sweep->parsed()) {
      const OscillatorParams params{rc.hbar, rc.omega};
      const bool is_half = sweep_case == "II";
      if (wf_index >= 0) {
        // (z, psi) samples of one eigenfunction at a fixed wall position
        const auto geom = is_half ? BarrierGeometry::half_line(wf_b)
                                  : BarrierGeometry::symmetric_box(wf_b);
        const auto levels = is_half ? solve_half_line(geom, wf_index + 1, params, cfg)
                                    : solve_box(geom, wf_index + 1, params, cfg);
        const auto& level = levels[wf_index];
        const double z_lo = is_half ? wf_b : -wf_b;
        const double z_hi = is_half ? wf_b + 8.0 : wf_b;
        const int rows = std::max(2, rc.n_points);
        if (rc.format == "csv") {
          os << "z,psi\n";
          for (int i = 0; i < rows; ++i) {
            const double z = z_lo + (z_hi - z_lo) * i / (rows - 1);
            os << fmt_double(z) << ','
               << fmt_double(eigenfunction_at(level, geom, z, cfg.precision)) << "\n";
          }
        } else {
          json doc;
          doc["params"] = params_json(rc, true);
          doc["case"] = sweep_case;
          doc["level"] = wf_index;
          doc["b"] = wf_b;
          doc["samples"] = json::array();
          for (int i = 0; i < rows; ++i) {
            const double z = z_lo + (z_hi - z_lo) * i / (rows - 1);
            doc["samples"].push_back(
                {{"z", z}, {"psi", eigenfunction_at(level, geom, z, cfg.precision)}});
          }
          os << doc.dump(2) << "\n";
        }
        return 0;
      }
      if (b_steps < 1) throw CLI::ValidationError("--b-steps", "must be >= 1");
      const int rows = b_steps + 1;
      std::vector<std::vector<EigenLevel>> table(rows);
      std::vector<std::future<std::vector<EigenLevel>>> jobs;
      jobs.reserve(rows);
      for (int i = 0; i < rows; ++i) {
        const double b = b_from + (b_to - b_from) * i / b_steps;
        jobs.push_back(std::async(std::launch::async, [=]() {
          return is_half
                     ? solve_half_line(BarrierGeometry::half_line(b), sweep_levels,
                                       params, cfg)
                     : solve_box(BarrierGeometry::symmetric_box(b), sweep_levels, params,
                                 cfg);
        }));
      }
      for (int i = 0; i < rows; ++i) table[i] = jobs[i].get();
      if (rc.format == "csv") {
        os << "b";
        for (int n = 0; n < sweep_levels; ++n) os << ",E" << n;
        os << "\n";
        for (int i = 0; i < rows; ++i) {
          os << fmt_double(b_from + (b_to - b_from) * i / b_steps);
          for (const auto& l : table[i]) os << ',' << fmt_double(l.energy);
          os << "\n";
        }
      } else {
        json doc;
        doc["params"] = params_json(rc, true);
        doc["case"] = sweep_case;
        doc["sweep"] = json::array();
        for (int i = 0; i < rows; ++i) {
          json row;
          row["b"] = b_from + (b_to - b_from) * i / b_steps;
          row["energies"] = json::array();
          for (const auto& l : table[i]) row["energies"].push_back(l.energy);
          doc["sweep"].push_back(row);
        }
        os << doc.dump(2) << "\n";
      }
      return 0;
    }

    if (verify->parsed()) return run_verify(suite, rc);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const cylspec::Error& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid argument: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
