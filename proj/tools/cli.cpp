#include "cli.hpp"

#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "omm/config.hpp"
#include "omm/coupling.hpp"
#include "omm/csv.hpp"
#include "omm/features.hpp"
#include "omm/figures.hpp"
#include "omm/stability.hpp"
#include "omm/sweep.hpp"
#include "omm/verify.hpp"

namespace omm {

namespace {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

constexpr double kVerifyThreshold = 1e-10;

struct Options {
  std::string config_path;
  std::string out_dir = ".";
  std::vector<std::string> overrides;
  int grid = 0;
  std::string mode;
  int workers = 0;
  std::string figure;
};

void write_file(const fs::path& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError(path.string() + ": cannot write");
  out << body;
  if (!out) throw ConfigError(path.string() + ": write failed");
}

void append_deviation(const fs::path& dir, const std::string& command, const std::string& note) {
  const auto path = dir / "deviations.md";
  const bool fresh = !fs::exists(path);
  std::ofstream out(path, std::ios::app);
  if (!out) throw ConfigError(path.string() + ": cannot write");
  if (fresh) out << "# Deviations exercised by runs\n\n";
  out << "- " << command << ": " << note << '\n';
}

void write_provenance(const fs::path& dir, const std::string& command) {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char stamp[32];
  std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  ojson j;
  j["command"] = command;
  j["engine_version"] = std::string(kEngineVersion);
  j["timestamp"] = stamp;
  write_file(dir / "provenance.json", j.dump(1) + "\n");
}

ojson complex_json(cplx z) { return ojson::array({z.real(), z.imag()}); }

ojson steady_json(const SteadyState& s) {
  ojson j;
  j["branch_id"] = s.branch_id;
  j["is_default"] = s.is_default;
  j["q_s"] = s.q_s;
  j["p_s"] = s.p_s;
  j["c_s"] = complex_json(s.c_s);
  j["m_s"] = complex_json(s.m_s);
  j["delta_c"] = s.delta_c;
  j["delta_m"] = s.delta_m;
  j["residual"] = s.residual;
  return j;
}

ojson working_point_json(const WorkingPoint& wp, SweepMode mode) {
  ojson j;
  j["mode"] = std::string(to_string(mode));
  j["delta_c"] = wp.ss.delta_c;
  j["delta_m"] = wp.ss.delta_m;
  j["G_cb"] = complex_json(wp.eff.G_cb);
  j["G_mb"] = complex_json(wp.eff.G_mb);
  return j;
}

// Notes for the run ledger, keyed by which corrected relation a command exercises.
constexpr const char* kNoteSteady =
    "mean-field magnon term uses g_mb|m_s|^2 (printed symbol g_cb is dimensionally inconsistent)";
constexpr const char* kNoteOscillator =
    "mechanical restoring force -omega_b dq (printed sign gives an unbounded oscillator)";
constexpr const char* kNoteStokes =
    "Stokes amplitude uses i G_cb^2 omega_b eps_p alpha_2 in the numerator, alpha_12 reads G_ab as G_cb";

int cmd_steady(const RunConfig& cfg, const fs::path& dir) {
  const auto roots = solve_steady_state(cfg.params);
  ojson j;
  j["config"] = cfg.effective;
  ojson branches = ojson::array();
  for (const auto& r : roots) branches.push_back(steady_json(r));
  j["branches"] = branches;
  write_file(dir / "steady.json", j.dump(1) + "\n");
  append_deviation(dir, "steady", kNoteSteady);
  std::cout << roots.size() << " branch(es); default q_s = " << format_double(default_branch(roots).q_s)
            << '\n';
  return kExitOk;
}

int cmd_stability(const RunConfig& cfg, const fs::path& dir) {
  const auto wp = working_point(cfg);
  const auto rep = assess_stability(drift_matrix(wp));
  ojson j;
  j["config"] = cfg.effective;
  j["working_point"] = working_point_json(wp, cfg.mode);
  ojson ev = ojson::array();
  for (auto z : rep.eigenvalues) ev.push_back(complex_json(z));
  j["eigenvalues"] = ev;
  j["stable"] = rep.stable;
  j["margin"] = rep.margin;
  j["pairing_error"] = conjugate_pairing_error(rep.eigenvalues);
  write_file(dir / "stability.json", j.dump(1) + "\n");
  append_deviation(dir, "stability", kNoteOscillator);
  if (cfg.mode == SweepMode::fixed_bare) append_deviation(dir, "stability", kNoteSteady);
  std::cout << (rep.stable ? "stable" : "unstable") << ", margin " << format_double(rep.margin) << '\n';
  return kExitOk;
}

int cmd_spectrum(const RunConfig& cfg, const fs::path& dir, const std::string& name) {
  const auto wp = working_point(cfg);
  const auto grid = delta_grid(cfg);
  const auto pts = spectrum(wp, grid, cfg.workers);
  write_file(dir / (name + ".csv"), spectrum_csv(pts));
  ojson echo;
  echo["config"] = cfg.effective;
  echo["working_point"] = working_point_json(wp, cfg.mode);
  write_file(dir / (name + ".config.json"), echo.dump(1) + "\n");
  append_deviation(dir, name, kNoteOscillator);
  if (name == "fwm") append_deviation(dir, name, kNoteStokes);
  if (cfg.mode == SweepMode::fixed_bare) append_deviation(dir, name, kNoteSteady);
  if (name == "fwm") {
    const auto f = detect_features(pts, Quantity::fwm);
    std::cout << f.peak_count << " FWM peak(s):";
    for (const auto& p : f.peaks) std::cout << ' ' << format_double(p.delta);
    std::cout << '\n';
  }
  return kExitOk;
}

int cmd_sweep(const RunConfig& cfg, const fs::path& dir, const std::string& figure) {
  SweepSpec spec;
  if (!figure.empty()) {
    if (cfg.sweep) throw ConfigError("sweep: --figure and sweep.axis1 are mutually exclusive");
    if (cfg.mode != SweepMode::fixed_effective) throw ConfigError("sweep: figure sweeps are fixed-effective");
    spec = figure_config(figure, cfg.points).spec;
  } else if (cfg.sweep) {
    spec = *cfg.sweep;
  } else {
    throw ConfigError("sweep.axis1: missing (required by the sweep command)");
  }
  const auto result = run_sweep(spec, cfg.workers);
  for (auto q : result.spec.quantities) {
    write_file(dir / (std::string(to_string(q)) + ".csv"), export_csv(result, q));
  }
  write_file(dir / "sweep.json", export_json(result));
  write_file(dir / "features.json", export_features_json(result));
  ojson echo;
  echo["config"] = cfg.effective;
  if (!figure.empty()) echo["figure"] = figure;
  write_file(dir / "sweep.config.json", echo.dump(1) + "\n");
  append_deviation(dir, "sweep", kNoteOscillator);
  append_deviation(dir, "sweep", kNoteStokes);
  if (cfg.mode == SweepMode::fixed_bare) append_deviation(dir, "sweep", kNoteSteady);
  std::size_t excluded = 0;
  for (const auto& c : result.cells) excluded += c.excluded;
  std::cout << result.cells.size() << " cell(s), " << excluded << " excluded\n";
  return kExitOk;
}

int cmd_coupling(const RunConfig& cfg, const fs::path& dir) {
  if (!cfg.coupling) throw ConfigError("coupling: section missing (required by the coupling command)");
  const auto& c = *cfg.coupling;
  ModeShapeGrid grid;
  std::optional<double> exact;
  if (!c.analytic.empty()) {
    const auto kind = analytic_mode_from_string(c.analytic);
    grid = analytic_mode(kind, c.n, c.lengths);
    exact = analytic_integral(kind, c.lengths);
  } else {
    grid = read_mode(c.mode_file, c.sidecar);
  }
  MaterialParams mat = c.material;
  if (mat.volume == 0.0) mat.volume = grid.volume();
  const auto res = magnon_phonon_coupling(grid, mat);
  ojson j;
  j["config"] = cfg.effective;
  j["g_mb"] = res.g_mb;
  j["integral_value"] = res.integral_value;
  ojson report;
  report["nx"] = grid.nx;
  report["ny"] = grid.ny;
  report["nz"] = grid.nz;
  report["spacing"] = grid.spacing;
  report["grid_volume"] = res.grid_volume;
  report["max_abs_integrand"] = res.max_abs_integrand;
  if (exact) report["analytic_integral"] = *exact;
  j["grid_report"] = report;
  write_file(dir / "coupling.json", j.dump(1) + "\n");
  std::cout << "g_mb = " << format_double(res.g_mb) << '\n';
  return kExitOk;
}

int cmd_verify(const RunConfig& cfg, const fs::path& dir) {
  const auto wp = working_point(cfg);
  const auto grid = delta_grid(cfg);
  const auto rep = compare(wp, grid, cfg.workers);
  const bool pass = rep.max_rel <= kVerifyThreshold;
  ojson j;
  j["config"] = cfg.effective;
  j["working_point"] = working_point_json(wp, cfg.mode);
  j["max_rel"] = rep.max_rel;
  j["mean_rel"] = rep.mean_rel;
  j["worst_delta"] = rep.worst_delta;
  j["compared"] = rep.compared;
  j["excluded_poles"] = rep.excluded_poles;
  j["threshold"] = kVerifyThreshold;
  j["pass"] = pass;
  write_file(dir / "verify.json", j.dump(1) + "\n");
  append_deviation(dir, "verify", kNoteOscillator);
  append_deviation(dir, "verify", kNoteStokes);
  std::cout << "max relative discrepancy " << format_double(rep.max_rel) << (pass ? " (pass)" : " (FAIL)")
            << '\n';
  return pass ? kExitOk : kExitVerifyFailed;
}

int dispatch(const std::string& command, const Options& o) {
  ConfigDocument doc = o.config_path.empty() ? ConfigDocument::object() : load_config(o.config_path);
  for (const auto& kv : o.overrides) apply_override(doc, kv);
  if (o.grid) apply_override(doc, "sweep.points=" + std::to_string(o.grid));
  if (!o.mode.empty()) apply_override(doc, "sweep.mode=\"" + o.mode + "\"");
  if (o.workers) apply_override(doc, "sweep.workers=" + std::to_string(o.workers));
  const RunConfig cfg = interpret(doc);

  const fs::path dir(o.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw ConfigError(o.out_dir + ": cannot create output directory: " + ec.message());

  int status = kExitOk;
  if (command == "steady") status = cmd_steady(cfg, dir);
  else if (command == "stability") status = cmd_stability(cfg, dir);
  else if (command == "response" || command == "fwm") status = cmd_spectrum(cfg, dir, command);
  else if (command == "sweep") status = cmd_sweep(cfg, dir, o.figure);
  else if (command == "coupling") status = cmd_coupling(cfg, dir);
  else status = cmd_verify(cfg, dir);
  write_provenance(dir, command);
  return status;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"Linear response of a driven opto-magnomechanical system"};
  app.require_subcommand(1, 1);
  Options o;

  const std::vector<std::pair<std::string, std::string>> commands{
      {"steady", "mean-field fixed points (all branches) as JSON"},
      {"stability", "drift-matrix eigenvalues at the working point"},
      {"response", "probe response spectrum as CSV"},
      {"fwm", "four-wave-mixing spectrum as CSV"},
      {"sweep", "1-D/2-D parameter sweep with feature extraction"},
      {"coupling", "magnon-phonon coupling quadrature over a mode shape"},
      {"verify", "closed forms against the sideband linear system"}};
  for (const auto& [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("--config", o.config_path, "JSON config document")->check(CLI::ExistingFile);
    sub->add_option("--out-dir", o.out_dir, "output directory");
    sub->add_option("--set", o.overrides, "key=value override (repeatable)")->take_all();
    sub->add_option("--grid", o.grid, "number of delta points")->check(CLI::Range(2, 100000000));
    sub->add_option("--mode", o.mode, "fixed-effective or fixed-bare")
        ->check(CLI::IsMember({"fixed-effective", "fixed-bare"}));
    sub->add_option("--workers", o.workers, "worker threads")->check(CLI::PositiveNumber);
    if (name == "sweep") {
      std::vector<std::string> ids;
      for (const auto& f : figure_configs(5)) ids.push_back(f.id);
      sub->add_option("--figure", o.figure, "run a catalogued figure sweep")->check(CLI::IsMember(ids));
    }
  }

  std::vector<std::string> rev(args.rbegin(), args.rend());
  if (!rev.empty()) rev.pop_back();  // program name
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    return dispatch(command, o);
  } catch (const NumericalError& e) {
    std::cerr << "omm " << command << ": numerical error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const InvalidInput& e) {
    std::cerr << "omm " << command << ": config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "omm " << command << ": " << e.what() << '\n';
    return kExitNumerical;
  }
}

}  // namespace omm
