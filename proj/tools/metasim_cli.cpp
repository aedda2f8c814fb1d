#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "metasim/calibrate.hpp"
#include "metasim/config.hpp"
#include "metasim/csv.hpp"

namespace fs = std::filesystem;
using namespace metasim;

namespace {

std::string load_config_text(const std::string& path,
                             const std::string& params_path) {
  std::string text = path.empty() ? default_config_text() : read_file(path);
  if (!params_path.empty()) text += "\n" + read_file(params_path);
  return text;
}

// Writes content files plus a manifest of their digests.
class OutputDir {
 public:
  explicit OutputDir(const std::string& dir) : dir_(dir) {
    fs::create_directories(dir_);
  }
  void emit(const std::string& name, const std::string& content) {
    write_file((fs::path(dir_) / name).string(), content);
    entries_.push_back({name, digest_hex(content)});
  }
  void finish() {
    write_file((fs::path(dir_) / "manifest.txt").string(),
               manifest_to_text(entries_));
  }

 private:
  std::string dir_;
  std::vector<ManifestEntry> entries_;
};

int cmd_simulate(const std::string& cfg_path, const std::string& out_dir,
                 bool strict, const std::string& params_path) {
  const RunConfig cfg = parse_config(load_config_text(cfg_path, params_path),
                                     strict);
  const auto records = run_scenario(cfg.scenario);
  OutputDir out(out_dir);
  out.emit("series.csv", records_to_csv(records));
  out.finish();
  return 0;
}

int cmd_preset(const std::string& name, bool list, const std::string& out_dir,
               const std::string& params_path) {
  if (list) {
    for (const auto& n : preset_names()) std::cout << n << "\n";
    return 0;
  }
  ParameterSet params = calibrated_parameters();
  if (!params_path.empty())
    params = parse_config(load_config_text("", params_path), true).params;
  const auto result = run_preset(name, params);
  OutputDir out(out_dir);
  for (const auto& run : result.runs)
    out.emit(run.label + ".csv", records_to_csv(run.records));
  out.emit("summary.csv", summary_to_csv(result.summary));
  out.finish();
  return 0;
}

int cmd_calibrate(const std::string& targets_path, const std::string& out_dir) {
  const auto targets = targets_path.empty()
                           ? default_targets()
                           : parse_targets_csv(read_file(targets_path));
  const auto result = fit(targets, ParameterSet{10.0, -30e-6, 40.0},
                          parameter_bounds());
  OutputDir out(out_dir);
  out.emit("fitted_params.cfg", params_to_config_fragment(result.params));
  std::string trace = "iteration,best_objective\n";
  for (size_t i = 0; i < result.trace.size(); ++i)
    trace += std::to_string(i) + "," + format_g9(result.trace[i]) + "\n";
  out.emit("trace.csv", trace);
  out.finish();
  std::cout << "objective " << format_g9(result.objective) << " after "
            << result.iterations << " iterations\n"
            << params_to_config_fragment(result.params);
  return 0;
}

int cmd_gripper(const std::string& cfg_path, const std::string& out_dir,
                bool strict, const std::string& params_path) {
  const RunConfig cfg = parse_config(load_config_text(cfg_path, params_path),
                                     strict);
  const auto jaw = jaw_range(cfg.gripper, cfg.params);
  const auto mode = grasp_mode(jaw, cfg.object);
  OutputDir out(out_dir);
  std::string csv = "min_mm,rest_mm,max_mm,object_width_mm,mode\n";
  csv += format_g9(jaw.min_mm) + "," + format_g9(jaw.rest_mm) + "," +
         format_g9(jaw.max_mm) + "," + format_g9(cfg.object.outer_width_mm) +
         "," + to_string(mode) + "\n";
  out.emit("gripper_summary.csv", csv);
  out.finish();
  std::cout << "jaw " << format_g9(jaw.min_mm) << " / "
            << format_g9(jaw.rest_mm) << " / " << format_g9(jaw.max_mm)
            << " mm, mode " << to_string(mode) << "\n";
  return 0;
}

int cmd_sweep(const std::string& cfg_path, const std::string& out_dir,
              bool strict, const std::string& params_path) {
  // Rescales the configured schedule to 7 power levels from 0 to its
  // commanded maximum and reports displacement-vs-power linearity.
  const std::string text = load_config_text(cfg_path, params_path);
  const RunConfig base = parse_config(text, strict);
  double pmax = 0;
  for (const auto& s : base.scenario.schedule.segments)
    pmax = std::max({pmax, s.p_outer, s.p_inner});
  if (!(pmax > 0))
    throw std::invalid_argument("sweep needs a schedule with nonzero power");
  OutputDir out(out_dir);
  std::vector<double> P, disp;
  for (int k = 0; k <= 6; ++k) {
    RunConfig cfg = parse_config(text, strict);
    const double scale = k / 6.0;
    for (auto& s : cfg.scenario.schedule.segments) {
      s.p_outer *= scale;
      s.p_inner *= scale;
    }
    const auto records = run_scenario(cfg.scenario);
    const std::string label = "p" + format_g9(pmax * scale);
    out.emit(label + ".csv", records_to_csv(records));
    P.push_back(pmax * scale);
    disp.push_back(records.back().ref_disp_mm);
  }
  std::string csv = "power_w,ref_disp_end_mm\n";
  for (size_t i = 0; i < P.size(); ++i)
    csv += format_g9(P[i]) + "," + format_g9(disp[i]) + "\n";
  out.emit("sweep_summary.csv", csv);
  out.finish();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coupled thermal-mechanical simulator for dual-sided "
               "thin-film electrothermal actuators"};
  app.require_subcommand(1);

  std::string out_dir = "out", params_path, cfg_path, preset_name,
              targets_path;
  bool strict = true, list_presets = false;
  app.add_option("--out", out_dir, "Output directory");
  app.add_flag("--strict,!--no-strict", strict,
               "Reject unknown config keys (default on)");
  app.add_option("--params", params_path,
                 "Fitted-parameter config fragment applied on top");

  auto* sim = app.add_subcommand("simulate", "Run one configured scenario");
  sim->add_option("config", cfg_path, "Config file (defaults when omitted)");

  auto* pre = app.add_subcommand("preset", "Run a named experiment batch");
  pre->add_option("name", preset_name, "Preset name");
  pre->add_flag("--list", list_presets, "List preset names and exit");

  auto* cal = app.add_subcommand("calibrate",
                                 "Fit h, substrate alpha_eff and tau_mech");
  cal->add_option("targets", targets_path, "Targets CSV (defaults when omitted)");

  auto* grp = app.add_subcommand("gripper", "Jaw range and grasp-mode check");
  grp->add_option("config", cfg_path, "Config file (defaults when omitted)");

  auto* swp = app.add_subcommand("sweep", "Power sweep of a configured scenario");
  swp->add_option("config", cfg_path, "Config file (defaults when omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (sim->parsed()) return cmd_simulate(cfg_path, out_dir, strict, params_path);
    if (pre->parsed()) {
      if (!list_presets && preset_name.empty())
        throw std::invalid_argument("preset name required (or --list)");
      return cmd_preset(preset_name, list_presets, out_dir, params_path);
    }
    if (cal->parsed()) return cmd_calibrate(targets_path, out_dir);
    if (grp->parsed()) return cmd_gripper(cfg_path, out_dir, strict, params_path);
    if (swp->parsed()) return cmd_sweep(cfg_path, out_dir, strict, params_path);
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const MechanicsError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
