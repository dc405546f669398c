#include "hqed/sweep.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep))
    if (!item.empty()) out.push_back(item);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectra, fidelities and participation ratios of the hybrid atom-photon-phonon model"};
  std::string config_path, preset_name, out_dir, solvers, cutoffs;
  int workers = 1;
  int levels = 0;
  bool list = false, print_config = false;
  app.add_option("--config", config_path, "JSON sweep config; its fields override the preset");
  app.add_option("--preset", preset_name, "start from a named figure preset");
  app.add_option("--out", out_dir, "output directory (default: out/<name>)");
  app.add_option("--workers", workers, "parallel grid-point workers")->check(CLI::PositiveNumber);
  app.add_option("--solvers", solvers, "comma-separated subset of exact,grwa,rwa");
  app.add_option("--levels", levels, "numerical levels kept by the exact solver")->check(CLI::PositiveNumber);
  app.add_option("--cutoffs", cutoffs, "auto, or PHOTON,PHONON");
  app.add_flag("--list-presets", list, "print the preset catalog and exit");
  app.add_flag("--print-config", print_config, "print the effective config as JSON and exit");
  CLI11_PARSE(app, argc, argv);

  try {
    if (list) {
      for (const auto& p : hqed::list_presets())
        std::cout << p.name << "\t" << p.figure << "\t" << p.summary << "\t" << p.config.params.describe() << '\n';
      return 0;
    }
    if (config_path.empty() && preset_name.empty()) {
      std::cerr << "error: give --config FILE and/or --preset NAME (see --list-presets)\n";
      return 2;
    }
    hqed::SweepConfig config;
    if (!preset_name.empty()) config = hqed::find_preset(preset_name).config;
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw std::runtime_error("cannot open config " + config_path);
      nlohmann::json j;
      try {
        in >> j;
      } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(config_path + ": " + e.what());
      }
      config = hqed::config_from_json(j, config);
    }
    if (!solvers.empty()) {
      config.solvers.clear();
      for (const auto& s : split(solvers, ',')) config.solvers.push_back(hqed::solver_from_name(s));
    }
    if (levels > 0) config.levels = levels;
    if (!cutoffs.empty()) {
      if (cutoffs == "auto") {
        config.cutoffs.reset();
      } else {
        const auto parts = split(cutoffs, ',');
        if (parts.size() != 2) throw std::invalid_argument("--cutoffs expects auto or PHOTON,PHONON");
        config.cutoffs = hqed::Cutoffs{hqed::ModeCutoff(std::stoi(parts[0])), hqed::ModeCutoff(std::stoi(parts[1]))};
      }
    }
    config.validate();
    if (print_config) {
      std::cout << hqed::config_to_json(config).dump(2) << '\n';
      return 0;
    }
    if (out_dir.empty()) out_dir = "out/" + config.name;
    const auto result = hqed::run_sweep(config, {workers});
    hqed::write_outputs(result, out_dir);
    for (const auto& w : result.warnings) std::cerr << "warning: " << w << '\n';
    std::cerr << config.name << ": " << result.rows.size() << " rows, " << result.grid_points << " points in "
              << result.wall_seconds << " s -> " << out_dir << '\n';
    return 0;
  } catch (const hqed::ConvergenceError& e) {
    std::cerr << "convergence error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
