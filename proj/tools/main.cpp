#include "manakov/cli.hpp"

#include "CLI11.hpp"

#include <iostream>
#include <string>
#include <vector>

namespace {

struct CommonOptions {
  std::string config_path;
  std::string out_dir;
  std::string seeds;
  std::vector<std::string> tol_overrides;
  int jobs = 1;
};

void add_common(CLI::App* cmd, CommonOptions& opts) {
  cmd->add_option("--config", opts.config_path, "JSON config file")->required();
  cmd->add_option("--out", opts.out_dir, "output directory (overrides config)");
  cmd->add_option("--seeds", opts.seeds, "comma-separated seed list (overrides config)");
  cmd->add_option("--tol-override", opts.tol_overrides, "key=value tolerance override");
  cmd->add_option("--jobs", opts.jobs, "worker threads for independent points");
}

int apply_overrides(manakov::RunConfig& cfg, const CommonOptions& opts) {
  if (!opts.out_dir.empty()) cfg.out_dir = opts.out_dir;
  if (!opts.seeds.empty()) {
    cfg.seeds.clear();
    std::stringstream ss(opts.seeds);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (!item.empty()) cfg.seeds.push_back(std::stoull(item));
    }
    if (cfg.seeds.empty()) {
      std::cerr << "validation error: --seeds produced an empty list\n";
      return manakov::kExitValidation;
    }
  }
  for (const std::string& kv : opts.tol_overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) {
      std::cerr << "validation error: --tol-override expects key=value, got '" << kv << "'\n";
      return manakov::kExitValidation;
    }
    const std::string key = kv.substr(0, eq);
    double value = 0.0;
    try {
      value = std::stod(kv.substr(eq + 1));
    } catch (const std::exception&) {
      std::cerr << "validation error: --tol-override value in '" << kv << "' is not a number\n";
      return manakov::kExitValidation;
    }
    if (!cfg.defaults.set(key, value)) {
      std::cerr << "validation error: unknown tolerance key '" << key << "'\n";
      return manakov::kExitValidation;
    }
  }
  return -1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical laboratory for integrable flows on so(n)"};
  app.require_subcommand(1);

  CommonOptions sim_opts, ver_opts, sweep_opts;
  CLI::App* sim = app.add_subcommand("simulate", "integrate a flow and monitor its integrals");
  add_common(sim, sim_opts);
  CLI::App* ver = app.add_subcommand("verify", "run randomized structural verifications");
  add_common(ver, ver_opts);
  CLI::App* sweep = app.add_subcommand("sweep", "verify targets across partitions of n");
  add_common(sweep, sweep_opts);

  CLI11_PARSE(app, argc, argv);

  const CommonOptions& opts = sim->parsed() ? sim_opts : ver->parsed() ? ver_opts : sweep_opts;
  manakov::RunConfig cfg;
  try {
    cfg = manakov::RunConfig::load(opts.config_path);
  } catch (const manakov::validation_error& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return manakov::kExitValidation;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return manakov::kExitIo;
  }
  const int override_status = apply_overrides(cfg, opts);
  if (override_status >= 0) return override_status;

  if (sim->parsed()) return manakov::cmd_simulate(cfg);
  if (ver->parsed()) return manakov::cmd_verify(cfg);
  return manakov::cmd_sweep(cfg, opts.jobs);
}
