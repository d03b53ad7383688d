// cfun.cc
//
// Command line driver: non-equilibrium measurements of entropic
// c-functions and Renyi entropies of the Ising model, plus fitting and
// self-validation. Exit codes: 0 success, 1 validation/runtime failure,
// 2 configuration error.

#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "entropic/cli.h"

using namespace entropic;

namespace {

RunConfig build_config(const std::string& config_path,
                       const std::vector<std::string>& overrides) {
  RunConfig config = config_path.empty() ? RunConfig{} : load_config(config_path);
  for (const std::string& kv : overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw ConfigError("--set expects key=value, got '" + kv + "'");
    config.set(kv.substr(0, eq), kv.substr(eq + 1));
  }
  config.finalize();
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"entropic c-function measurements for the Ising model"};
  app.require_subcommand(1);

  std::string config_path;
  std::vector<std::string> overrides;

  auto add_config_options = [&](CLI::App* cmd) {
    cmd->add_option("-c,--config", config_path, "flat key=value config file");
    cmd->add_option("-s,--set", overrides, "override config entries (key=value)")
        ->take_all();
  };

  auto* cfun = app.add_subcommand("cfun", "scan the entropic c-function over the cut length");
  add_config_options(cfun);

  auto* beta_scan = app.add_subcommand("beta-scan", "scan the c-function over beta at fixed l");
  add_config_options(beta_scan);
  std::vector<double> betas;
  int scan_l = 1;
  bool with_dual = false;
  beta_scan->add_option("--betas", betas, "couplings to scan")->required()->delimiter(',');
  beta_scan->add_option("--l", scan_l, "cut step to measure (l-1 -> l)")->required();
  beta_scan->add_flag("--with-dual", with_dual, "also run the Kramers-Wannier dual of each beta");

  auto* fit = app.add_subcommand("fit", "fit c-function points to the model curves");
  std::vector<std::string> points_files, model_names;
  std::string direction, fit_out = "fit.json";
  int exclude_first = 0, exclude_last = 0;
  bool force = false;
  fit->add_option("points", points_files, "points.csv file(s)")->required();
  fit->add_option("-m,--models", model_names, "model names (default f2d,f_rvb,f_ads)")
      ->delimiter(',');
  fit->add_option("--direction", direction, "row direction to fit (default: combined)");
  fit->add_option("--exclude-first", exclude_first, "drop the first N points");
  fit->add_option("--exclude-last", exclude_last, "drop the last N points");
  fit->add_flag("--force", force, "allow mixed config hashes");
  fit->add_option("-o,--out", fit_out, "output json (default fit.json)");

  auto* validate = app.add_subcommand("validate", "run the built-in consistency checks");
  std::string golden_path = "data/golden/ising2d_L3.json";
  validate->add_option("--golden", golden_path, "golden oracle values (json)");

  auto* golden = app.add_subcommand("golden", "regenerate the golden oracle values");
  std::string golden_out = "data/golden/ising2d_L3.json";
  golden->add_option("-o,--out", golden_out, "output path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (cfun->parsed()) return cmd_cfun(build_config(config_path, overrides));
    if (beta_scan->parsed())
      return cmd_beta_scan(build_config(config_path, overrides), betas, scan_l, with_dual);
    if (fit->parsed())
      return cmd_fit(points_files, model_names, direction, exclude_first, exclude_last, force,
                     fit_out);
    if (validate->parsed()) return cmd_validate(golden_path);
    if (golden->parsed()) return cmd_golden(golden_out);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
