#include <algorithm>
#include <filesystem>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "majoranon/cli/config.hpp"
#include "majoranon/cli/run.hpp"
#include "majoranon/cli/validate.hpp"
#include "majoranon/errors.hpp"

namespace cli = majoranon::cli;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitContract = 3;
constexpr int kExitIo = 4;

std::string flag_name(std::string key) {
  std::replace(key.begin(), key.end(), '_', '-');
  return "--" + key;
}

struct ExperimentOptions {
  std::string config_path;
  std::string out_dir;
  std::map<std::string, std::string> values;
  std::map<std::string, CLI::Option*> options;
};

void add_experiment_options(CLI::App& cmd, ExperimentOptions& opts) {
  cmd.add_option("--config", opts.config_path, "flat key = value config file");
  cmd.add_option("--out", opts.out_dir, "output directory")->required();
  for (const auto& key : cli::config_keys()) {
    opts.options[key] = cmd.add_option(flag_name(key), opts.values[key], "overrides config key " + key);
  }
}

cli::ExperimentConfig load(const ExperimentOptions& opts) {
  std::vector<cli::Setting> file;
  if (!opts.config_path.empty()) file = cli::read_config_file(opts.config_path);
  std::vector<cli::Setting> flags;
  for (const auto& key : cli::config_keys()) {
    if (opts.options.at(key)->count() > 0) flags.push_back({key, opts.values.at(key), 0});
  }
  return cli::resolve_config(file, flags, std::cerr);
}

void report(const cli::RunSummary& summary) {
  for (const auto& f : summary.files) std::cout << "wrote " << f.string() << '\n';
  std::cout << summary.samples << " samples";
  if (summary.final_pseudo_energy) std::cout << ", final <sigma_z> = " << *summary.final_pseudo_energy;
  if (summary.final_rms_width) std::cout << ", final rms width = " << *summary.final_rms_width;
  std::cout << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Majoranon simulator: Majorana-equation dynamics via two opposite-mass Dirac lattices"};
  app.require_subcommand(1);

  ExperimentOptions run_opts;
  auto* run = app.add_subcommand("run", "evolve a configured experiment and write CSV / heatmap outputs");
  add_experiment_options(*run, run_opts);

  ExperimentOptions compare_opts;
  auto* compare = app.add_subcommand("compare", "Majoranon vs Dirac pseudo-energy of the same packet");
  add_experiment_options(*compare, compare_opts);

  app.add_subcommand("validate", "run the oracle and invariant checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*run) {
      const auto cfg = load(run_opts);
      report(cli::run_experiment(cfg, run_opts.out_dir, cli::threads_from_env()));
    } else if (*compare) {
      const auto cfg = load(compare_opts);
      report(cli::run_compare(cfg, compare_opts.out_dir, cli::threads_from_env()));
    } else {
      return cli::print_validation_table(cli::run_validation_suite(), std::cout) ? 0 : kExitContract;
    }
  } catch (const cli::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const cli::IoError& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return kExitIo;
  } catch (const majoranon::ContractViolation& e) {
    std::cerr << "numerical contract violated: " << e.what() << '\n';
    return kExitContract;
  } catch (const majoranon::DegenerateInput& e) {
    std::cerr << "numerical contract violated: " << e.what() << '\n';
    return kExitContract;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
