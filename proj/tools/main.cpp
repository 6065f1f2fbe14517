#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "fdlab/lab/config.hpp"
#include "fdlab/lab/experiments.hpp"

namespace {

constexpr int kConfigError = 2;

struct Options {
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
  unsigned jobs = 1;
  bool print_config = false;
};

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--config", o.config, "experiment configuration (INI)")->check(CLI::ExistingFile);
  sub->add_option("--out", o.out, "output directory (overrides FDLAB_OUTPUT_DIR and the config)");
  sub->add_option("--seed", o.seed, "seed for random data");
  sub->add_option("--jobs", o.jobs, "worker threads for sweeps")->check(CLI::PositiveNumber);
  sub->add_flag("--print-config", o.print_config, "print the effective configuration and exit");
}

int run(fdlab::lab::Experiment fallback, bool from_file, const Options& o) {
  using namespace fdlab::lab;
  ExperimentConfig cfg = o.config.empty() ? default_config(fallback) : load_config(o.config, fallback);
  if (!from_file && cfg.experiment != fallback) {
    throw ConfigError("config names experiment '" + std::string(to_string(cfg.experiment)) +
                      "' but the subcommand is '" + std::string(to_string(fallback)) + "'");
  }
  if (o.seed) cfg.data.seed = *o.seed;
  if (const char* env = std::getenv("FDLAB_OUTPUT_DIR"); env && *env) cfg.output.dir = env;
  if (!o.out.empty()) cfg.output.dir = o.out;
  cfg.check();
  if (o.print_config) {
    std::cout << to_ini(cfg);
    return 0;
  }

  const ExperimentResult result = run_experiment(cfg, o.jobs);
  write_outputs(result, cfg, cfg.output.dir);
  for (const auto& c : result.criteria) {
    std::cout << to_string(c.verdict) << "  " << c.name << ": " << c.detail << "\n";
  }
  for (const auto& n : result.notes) std::cout << "note: " << n << "\n";
  std::cout << to_string(result.overall()) << "  " << to_string(cfg.experiment) << " -> " << cfg.output.dir
            << "\n";
  return exit_code(result);
}

}  // namespace

int main(int argc, char** argv) {
  using namespace fdlab::lab;
  CLI::App app{"fdlab: experiments on fourth-order dispersive systems"};
  app.require_subcommand(1);
  Options options;
  std::optional<Experiment> chosen;
  bool from_file = false;

  CLI::App* generic = app.add_subcommand("run", "run the experiment named in the config");
  add_common(generic, options);
  generic->callback([&] {
    from_file = true;
    chosen = Experiment::Solve;
  });
  generic->get_option("--config")->required();
  for (const auto& name : experiment_names()) {
    CLI::App* sub = app.add_subcommand(name, "run the " + name + " experiment");
    add_common(sub, options);
    const Experiment e = parse_experiment(name);
    sub->callback([&chosen, e] { chosen = e; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfigError;
  }

  try {
    return run(*chosen, from_file, options);
  } catch (const fdlab::InvalidArgument& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
