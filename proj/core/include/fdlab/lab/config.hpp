#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "fdlab/error.hpp"
#include "fdlab/evolve.hpp"
#include "fdlab/system.hpp"

namespace fdlab::lab {

/// Malformed or inconsistent experiment configuration (CLI exit code 2).
class ConfigError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

enum class Experiment {
  MollifierRates,
  CauchyRates,
  ParabolicLimit,
  ContinuousDependence,
  LinearGauge,
  Validate,
  Solve,
};

std::string_view to_string(Experiment e);
Experiment parse_experiment(std::string_view name);
std::vector<std::string> experiment_names();

/// Built-in system name and parameters, or a path to an .fspec file.
///   4shro:        nu, mu (six values)
///   wzy:          alpha, eps, gamma, n
///   grassmannian: alpha, beta, gamma, k0, n0
///   linear:       a, b, lambda (one value per component), F = 0
///   fspec:        fspec (path), a, b, lambda
struct SystemConfig {
  std::string name = "4shro";
  std::string fspec;
  double nu = 1.0;
  std::array<double, 6> mu{1.0, 1.0, 1.0, 1.0, 1.0, 1.0};
  double alpha = 1.0;
  double eps = 0.5;
  double gamma = 0.5;
  double beta = 1.0;
  std::size_t n = 1;
  int k0 = 1;
  int n0 = 3;
  std::vector<double> a{1.0}, b{0.0}, lambda{1.0};
};

struct DataConfig {
  double amplitude = 0.1;
  std::vector<double> carriers{1.0};
  std::uint64_t seed = 1;
};

/// Sweep lists, stored in decreasing order.
struct SweepConfig {
  std::vector<double> eps;
  std::vector<double> nu;
  std::vector<double> delta;
};

struct LinearConfig {
  std::string preset = "decaying-im-gamma1";
  double a = 1.0;
  double b = 0.0;
  double L = 4.0;
  double r = 4.0;
  double horizon = 0.5;
  double dt = 1e-4;
  std::size_t snapshot_stride = 500;
  /// Repeat on the doubled grid and compare fitted rates.
  bool refine = true;
};

struct OutputConfig {
  std::string dir = "fdlab-out";
  bool snapshots = false;
};

struct ExperimentConfig {
  Experiment experiment = Experiment::Solve;
  SystemConfig system;
  SolverConfig solver;  ///< grid, step and gauge parameters of every solve
  int m = 4;            ///< Sobolev order of the rate experiments
  DataConfig data;
  SweepConfig sweep;
  LinearConfig linear;
  OutputConfig output;
  /// Directory that relative paths (the .fspec file) resolve against.
  std::filesystem::path base_dir = ".";

  /// Throws ConfigError on the first inconsistency.
  void check() const;
};

/// Defaults for one experiment, including its standard sweep lists.
ExperimentConfig default_config(Experiment e);

/// INI text with sections [experiment] [system] [grid] [solver] [gauge]
/// [data] [sweep] [linear] [output]. Unknown sections or keys are errors.
/// Lists are comma separated; an entry may be written as base^exponent.
/// A missing [experiment] name falls back to `fallback`.
ExperimentConfig parse_config(std::string_view text, Experiment fallback,
                              const std::filesystem::path& base_dir = ".");
ExperimentConfig load_config(const std::filesystem::path& path, Experiment fallback);

struct ConfigEntry {
  std::string section, key, value;
};

/// Every setting in canonical order with its canonical text.
std::vector<ConfigEntry> config_entries(const ExperimentConfig& c);

/// Canonical INI text; parse_config(to_ini(c)) reproduces c.
std::string to_ini(const ExperimentConfig& c);

SystemSpec build_system(const ExperimentConfig& c);

}  // namespace fdlab::lab
