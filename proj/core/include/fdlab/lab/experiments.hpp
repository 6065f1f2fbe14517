#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fdlab/fit.hpp"
#include "fdlab/lab/config.hpp"
#include "fdlab/trajectory.hpp"

namespace fdlab::lab {

/// Raw measurements of one experiment: an optional text label per row
/// followed by numeric columns.
struct Series {
  std::string label_column;  ///< empty when rows carry no label
  std::vector<std::string> columns;
  std::vector<std::string> labels;
  std::vector<std::vector<double>> rows;

  void add(std::vector<double> row, std::string label = {});
  std::vector<double> column(std::string_view name) const;
  std::size_t size() const { return rows.size(); }
};

std::string to_csv(const Series& s);
Series parse_csv(std::string_view text);

struct Criterion {
  std::string name;
  Verdict verdict = Verdict::Fail;
  std::string detail;
};

struct ExperimentResult {
  Experiment experiment = Experiment::Solve;
  Series series;
  std::vector<Criterion> criteria;
  std::vector<std::string> notes;
  std::optional<Trajectory> trajectory;

  /// FAIL if any criterion fails, else MARGINAL if any is marginal, else
  /// VACUOUS if any is vacuous, else PASS.
  Verdict overall() const;
};

/// One regularized pair of the Cauchy-rate experiment: Q^mu and Q^nu start
/// from mollified data and carry parabolic terms of size mu and nu.
struct PairDistance {
  double h1 = 0.0;       ///< sup_t ||Q^mu - Q^nu||_{H^1}
  double hm = 0.0;       ///< sup_t ||Q^mu - Q^nu||_{H^m}
  double data_hm = 0.0;  ///< ||Q0^mu - Q0^nu||_{H^m}
  bool excluded = false;
  std::string reason;
};

PairDistance cauchy_pair(const ExperimentConfig& cfg, const SystemSpec& spec,
                         const SpectralField& q0, double mu, double nu);

/// Default benchmark data on the configured grid.
SpectralField initial_data(const ExperimentConfig& cfg, std::size_t n);

/// Runs one experiment; sweep points go to a pool of `jobs` threads.
/// Results do not depend on `jobs`.
ExperimentResult run_experiment(const ExperimentConfig& cfg, unsigned jobs = 1);

ExperimentResult run_mollifier_rates(const ExperimentConfig& cfg, unsigned jobs = 1);
ExperimentResult run_cauchy_rates(const ExperimentConfig& cfg, unsigned jobs = 1);
ExperimentResult run_parabolic_limit(const ExperimentConfig& cfg, unsigned jobs = 1);
ExperimentResult run_continuous_dependence(const ExperimentConfig& cfg, unsigned jobs = 1);
ExperimentResult run_linear_gauge(const ExperimentConfig& cfg, unsigned jobs = 1);
ExperimentResult run_validate(const ExperimentConfig& cfg);
ExperimentResult run_solve(const ExperimentConfig& cfg);

/// Recomputes the criteria of an experiment from its series alone.
std::vector<Criterion> judge(const ExperimentConfig& cfg, const Series& series);

/// Writes run.json, series.csv and (when requested and available)
/// snapshots.bin into `dir`, each through a temporary file and a rename.
void write_outputs(const ExperimentResult& result, const ExperimentConfig& cfg,
                   const std::filesystem::path& dir);

/// Writes `content` to `path` atomically.
void write_atomic(const std::filesystem::path& path, std::string_view content);

/// 0 when nothing failed, 1 otherwise.
int exit_code(const ExperimentResult& result);

}  // namespace fdlab::lab
