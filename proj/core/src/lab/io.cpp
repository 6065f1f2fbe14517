#include <fstream>
#include <sstream>

#include "fdlab/lab/experiments.hpp"
#include "json.hpp"

namespace fdlab::lab {

void write_atomic(const std::filesystem::path& path, std::string_view content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open '" + tmp.string() + "' for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw Error("write to '" + tmp.string() + "' failed");
  }
  std::filesystem::rename(tmp, path);
}

void write_outputs(const ExperimentResult& result, const ExperimentConfig& cfg,
                   const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  using json = nlohmann::ordered_json;
  json run;
  run["experiment"] = std::string(to_string(result.experiment));
  run["overall"] = std::string(to_string(result.overall()));
  json criteria = json::array();
  for (const auto& c : result.criteria) {
    criteria.push_back({{"name", c.name}, {"verdict", std::string(to_string(c.verdict))}, {"detail", c.detail}});
  }
  run["criteria"] = std::move(criteria);
  run["notes"] = result.notes;
  json config = json::object();
  for (const auto& e : config_entries(cfg)) config[e.section][e.key] = e.value;
  run["config"] = std::move(config);
  json series;
  series["file"] = "series.csv";
  if (!result.series.label_column.empty()) series["label"] = result.series.label_column;
  series["columns"] = result.series.columns;
  series["rows"] = result.series.size();
  run["series"] = std::move(series);

  const bool snapshots = cfg.output.snapshots && result.trajectory.has_value();
  if (snapshots) {
    std::ostringstream bin;
    write_snapshots(bin, *result.trajectory);
    write_atomic(dir / "snapshots.bin", bin.str());
    run["snapshots"] = "snapshots.bin";
  }
  write_atomic(dir / "series.csv", to_csv(result.series));
  write_atomic(dir / "run.json", run.dump(2) + "\n");
}

}  // namespace fdlab::lab
