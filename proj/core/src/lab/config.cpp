#include "fdlab/lab/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "fdlab/dsl.hpp"
#include "fdlab/format.hpp"
#include "fdlab/linear_gauge.hpp"

namespace fdlab::lab {
namespace {

constexpr std::array<std::pair<Experiment, std::string_view>, 7> kExperimentNames{{
    {Experiment::MollifierRates, "mollifier-rates"},
    {Experiment::CauchyRates, "cauchy-rates"},
    {Experiment::ParabolicLimit, "parabolic-limit"},
    {Experiment::ContinuousDependence, "continuous-dependence"},
    {Experiment::LinearGauge, "linear-gauge"},
    {Experiment::Validate, "validate"},
    {Experiment::Solve, "solve"},
}};

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

double parse_plain(std::string_view s, std::string_view what) {
  double v = 0.0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size() || !std::isfinite(v)) {
    throw ConfigError(std::string(what) + ": not a number: '" + std::string(s) + "'");
  }
  return v;
}

/// Accepts "0.125" and "2^-3".
double parse_number(std::string_view text, std::string_view what) {
  const std::string s = trim(text);
  const auto caret = s.find('^');
  if (caret == std::string::npos) return parse_plain(s, what);
  const double base = parse_plain(std::string_view(s).substr(0, caret), what);
  const double exponent = parse_plain(std::string_view(s).substr(caret + 1), what);
  return std::pow(base, exponent);
}

std::uint64_t parse_unsigned(std::string_view text, std::string_view what) {
  const std::string s = trim(text);
  std::uint64_t v = 0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size() || s.empty()) {
    throw ConfigError(std::string(what) + ": not a nonnegative integer: '" + s + "'");
  }
  return v;
}

bool parse_bool(std::string_view text, std::string_view what) {
  const std::string s = trim(text);
  if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
  if (s == "false" || s == "0" || s == "no" || s == "off") return false;
  throw ConfigError(std::string(what) + ": not a boolean: '" + s + "'");
}

std::vector<double> parse_list(std::string_view text, std::string_view what) {
  std::vector<double> out;
  std::string s(text);
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_number(item, what));
  if (out.empty()) throw ConfigError(std::string(what) + ": empty list");
  return out;
}

/// Strictly monotone in either direction, returned in decreasing order.
std::vector<double> parse_sweep(std::string_view text, std::string_view what) {
  std::vector<double> v = parse_list(text, what);
  const bool up = std::is_sorted(v.begin(), v.end(), std::less_equal<>());
  const bool down = std::is_sorted(v.begin(), v.end(), std::greater_equal<>());
  if (v.size() > 1 && !(up || down)) {
    throw ConfigError(std::string(what) + ": sweep values must be strictly increasing or decreasing");
  }
  std::sort(v.begin(), v.end(), std::greater<>());
  if (std::adjacent_find(v.begin(), v.end()) != v.end()) {
    throw ConfigError(std::string(what) + ": repeated sweep value");
  }
  return v;
}

std::string join(const auto& values) {
  std::string out;
  for (const auto& v : values) {
    if (!out.empty()) out += ", ";
    out += format_double(static_cast<double>(v));
  }
  return out;
}

struct Field {
  std::string_view section;
  std::string_view key;
  std::function<std::string(const ExperimentConfig&)> get;
  std::function<void(ExperimentConfig&, const std::string&)> set;
};

template <class T>
Field number(std::string_view section, std::string_view key, T ExperimentConfig::*sub, double T::*member) {
  return {section, key,
          [=](const ExperimentConfig& c) { return format_double(c.*sub.*member); },
          [=](ExperimentConfig& c, const std::string& v) {
            c.*sub.*member = parse_number(v, std::string(section) + "." + std::string(key));
          }};
}

template <class T, class U>
Field count(std::string_view section, std::string_view key, T ExperimentConfig::*sub, U T::*member) {
  return {section, key,
          [=](const ExperimentConfig& c) { return std::to_string(c.*sub.*member); },
          [=](ExperimentConfig& c, const std::string& v) {
            c.*sub.*member = static_cast<U>(parse_unsigned(v, std::string(section) + "." + std::string(key)));
          }};
}

template <class T>
Field flag(std::string_view section, std::string_view key, T ExperimentConfig::*sub, bool T::*member) {
  return {section, key,
          [=](const ExperimentConfig& c) { return std::string(c.*sub.*member ? "true" : "false"); },
          [=](ExperimentConfig& c, const std::string& v) {
            c.*sub.*member = parse_bool(v, std::string(section) + "." + std::string(key));
          }};
}

template <class T>
Field text(std::string_view section, std::string_view key, T ExperimentConfig::*sub, std::string T::*member) {
  return {section, key, [=](const ExperimentConfig& c) { return c.*sub.*member; },
          [=](ExperimentConfig& c, const std::string& v) { c.*sub.*member = trim(v); }};
}

template <class T>
Field list(std::string_view section, std::string_view key, T ExperimentConfig::*sub,
           std::vector<double> T::*member, bool sweep) {
  return {section, key, [=](const ExperimentConfig& c) { return join(c.*sub.*member); },
          [=](ExperimentConfig& c, const std::string& v) {
            const std::string what = std::string(section) + "." + std::string(key);
            c.*sub.*member = sweep ? parse_sweep(v, what) : parse_list(v, what);
          }};
}

const std::vector<Field>& fields() {
  using C = ExperimentConfig;
  static const std::vector<Field> table = [] {
    std::vector<Field> f;
    f.push_back({"experiment", "name", [](const C& c) { return std::string(to_string(c.experiment)); },
                 [](C& c, const std::string& v) { c.experiment = parse_experiment(trim(v)); }});

    f.push_back(text("system", "name", &C::system, &SystemConfig::name));
    f.push_back(text("system", "fspec", &C::system, &SystemConfig::fspec));
    f.push_back(number("system", "nu", &C::system, &SystemConfig::nu));
    f.push_back({"system", "mu", [](const C& c) { return join(c.system.mu); },
                 [](C& c, const std::string& v) {
                   const auto mu = parse_list(v, "system.mu");
                   if (mu.size() != 6) throw ConfigError("system.mu: expected six values");
                   std::copy(mu.begin(), mu.end(), c.system.mu.begin());
                 }});
    f.push_back(number("system", "alpha", &C::system, &SystemConfig::alpha));
    f.push_back(number("system", "eps", &C::system, &SystemConfig::eps));
    f.push_back(number("system", "gamma", &C::system, &SystemConfig::gamma));
    f.push_back(number("system", "beta", &C::system, &SystemConfig::beta));
    f.push_back(count("system", "n", &C::system, &SystemConfig::n));
    f.push_back(count("system", "k0", &C::system, &SystemConfig::k0));
    f.push_back(count("system", "n0", &C::system, &SystemConfig::n0));
    f.push_back(list("system", "a", &C::system, &SystemConfig::a, false));
    f.push_back(list("system", "b", &C::system, &SystemConfig::b, false));
    f.push_back(list("system", "lambda", &C::system, &SystemConfig::lambda, false));

    f.push_back(number("grid", "half_width", &C::solver, &SolverConfig::half_width));
    f.push_back(count("grid", "points", &C::solver, &SolverConfig::points));

    f.push_back(number("solver", "dt", &C::solver, &SolverConfig::dt));
    f.push_back(number("solver", "horizon", &C::solver, &SolverConfig::horizon));
    f.push_back(number("solver", "eps_parabolic", &C::solver, &SolverConfig::eps_parabolic));
    f.push_back(count("solver", "snapshot_stride", &C::solver, &SolverConfig::snapshot_stride));
    f.push_back(flag("solver", "dealias", &C::solver, &SolverConfig::dealias));
    f.push_back(number("solver", "stability_constant", &C::solver, &SolverConfig::stability_constant));
    f.push_back(flag("solver", "enforce_stability", &C::solver, &SolverConfig::enforce_stability));
    f.push_back(number("solver", "blowup_threshold", &C::solver, &SolverConfig::blowup_threshold));
    f.push_back(number("solver", "decay_tol", &C::solver, &SolverConfig::decay_tol));

    f.push_back(number("gauge", "L", &C::solver, &SolverConfig::gauge_L));
    f.push_back({"gauge", "m", [](const C& c) { return std::to_string(c.m); },
                 [](C& c, const std::string& v) {
                   c.m = static_cast<int>(parse_unsigned(v, "gauge.m"));
                   c.solver.energy_order = c.m;
                 }});

    f.push_back(number("data", "amplitude", &C::data, &DataConfig::amplitude));
    f.push_back(list("data", "carriers", &C::data, &DataConfig::carriers, false));
    f.push_back(count("data", "seed", &C::data, &DataConfig::seed));

    f.push_back(list("sweep", "eps", &C::sweep, &SweepConfig::eps, true));
    f.push_back(list("sweep", "nu", &C::sweep, &SweepConfig::nu, true));
    f.push_back(list("sweep", "delta", &C::sweep, &SweepConfig::delta, true));

    f.push_back(text("linear", "preset", &C::linear, &LinearConfig::preset));
    f.push_back(number("linear", "a", &C::linear, &LinearConfig::a));
    f.push_back(number("linear", "b", &C::linear, &LinearConfig::b));
    f.push_back(number("linear", "L", &C::linear, &LinearConfig::L));
    f.push_back(number("linear", "r", &C::linear, &LinearConfig::r));
    f.push_back(number("linear", "horizon", &C::linear, &LinearConfig::horizon));
    f.push_back(number("linear", "dt", &C::linear, &LinearConfig::dt));
    f.push_back(count("linear", "snapshot_stride", &C::linear, &LinearConfig::snapshot_stride));
    f.push_back(flag("linear", "refine", &C::linear, &LinearConfig::refine));

    f.push_back(text("output", "dir", &C::output, &OutputConfig::dir));
    f.push_back(flag("output", "snapshots", &C::output, &OutputConfig::snapshots));
    return f;
  }();
  return table;
}

std::vector<double> dyadic(int from, int to) {
  std::vector<double> v;
  for (int k = from; k <= to; ++k) v.push_back(std::ldexp(1.0, -k));
  return v;
}

void check_sweep(const std::vector<double>& v, std::string_view what, double lo, double hi,
                 bool lo_inclusive) {
  if (v.empty()) throw ConfigError(std::string(what) + ": empty sweep");
  for (double x : v) {
    const bool above = lo_inclusive ? x >= lo : x > lo;
    if (!above || !(x < hi)) {
      throw ConfigError(std::string(what) + ": value " + format_double(x) + " out of range");
    }
  }
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (!(v[i] < v[i - 1])) throw ConfigError(std::string(what) + ": sweep must be strictly monotone");
  }
}

}  // namespace

std::string_view to_string(Experiment e) {
  for (const auto& [k, name] : kExperimentNames) {
    if (k == e) return name;
  }
  return "?";
}

Experiment parse_experiment(std::string_view name) {
  for (const auto& [k, n] : kExperimentNames) {
    if (n == name) return k;
  }
  throw ConfigError("unknown experiment '" + std::string(name) + "'");
}

std::vector<std::string> experiment_names() {
  std::vector<std::string> out;
  for (const auto& entry : kExperimentNames) out.emplace_back(entry.second);
  return out;
}

ExperimentConfig default_config(Experiment e) {
  ExperimentConfig c;
  c.experiment = e;
  c.solver.snapshot_stride = e == Experiment::Solve ? 0 : 100;
  c.solver.energy_order = c.m;
  c.sweep.eps = e == Experiment::ParabolicLimit ? dyadic(2, 5) : dyadic(3, 8);
  // Mollifier rates need content beyond r0 / max(eps); an oscillating
  // packet puts it there.
  if (e == Experiment::MollifierRates) c.data.carriers = {10.0};
  c.sweep.nu = dyadic(2, 6);
  c.sweep.delta = {1e-2, 1e-3, 1e-4};
  return c;
}

void ExperimentConfig::check() const {
  try {
    solver.check();
  } catch (const ConfigError&) {
    throw;
  } catch (const InvalidArgument& e) {
    throw ConfigError(e.what());
  }
  const bool rates = experiment == Experiment::MollifierRates || experiment == Experiment::CauchyRates ||
                     experiment == Experiment::ParabolicLimit ||
                     experiment == Experiment::ContinuousDependence;
  if (rates && (m < 4 || m > 6)) throw ConfigError("gauge.m must lie in [4, 6] for this experiment");
  if (m < 1 || m > 8) throw ConfigError("gauge.m must lie in [1, 8]");
  if (!(solver.gauge_L > 1.0)) throw ConfigError("gauge.L must exceed 1");
  if (!(data.amplitude >= 0.0)) throw ConfigError("data.amplitude must be nonnegative");
  if (data.carriers.empty()) throw ConfigError("data.carriers must not be empty");
  if (output.dir.empty()) throw ConfigError("output.dir must not be empty");

  switch (experiment) {
    case Experiment::MollifierRates:
      check_sweep(sweep.eps, "sweep.eps", 0.0, 1.0, false);
      if (sweep.eps.size() < 4 || sweep.eps.front() / sweep.eps.back() < 4.0) {
        throw ConfigError("sweep.eps: need at least four values spanning two octaves");
      }
      break;
    case Experiment::ParabolicLimit:
      check_sweep(sweep.eps, "sweep.eps", 0.0, 1.0, false);
      if (sweep.eps.size() < 2) throw ConfigError("sweep.eps: need at least two values");
      break;
    case Experiment::CauchyRates:
      check_sweep(sweep.nu, "sweep.nu", 0.0, 1.0, false);
      break;
    case Experiment::ContinuousDependence:
      check_sweep(sweep.delta, "sweep.delta", 0.0, INFINITY, true);
      break;
    case Experiment::LinearGauge: {
      const auto names = linear_preset_names();
      if (std::find(names.begin(), names.end(), linear.preset) == names.end()) {
        throw ConfigError("linear.preset: unknown preset '" + linear.preset + "'");
      }
      if (!(linear.L > 3.0)) throw ConfigError("linear.L must exceed 3");
      if (!(linear.r > 0.0)) throw ConfigError("linear.r must be positive");
      if (linear.a == 0.0) throw ConfigError("linear.a must be nonzero");
      if (!(linear.horizon > 0.0) || !(linear.dt > 0.0)) {
        throw ConfigError("linear.horizon and linear.dt must be positive");
      }
      const double steps = std::ceil(linear.horizon / linear.dt - 1e-9);
      if (linear.snapshot_stride == 0 || steps / static_cast<double>(linear.snapshot_stride) < 7.0) {
        throw ConfigError("linear.snapshot_stride: the energy fit needs at least eight snapshots");
      }
      break;
    }
    case Experiment::Validate:
    case Experiment::Solve:
      break;
  }
  if (experiment != Experiment::LinearGauge) {
    const SystemSpec s = build_system(*this);
    if (data.carriers.size() != 1 && data.carriers.size() != s.n()) {
      throw ConfigError("data.carriers: give one carrier or one per component");
    }
  }
}

ExperimentConfig parse_config(std::string_view text, Experiment fallback,
                              const std::filesystem::path& base_dir) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  try {
    std::istringstream is{std::string(text)};
    pt::read_ini(is, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(std::string("config: ") + e.message() + " at line " + std::to_string(e.line()));
  }
  Experiment e = fallback;
  if (const auto name = tree.get_optional<std::string>("experiment.name")) e = parse_experiment(trim(*name));
  ExperimentConfig c = default_config(e);
  c.base_dir = base_dir;
  for (const auto& [section, body] : tree) {
    if (body.empty() && !body.data().empty()) {
      throw ConfigError("config: key '" + section + "' outside any section");
    }
    for (const auto& [key, value] : body) {
      const auto& table = fields();
      const auto it = std::find_if(table.begin(), table.end(),
                                   [&](const Field& f) { return f.section == section && f.key == key; });
      if (it == table.end()) throw ConfigError("config: unknown key '" + section + "." + key + "'");
      it->set(c, value.data());
    }
  }
  c.check();
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path, Experiment fallback) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path.string() + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), fallback, path.parent_path().empty() ? "." : path.parent_path());
}

std::vector<ConfigEntry> config_entries(const ExperimentConfig& c) {
  std::vector<ConfigEntry> out;
  for (const auto& f : fields()) out.push_back({std::string(f.section), std::string(f.key), f.get(c)});
  return out;
}

std::string to_ini(const ExperimentConfig& c) {
  std::string out;
  std::string current;
  for (const auto& e : config_entries(c)) {
    if (e.section != current) {
      if (!current.empty()) out += "\n";
      out += "[" + e.section + "]\n";
      current = e.section;
    }
    out += e.key + " = " + e.value + "\n";
  }
  return out;
}

SystemSpec build_system(const ExperimentConfig& c) {
  const SystemConfig& s = c.system;
  try {
    if (s.name == "4shro") return builtin_4shro(s.nu, s.mu);
    if (s.name == "wzy") return builtin_wzy(s.alpha, s.eps, s.gamma, s.n);
    if (s.name == "grassmannian") return builtin_grassmannian(s.alpha, s.beta, s.gamma, s.k0, s.n0);
    if (s.name == "linear" || s.name == "fspec") {
      NonlinearitySpec f(s.a.size());
      if (s.name == "fspec") {
        if (s.fspec.empty()) throw ConfigError("system.fspec: path required");
        const std::filesystem::path p = std::filesystem::path(s.fspec).is_absolute()
                                            ? std::filesystem::path(s.fspec)
                                            : c.base_dir / s.fspec;
        std::ifstream in(p);
        if (!in) throw ConfigError("system.fspec: cannot open '" + p.string() + "'");
        std::stringstream ss;
        ss << in.rdbuf();
        f = parse_spec(ss.str());
      }
      SystemSpec spec{s.a, s.b, s.lambda, std::move(f)};
      spec.check();
      return spec;
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const ParseError& e) {
    throw ConfigError("system.fspec: line " + std::to_string(e.line()) + ", column " +
                      std::to_string(e.column()) + ": " + e.what());
  } catch (const InvalidArgument& e) {
    throw ConfigError(std::string("system: ") + e.what());
  }
  throw ConfigError("system.name: unknown system '" + s.name + "'");
}

}  // namespace fdlab::lab
