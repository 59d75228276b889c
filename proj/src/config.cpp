#include "ingham/config.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <initializer_list>
#include <sstream>
#include <utility>

#include "ingham/verify.hpp"

namespace ingham {

using nlohmann::json;

namespace {

struct ExperimentName {
  Experiment experiment;
  std::string_view name;
  std::string_view subcommand;
};

constexpr std::array<ExperimentName, 7> kExperiments{{
    {Experiment::bound_table, "bound_table", "bound"},
    {Experiment::kernel_check, "kernel_check", "kernel"},
    {Experiment::parseval, "parseval", "parseval"},
    {Experiment::mollifier_rate, "mollifier_rate", "mollifier"},
    {Experiment::asymptotic_regularity, "asymptotic_regularity", "regularity"},
    {Experiment::compare_decay, "compare_decay", "decay"},
    {Experiment::raw_bound_oracle, "raw_bound_oracle", "oracle"},
}};

bool uses_variant(Experiment e) {
  return e == Experiment::bound_table || e == Experiment::compare_decay || e == Experiment::raw_bound_oracle;
}

bool uses_scenario(Experiment e) {
  return e == Experiment::parseval || e == Experiment::mollifier_rate ||
         e == Experiment::asymptotic_regularity || e == Experiment::compare_decay;
}

bool uses_kernel(Experiment e) {
  return e == Experiment::kernel_check || e == Experiment::parseval || e == Experiment::mollifier_rate ||
         e == Experiment::asymptotic_regularity;
}

std::string join_keys(std::initializer_list<std::string_view> keys) {
  std::string out;
  for (auto k : keys) {
    if (!out.empty()) out += ", ";
    out += k;
  }
  return out;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

/// Reads typed fields out of a JSON object, recording every problem.
class Reader {
 public:
  explicit Reader(std::vector<std::string>& errors) : errors_(errors) {}

  bool object(const json& j, const std::string& path) {
    if (j.is_object()) return true;
    errors_.push_back(path + ": expected an object");
    return false;
  }

  void reject_unknown(const json& j, const std::string& path, std::initializer_list<std::string_view> allowed) {
    for (const auto& item : j.items()) {
      if (std::find(allowed.begin(), allowed.end(), item.key()) == allowed.end()) {
        errors_.push_back(key(path, item.key()) + ": unknown key (allowed: " + join_keys(allowed) + ")");
      }
    }
  }

  void number(const json& j, const std::string& path, const char* name, double& out) {
    if (!j.contains(name)) return;
    const auto& v = j.at(name);
    if (!v.is_number()) {
      errors_.push_back(key(path, name) + ": expected a number");
      return;
    }
    out = v.get<double>();
  }

  template <class Int>
  void integer(const json& j, const std::string& path, const char* name, Int& out) {
    if (!j.contains(name)) return;
    const auto& v = j.at(name);
    if (v.is_number_integer()) {
      out = static_cast<Int>(v.get<long long>());
    } else if (v.is_number_float() && std::floor(v.get<double>()) == v.get<double>() &&
               std::abs(v.get<double>()) < 9e15) {
      out = static_cast<Int>(v.get<double>());
    } else {
      errors_.push_back(key(path, name) + ": expected an integer");
    }
  }

  void string(const json& j, const std::string& path, const char* name, std::string& out) {
    if (!j.contains(name)) return;
    const auto& v = j.at(name);
    if (!v.is_string()) {
      errors_.push_back(key(path, name) + ": expected a string");
      return;
    }
    out = v.get<std::string>();
  }

  void numbers(const json& j, const std::string& path, const char* name, std::vector<double>& out) {
    if (!j.contains(name)) return;
    const auto& v = j.at(name);
    if (!v.is_array() || !std::all_of(v.begin(), v.end(), [](const json& e) { return e.is_number(); })) {
      errors_.push_back(key(path, name) + ": expected an array of numbers");
      return;
    }
    out.clear();
    for (const auto& e : v) out.push_back(e.get<double>());
  }

  static std::string key(const std::string& path, std::string_view name) {
    return path.empty() ? std::string(name) : path + "." + std::string(name);
  }

 private:
  std::vector<std::string>& errors_;
};

void read_function(Reader& r, const json& j, const std::string& path, FunctionSpec& f) {
  if (!r.object(j, path)) return;
  r.reject_unknown(j, path, {"family", "alpha", "value", "knots", "values"});
  r.string(j, path, "family", f.family);
  r.number(j, path, "alpha", f.alpha);
  r.number(j, path, "value", f.value);
  r.numbers(j, path, "knots", f.knots);
  r.numbers(j, path, "values", f.values);
}

void read_grid(Reader& r, const json& j, const std::string& path, GridSpec& g) {
  if (!r.object(j, path)) return;
  r.reject_unknown(j, path, {"min", "max", "points", "spacing", "values"});
  r.number(j, path, "min", g.min);
  r.number(j, path, "max", g.max);
  r.integer(j, path, "points", g.points);
  std::string spacing = g.log ? "log" : "linear";
  r.string(j, path, "spacing", spacing);
  g.log = spacing != "linear";  // bad spellings are reported by check_spacing
  r.numbers(j, path, "values", g.values);
  // Explicit min/max/points without values replaces an inherited explicit list.
  if (!j.contains("values") && (j.contains("min") || j.contains("max") || j.contains("points"))) g.values.clear();
}

struct Parsed {
  bool c_set = false;
};

Parsed apply_json(RunConfig& cfg, const json& j, std::vector<std::string>& errors) {
  Reader r(errors);
  Parsed parsed;
  if (!r.object(j, "config")) return parsed;
  r.reject_unknown(j, "",
                   {"experiment", "growth", "decay", "variant", "c", "k", "scenario", "kernel", "t_grid", "R_grid",
                    "s_grid", "R", "T", "tolerances", "output"});

  if (j.contains("growth")) {
    FunctionSpec f = cfg.growth.value_or(FunctionSpec{});
    read_function(r, j.at("growth"), "growth", f);
    cfg.growth = f;
  }
  if (j.contains("decay")) {
    FunctionSpec f = cfg.decay.value_or(FunctionSpec{});
    read_function(r, j.at("decay"), "decay", f);
    cfg.decay = f;
  }
  r.string(j, "", "variant", cfg.variant);
  parsed.c_set = j.contains("c");
  r.number(j, "", "c", cfg.c);
  r.integer(j, "", "k", cfg.k);

  if (j.contains("scenario")) {
    const auto& s = j.at("scenario");
    if (r.object(s, "scenario")) {
      r.reject_unknown(s, "scenario", {"family", "alpha", "beta", "N", "N_zero", "re", "im", "orbit", "omega", "x"});
      auto& sc = cfg.scenario;
      r.string(s, "scenario", "family", sc.family);
      r.number(s, "scenario", "alpha", sc.alpha);
      r.number(s, "scenario", "beta", sc.beta);
      r.integer(s, "scenario", "N", sc.N);
      r.integer(s, "scenario", "N_zero", sc.N_zero);
      r.number(s, "scenario", "re", sc.re);
      r.number(s, "scenario", "im", sc.im);
      r.string(s, "scenario", "orbit", sc.orbit);
      r.number(s, "scenario", "omega", sc.omega);
      r.string(s, "scenario", "x", sc.x);
    }
  }
  if (j.contains("kernel")) {
    const auto& k = j.at("kernel");
    if (k.is_string()) {
      cfg.kernel.name = k.get<std::string>();
    } else if (r.object(k, "kernel")) {
      r.reject_unknown(k, "kernel", {"name", "sharpness", "scale"});
      r.string(k, "kernel", "name", cfg.kernel.name);
      r.number(k, "kernel", "sharpness", cfg.kernel.sharpness);
      r.number(k, "kernel", "scale", cfg.kernel.scale);
    }
  }
  if (j.contains("t_grid")) read_grid(r, j.at("t_grid"), "t_grid", cfg.t_grid);
  if (j.contains("R_grid")) read_grid(r, j.at("R_grid"), "R_grid", cfg.R_grid);
  if (j.contains("s_grid")) read_grid(r, j.at("s_grid"), "s_grid", cfg.s_grid);
  r.number(j, "", "R", cfg.R);
  r.number(j, "", "T", cfg.T);

  if (j.contains("tolerances")) {
    const auto& t = j.at("tolerances");
    if (r.object(t, "tolerances")) {
      r.reject_unknown(t, "tolerances", {"abs_tol", "rel_tol", "max_subdivisions"});
      r.number(t, "tolerances", "abs_tol", cfg.tolerances.abs_tol);
      r.number(t, "tolerances", "rel_tol", cfg.tolerances.rel_tol);
      r.integer(t, "tolerances", "max_subdivisions", cfg.tolerances.max_subdivisions);
    }
  }
  if (j.contains("output")) {
    const auto& o = j.at("output");
    if (r.object(o, "output")) {
      r.reject_unknown(o, "output", {"path", "format"});
      r.string(o, "output", "path", cfg.output_path);
      r.string(o, "output", "format", cfg.output_format);
    }
  }
  return parsed;
}

void check_spacing(const json& j, const char* name, std::vector<std::string>& errors) {
  if (!j.is_object() || !j.contains(name) || !j.at(name).is_object()) return;
  const auto& g = j.at(name);
  if (g.contains("spacing") && g.at("spacing").is_string()) {
    const auto s = g.at("spacing").get<std::string>();
    if (s != "log" && s != "linear") errors.push_back(std::string(name) + ".spacing: must be log or linear, got " + s);
  }
}

void validate_grid(const GridSpec& g, const std::string& name, bool positive, std::vector<std::string>& errors) {
  if (!g.values.empty()) {
    for (double v : g.values) {
      if (!std::isfinite(v)) {
        errors.push_back(name + ".values: entries must be finite");
        return;
      }
      if (positive && v <= 0.0) {
        errors.push_back(name + ".values: entries must be > 0, got " + fmt(v));
        return;
      }
    }
    return;
  }
  if (!std::isfinite(g.min) || !std::isfinite(g.max)) {
    errors.push_back(name + ": min and max must be finite");
    return;
  }
  if (g.points < 1) errors.push_back(name + ".points: must be >= 1 (grids are non-empty), got " + std::to_string(g.points));
  if (g.max < g.min) errors.push_back(name + ": requires min <= max, got " + fmt(g.min) + " > " + fmt(g.max));
  if (g.points == 1 && g.max != g.min) errors.push_back(name + ": a single point needs min == max");
  if ((g.log || positive) && g.min <= 0.0) {
    errors.push_back(name + ".min: must be > 0" + std::string(g.log ? " for log spacing" : "") + ", got " + fmt(g.min));
  }
}

void validate_function(const FunctionSpec& f, const std::string& name, DomainKind domain,
                       std::vector<std::string>& errors) {
  try {
    (void)f.build(domain);
  } catch (const std::exception& e) {
    errors.push_back(name + ": " + e.what());
  }
}

void validate(const RunConfig& cfg, bool kernel_known, std::vector<std::string>& errors) {
  const Experiment e = cfg.experiment;

  if (uses_variant(e)) {
    const auto v = variant_from_string(cfg.variant);
    if (!v) {
      errors.push_back("variant: unknown '" + cfg.variant +
                       "' (expected infinity_Ck, infinity_smooth, zero_Ck, zero_smooth, zero_infinity_Ck, "
                       "zero_infinity_smooth)");
    } else {
      if (!(cfg.c > 0.0 && cfg.c < max_admissible_c(*v))) {
        errors.push_back("c: " + fmt(cfg.c) + " violates " + admissible_c_text(*v) + " for variant " + cfg.variant);
      }
      if (e == Experiment::bound_table) {
        if (needs_growth(*v) && !cfg.growth) errors.push_back("growth: required by variant " + cfg.variant);
        if (needs_decay(*v) && !cfg.decay) errors.push_back("decay: required by variant " + cfg.variant);
      }
      if (e == Experiment::raw_bound_oracle) {
        if (needs_decay(*v)) errors.push_back("variant: raw_bound_oracle needs infinity_Ck or infinity_smooth");
        if (!cfg.growth) errors.push_back("growth: required by raw_bound_oracle");
      }
    }
    if (cfg.k < 1) errors.push_back("k: must be >= 1, got " + std::to_string(cfg.k));
    if (e != Experiment::compare_decay) {
      if (cfg.growth) validate_function(*cfg.growth, "growth", DomainKind::growth, errors);
      if (cfg.decay) validate_function(*cfg.decay, "decay", DomainKind::decay, errors);
    }
  }

  if (uses_scenario(e)) {
    const auto& s = cfg.scenario;
    const bool family_ok = s.family == "single_mode" || s.family == "cluster_infinity" || s.family == "cluster_zero" ||
                           s.family == "combined";
    if (!family_ok) {
      errors.push_back("scenario.family: unknown '" + s.family +
                       "' (expected single_mode, cluster_infinity, cluster_zero, combined)");
    }
    if (!orbit_from_string(s.orbit)) {
      errors.push_back("scenario.orbit: unknown '" + s.orbit + "' (expected Ainv, AR_omega, AR_omega_sq, vector)");
    }
    if (!(s.omega > 0.0) || !std::isfinite(s.omega)) errors.push_back("scenario.omega: must be > 0, got " + fmt(s.omega));
    if (s.x != "ones" && s.x != "zero") errors.push_back("scenario.x: must be ones or zero, got " + s.x);
    if (s.family == "cluster_infinity" || s.family == "combined") {
      if (!(s.alpha > 0.0)) errors.push_back("scenario.alpha: must be > 0, got " + fmt(s.alpha));
    }
    if (s.family == "cluster_zero" || s.family == "combined") {
      if (!(s.beta > 1.0)) errors.push_back("scenario.beta: must be > 1, got " + fmt(s.beta));
    }
    if (s.family != "single_mode" && s.N < 1) errors.push_back("scenario.N: must be >= 1, got " + std::to_string(s.N));
    if (s.family == "combined" && s.N_zero < 1) {
      errors.push_back("scenario.N_zero: must be >= 1, got " + std::to_string(s.N_zero));
    }
    if (s.family == "single_mode" && !(s.re < 0.0)) {
      errors.push_back("scenario.re: the eigenvalue needs Re < 0, got " + fmt(s.re));
    }
  }

  if (uses_kernel(e)) {
    if (!kernel_known) {
      errors.push_back("kernel.name: unknown '" + cfg.kernel.name + "' (expected tent, fudge, bump)");
    } else if (e == Experiment::asymptotic_regularity && cfg.kernel.name == "fudge") {
      errors.push_back("kernel: fudge is inadmissible for asymptotic_regularity (its transform has no flat top)");
    }
    if (!(cfg.kernel.sharpness > 0.0)) errors.push_back("kernel.sharpness: must be > 0, got " + fmt(cfg.kernel.sharpness));
    if (!(cfg.kernel.scale > 0.0)) errors.push_back("kernel.scale: must be > 0, got " + fmt(cfg.kernel.scale));
  }

  switch (e) {
    case Experiment::kernel_check:
      validate_grid(cfg.s_grid, "s_grid", false, errors);
      break;
    case Experiment::mollifier_rate:
      validate_grid(cfg.R_grid, "R_grid", true, errors);
      if (!(cfg.T >= 1.0)) errors.push_back("T: must be >= 1, got " + fmt(cfg.T));
      break;
    case Experiment::parseval:
      validate_grid(cfg.t_grid, "t_grid", false, errors);
      if (!(cfg.R > 0.0)) errors.push_back("R: must be > 0, got " + fmt(cfg.R));
      for (double t : cfg.t_grid.build()) {
        if (t < 0.0) {
          errors.push_back("t_grid: parseval needs t >= 0");
          break;
        }
      }
      break;
    default:
      validate_grid(cfg.t_grid, "t_grid", true, errors);
      break;
  }

  if (!(cfg.tolerances.abs_tol > 0.0)) errors.push_back("tolerances.abs_tol: must be > 0");
  if (!(cfg.tolerances.rel_tol > 0.0)) errors.push_back("tolerances.rel_tol: must be > 0");
  if (cfg.tolerances.max_subdivisions < 1) errors.push_back("tolerances.max_subdivisions: must be >= 1");
  if (cfg.output_format != "csv" && cfg.output_format != "json" && cfg.output_format != "both") {
    errors.push_back("output.format: must be csv, json or both, got " + cfg.output_format);
  }
}

json function_json(const FunctionSpec& f) {
  json j{{"family", f.family}};
  if (f.family == "power" || f.family == "exponential") j["alpha"] = f.alpha;
  if (f.family == "constant") j["value"] = f.value;
  if (f.family == "tabulated") {
    j["knots"] = f.knots;
    j["values"] = f.values;
  }
  return j;
}

json grid_json(const GridSpec& g) {
  if (!g.values.empty()) return json{{"values", g.values}};
  return json{{"min", g.min}, {"max", g.max}, {"points", g.points}, {"spacing", g.log ? "log" : "linear"}};
}

}  // namespace

std::string_view to_string(Experiment e) {
  for (const auto& x : kExperiments) {
    if (x.experiment == e) return x.name;
  }
  return "unknown";
}

std::optional<Experiment> experiment_from_string(std::string_view name) {
  for (const auto& x : kExperiments) {
    if (x.name == name) return x.experiment;
  }
  return std::nullopt;
}

std::string_view subcommand_name(Experiment e) {
  for (const auto& x : kExperiments) {
    if (x.experiment == e) return x.subcommand;
  }
  return "unknown";
}

std::optional<Experiment> experiment_from_subcommand(std::string_view name) {
  for (const auto& x : kExperiments) {
    if (x.subcommand == name) return x.experiment;
  }
  return std::nullopt;
}

ConfigError::ConfigError(std::vector<std::string> errors)
    : std::runtime_error([&] {
        std::string msg = "invalid configuration:";
        for (const auto& e : errors) msg += "\n  " + e;
        return msg;
      }()),
      errors_(std::move(errors)) {}

std::vector<double> GridSpec::build() const {
  if (!values.empty()) return values;
  if (points == 1) return {min};
  return log ? log_grid_points(min, max, points) : linear_grid(min, max, points);
}

MonotoneFunction FunctionSpec::build(DomainKind domain) const {
  if (family == "power") {
    if (!(alpha > 0.0)) throw AdmissibilityError("power family needs alpha > 0");
    return MonotoneFunction::power(domain, alpha);
  }
  if (family == "exponential") {
    if (!(alpha > 0.0)) throw AdmissibilityError("exponential family needs alpha > 0");
    return MonotoneFunction::exponential(domain, alpha);
  }
  if (family == "constant") return MonotoneFunction::constant(domain, value);
  if (family == "tabulated") return MonotoneFunction::tabulated(domain, knots, values);
  throw AdmissibilityError("unknown family '" + family + "' (expected power, exponential, constant, tabulated)");
}

Scenario ScenarioSpec::build() const {
  const OrbitKind kind = orbit_from_string(orbit).value_or(OrbitKind::vector);
  Scenario s = [&] {
    if (family == "cluster_infinity") return polynomial_cluster_infinity(alpha, N, kind, omega);
    if (family == "cluster_zero") return polynomial_cluster_zero(beta, N, kind, omega);
    if (family == "combined") return combined_clusters(alpha, N, beta, N_zero, kind, omega);
    return single_mode(Complex(re, im), kind, omega);
  }();
  if (x == "zero") s = with_vector(std::move(s), Eigen::VectorXcd::Zero(s.op.size()));
  return s;
}

Kernel KernelSpec::build() const {
  const auto kind = kernel_from_string(name);
  if (!kind) throw KernelError("unknown kernel '" + name + "'");
  return make_kernel(*kind, scale, sharpness);
}

RunConfig default_config(Experiment experiment) {
  RunConfig cfg;
  cfg.experiment = experiment;
  cfg.tolerances = default_quadrature_spec();
  switch (experiment) {
    case Experiment::bound_table:
      cfg.growth = FunctionSpec{"power", 1.0, 1.0, {}, {}};
      cfg.variant = "infinity_smooth";
      cfg.c = 0.45;
      cfg.t_grid = {10.0, 1e4, 60, true, {}};
      break;
    case Experiment::kernel_check:
      cfg.kernel.name = "tent";
      cfg.s_grid = {0.0, 1.2, 25, false, {}};
      break;
    case Experiment::parseval:
      cfg.scenario.family = "single_mode";
      cfg.scenario.re = -1.0;
      cfg.scenario.orbit = "vector";
      cfg.kernel.name = "tent";
      cfg.R = 1.0;
      cfg.t_grid = {0.0, 5.0, 6, false, {}};
      break;
    case Experiment::mollifier_rate:
      cfg.scenario.family = "single_mode";
      cfg.scenario.re = -1.0;
      cfg.scenario.im = 1.0;
      cfg.scenario.orbit = "vector";
      cfg.kernel.name = "tent";
      cfg.R_grid = {0.0, 0.0, 0, true, {4.0, 8.0, 16.0, 32.0}};
      cfg.T = 10.0;
      break;
    case Experiment::asymptotic_regularity:
      cfg.scenario.family = "cluster_zero";
      cfg.scenario.beta = 2.0;
      cfg.scenario.N = 1000;
      cfg.scenario.orbit = "AR_omega";
      cfg.kernel.name = "tent";
      cfg.t_grid = {10.0, 1000.0, 41, true, {}};
      break;
    case Experiment::compare_decay:
      cfg.scenario.family = "cluster_infinity";
      cfg.scenario.alpha = 1.0;
      cfg.scenario.N = 10000;
      cfg.scenario.orbit = "Ainv";
      cfg.variant = "infinity_smooth";
      cfg.c = 0.45;
      cfg.t_grid = {10.0, 1000.0, 41, true, {}};
      break;
    case Experiment::raw_bound_oracle:
      cfg.growth = FunctionSpec{"power", 1.0, 1.0, {}, {}};
      cfg.variant = "infinity_smooth";
      cfg.c = 0.45;
      cfg.t_grid = {1e3, 1e5, 41, true, {}};
      break;
  }
  return cfg;
}

RunConfig load_config(std::optional<Experiment> experiment, const std::optional<std::string>& text,
                      const ConfigOverrides& overrides) {
  std::vector<std::string> errors;
  json j;
  if (text) {
    try {
      j = json::parse(*text);
    } catch (const json::parse_error& e) {
      throw ConfigError({std::string("syntax: ") + e.what()});
    }
    if (!j.is_object()) throw ConfigError({"config: expected an object at the top level"});
    if (j.contains("experiment")) {
      const auto& e = j.at("experiment");
      const auto named = e.is_string() ? experiment_from_string(e.get<std::string>()) : std::nullopt;
      if (!named) {
        errors.push_back("experiment: unknown " + e.dump() +
                         " (expected bound_table, kernel_check, parseval, mollifier_rate, asymptotic_regularity, "
                         "compare_decay, raw_bound_oracle)");
      } else if (experiment && *named != *experiment) {
        errors.push_back("experiment: config names " + std::string(to_string(*named)) + " but the subcommand runs " +
                         std::string(to_string(*experiment)));
      } else {
        experiment = named;
      }
    }
  }
  if (!experiment) {
    if (errors.empty()) errors.push_back("experiment: missing");
    throw ConfigError(std::move(errors));
  }

  RunConfig cfg = default_config(*experiment);
  const std::string default_variant = cfg.variant;
  bool c_set = false;
  if (text) {
    check_spacing(j, "t_grid", errors);
    check_spacing(j, "R_grid", errors);
    check_spacing(j, "s_grid", errors);
    c_set = apply_json(cfg, j, errors).c_set;
  }

  if (overrides.out) cfg.output_path = *overrides.out;
  if (overrides.format) cfg.output_format = *overrides.format;
  if (overrides.variant) cfg.variant = *overrides.variant;
  if (overrides.c) {
    cfg.c = *overrides.c;
    c_set = true;
  }
  if (overrides.k) cfg.k = *overrides.k;
  if (overrides.kernel) cfg.kernel.name = *overrides.kernel;

  // A variant change without an explicit c picks up the new variant's default.
  if (!c_set && cfg.variant != default_variant) {
    if (const auto v = variant_from_string(cfg.variant)) cfg.c = default_c(*v);
  }

  validate(cfg, kernel_from_string(cfg.kernel.name).has_value(), errors);
  if (!errors.empty()) throw ConfigError(std::move(errors));
  return cfg;
}

RunConfig parse_config(std::string_view text) { return load_config(std::nullopt, std::string(text)); }

json config_to_json(const RunConfig& cfg) {
  json j;
  j["experiment"] = std::string(to_string(cfg.experiment));
  if (cfg.growth) j["growth"] = function_json(*cfg.growth);
  if (cfg.decay) j["decay"] = function_json(*cfg.decay);
  j["variant"] = cfg.variant;
  j["c"] = cfg.c;
  j["k"] = cfg.k;
  const auto& s = cfg.scenario;
  j["scenario"] = json{{"family", s.family}, {"alpha", s.alpha}, {"beta", s.beta},   {"N", s.N},
                       {"N_zero", s.N_zero}, {"re", s.re},       {"im", s.im},       {"orbit", s.orbit},
                       {"omega", s.omega},   {"x", s.x}};
  j["kernel"] = json{{"name", cfg.kernel.name}, {"sharpness", cfg.kernel.sharpness}, {"scale", cfg.kernel.scale}};
  j["t_grid"] = grid_json(cfg.t_grid);
  j["R_grid"] = grid_json(cfg.R_grid);
  j["s_grid"] = grid_json(cfg.s_grid);
  j["R"] = cfg.R;
  j["T"] = cfg.T;
  j["tolerances"] = json{{"abs_tol", cfg.tolerances.abs_tol},
                         {"rel_tol", cfg.tolerances.rel_tol},
                         {"max_subdivisions", cfg.tolerances.max_subdivisions}};
  j["output"] = json{{"path", cfg.output_path}, {"format", cfg.output_format}};
  return j;
}

}  // namespace ingham
