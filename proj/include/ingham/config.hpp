#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "ingham/kernels.hpp"
#include "ingham/quadrature.hpp"
#include "ingham/rate_functions.hpp"
#include "ingham/semigroup_lab.hpp"

namespace ingham {

enum class Experiment {
  bound_table,
  kernel_check,
  parseval,
  mollifier_rate,
  asymptotic_regularity,
  compare_decay,
  raw_bound_oracle
};

std::string_view to_string(Experiment e);
std::optional<Experiment> experiment_from_string(std::string_view name);
/// CLI subcommand name: bound, kernel, parseval, mollifier, regularity, decay, oracle.
std::string_view subcommand_name(Experiment e);
std::optional<Experiment> experiment_from_subcommand(std::string_view name);

/// Every validation problem found, not just the first.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<std::string> errors);
  const std::vector<std::string>& errors() const { return errors_; }

 private:
  std::vector<std::string> errors_;
};

struct GridSpec {
  double min = 1.0;
  double max = 10.0;
  int points = 2;
  bool log = true;
  std::vector<double> values;  // explicit abscissae; overrides min/max/points when non-empty

  std::vector<double> build() const;
};

struct FunctionSpec {
  std::string family = "power";  // power | exponential | constant | tabulated
  double alpha = 1.0;
  double value = 1.0;
  std::vector<double> knots;
  std::vector<double> values;

  MonotoneFunction build(DomainKind domain) const;
};

struct ScenarioSpec {
  std::string family = "single_mode";  // single_mode | cluster_infinity | cluster_zero | combined
  double alpha = 1.0;
  double beta = 2.0;
  long N = 1000;       // cluster size (the infinity block for combined)
  long N_zero = 1000;  // zero block for combined
  double re = -1.0;    // single_mode eigenvalue
  double im = 0.0;
  std::string orbit = "vector";
  double omega = 1.0;
  std::string x = "ones";  // ones | zero

  Scenario build() const;
};

struct KernelSpec {
  std::string name = "tent";
  double sharpness = 2.0;
  double scale = 1.0;

  Kernel build() const;
};

struct RunConfig {
  Experiment experiment = Experiment::bound_table;
  std::optional<FunctionSpec> growth;
  std::optional<FunctionSpec> decay;
  std::string variant = "infinity_smooth";
  double c = 0.45;
  int k = 1;
  ScenarioSpec scenario;
  KernelSpec kernel;
  GridSpec t_grid;
  GridSpec R_grid;
  GridSpec s_grid;
  double R = 1.0;   // kernel scale for the Parseval check
  double T = 10.0;  // time horizon of the mollifier sweep
  QuadratureSpec tolerances;
  std::string output_path;
  std::string output_format = "both";  // csv | json | both
};

/// Flag values; each set field overrides the config file.
struct ConfigOverrides {
  std::optional<std::string> out;
  std::optional<std::string> format;
  std::optional<std::string> variant;
  std::optional<double> c;
  std::optional<int> k;
  std::optional<std::string> kernel;
};

/// Defaults for an experiment, with INGHAM_RATES_TOL applied to the tolerances.
RunConfig default_config(Experiment experiment);

/// Layers defaults < environment < config text < overrides, then validates.
/// `experiment` comes from the CLI subcommand; the text may name the same one.
/// Throws ConfigError listing every problem.
RunConfig load_config(std::optional<Experiment> experiment, const std::optional<std::string>& text,
                      const ConfigOverrides& overrides = {});

/// Config text naming its own experiment.
RunConfig parse_config(std::string_view text);

/// The full effective config, defaults included.
nlohmann::json config_to_json(const RunConfig& config);

}  // namespace ingham
