#include "ingham/runner.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <system_error>

namespace ingham {

using nlohmann::json;

namespace {

std::string format_value(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.11e", v);
  return buf;
}

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json rows_json(const std::vector<ReportRow>& rows) {
  json out = json::array();
  for (const auto& r : rows) {
    out.push_back(json{{"abscissa", number_or_null(r.abscissa)},
                       {"measured", number_or_null(r.measured)},
                       {"reference", number_or_null(r.reference)},
                       {"ratio", number_or_null(r.ratio)},
                       {"flagged", r.flagged}});
  }
  return out;
}

Kernel companion_kernel(const RunConfig& cfg) {
  // The regularity sweep always reports a second flat-top kernel next to the first.
  KernelSpec other = cfg.kernel;
  other.name = cfg.kernel.name == "bump" ? "tent" : "bump";
  return other.build();
}

bool write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) return false;
  f << text;
  f.close();
  return static_cast<bool>(f);
}

}  // namespace

ExperimentReport execute(const RunConfig& cfg) {
  switch (cfg.experiment) {
    case Experiment::bound_table: {
      const Variant v = *variant_from_string(cfg.variant);
      std::optional<MonotoneFunction> growth, decay;
      if (cfg.growth && needs_growth(v)) growth = cfg.growth->build(DomainKind::growth);
      if (cfg.decay && needs_decay(v)) decay = cfg.decay->build(DomainKind::decay);
      return bound_table(v, growth, decay, cfg.c, cfg.k, cfg.t_grid.build());
    }
    case Experiment::kernel_check:
      return kernel_check(cfg.kernel.build(), cfg.s_grid.build(), cfg.tolerances);
    case Experiment::parseval:
      return parseval_sweep(cfg.scenario.build(), cfg.kernel.build(), cfg.R, cfg.t_grid.build(), cfg.tolerances);
    case Experiment::mollifier_rate:
      return check_mollifier_rate(cfg.scenario.build(), cfg.kernel.build(), cfg.R_grid.build(), cfg.T);
    case Experiment::asymptotic_regularity:
      return check_asymptotic_regularity(cfg.scenario.build(), cfg.kernel.build(), cfg.t_grid.build(),
                                         companion_kernel(cfg));
    case Experiment::compare_decay: {
      DecayOptions options;
      options.k = cfg.k;
      return compare_decay(cfg.scenario.build(), *variant_from_string(cfg.variant), cfg.c, cfg.t_grid.build(),
                           options);
    }
    case Experiment::raw_bound_oracle:
      return raw_bound_oracle(*variant_from_string(cfg.variant), cfg.growth->build(DomainKind::growth), cfg.c,
                              cfg.k, cfg.t_grid.build());
  }
  throw std::logic_error("unhandled experiment");
}

std::string format_csv(const std::vector<ReportRow>& rows) {
  std::string out = "abscissa,measured,reference,ratio\n";
  for (const auto& r : rows) {
    out += format_value(r.abscissa);
    out += ',';
    out += format_value(r.measured);
    out += ',';
    out += format_value(r.reference);
    out += ',';
    out += format_value(r.ratio);
    out += '\n';
  }
  return out;
}

json report_json(const ExperimentReport& report, const RunConfig& config, int status) {
  json j;
  j["experiment"] = report.experiment;
  j["status"] = status;
  j["passed"] = report.passed();
  j["converged"] = report.converged;
  j["config"] = config_to_json(config);

  json meta = json::object();
  for (const auto& [k, v] : report.metadata) meta[k] = v;
  j["metadata"] = meta;

  json slopes = json::object();
  for (const auto& [name, fit] : report.slopes) {
    slopes[name] = json{{"slope", number_or_null(fit.slope)}, {"half_width", number_or_null(fit.half_width)}};
  }
  j["slopes"] = slopes;
  j["constant_stability"] = report.constant_stability ? number_or_null(*report.constant_stability) : json(nullptr);

  json checks = json::array();
  for (const auto& c : report.checks) checks.push_back(json{{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  j["checks"] = checks;

  json flagged = json::array();
  for (std::size_t i = 0; i < report.rows.size(); ++i) {
    if (report.rows[i].flagged) flagged.push_back(i);
  }
  j["flagged_rows"] = flagged;
  j["row_count"] = report.rows.size();
  if (!report.secondary_rows.empty()) {
    j["secondary"] = json{{"label", report.secondary_label}, {"rows", rows_json(report.secondary_rows)}};
  }
  return j;
}

OutputPaths output_paths(const std::string& path) {
  std::filesystem::path stem(path);
  if (stem.extension() == ".csv" || stem.extension() == ".json") stem.replace_extension();
  OutputPaths p;
  p.csv = stem;
  p.csv += ".csv";
  p.json = stem;
  p.json += ".json";
  return p;
}

RunOutcome run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  RunOutcome outcome;
  ExperimentReport report;
  try {
    report = execute(config);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    outcome.status = kExitError;
    return outcome;
  }
  outcome.status = report.passed() ? kExitPass : kExitInvariantFailure;

  const bool want_csv = config.output_format != "json";
  const bool want_json = config.output_format != "csv";
  const std::string csv = want_csv ? format_csv(report.rows) : std::string();
  const std::string sidecar = want_json ? report_json(report, config, outcome.status).dump(2) + "\n" : std::string();

  if (config.output_path.empty()) {
    out << csv;
    if (want_csv && want_json) out << '\n';
    out << sidecar;
  } else {
    const OutputPaths paths = output_paths(config.output_path);
    const auto fail = [&](const std::filesystem::path& p) {
      err << "error: cannot write " << p.string() << '\n';
      for (const auto& w : outcome.written) {
        std::error_code ec;
        std::filesystem::remove(w, ec);
      }
      outcome.written.clear();
      outcome.status = kExitError;
      return outcome;
    };
    if (want_csv) {
      if (!write_file(paths.csv, csv)) return fail(paths.csv);
      outcome.written.push_back(paths.csv);
    }
    if (want_json) {
      if (!write_file(paths.json, sidecar)) return fail(paths.json);
      outcome.written.push_back(paths.json);
    }
  }

  for (const auto& c : report.checks) {
    if (!c.passed) err << "check failed: " << c.name << " (" << c.detail << ")\n";
  }
  if (!report.converged) err << "warning: some quadratures did not converge; affected rows are flagged\n";
  return outcome;
}

}  // namespace ingham
