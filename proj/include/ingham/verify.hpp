#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "ingham/kernels.hpp"
#include "ingham/quadrature.hpp"
#include "ingham/rate_functions.hpp"
#include "ingham/semigroup_lab.hpp"

namespace ingham {

struct ReportRow {
  double abscissa;
  double measured;
  double reference;
  double ratio;  // measured / reference, NaN when reference <= 0
  bool flagged = false;
};

ReportRow make_row(double abscissa, double measured, double reference, bool flagged = false);

struct SlopeFit {
  double slope;
  double half_width;  // standard error of the slope
};

struct Check {
  std::string name;
  bool passed;
  std::string detail;
};

struct ExperimentReport {
  std::string experiment;
  std::vector<ReportRow> rows;
  std::vector<std::pair<std::string, SlopeFit>> slopes;
  std::optional<double> constant_stability;  // max/min of the ratio column
  bool converged = true;
  std::vector<Check> checks;
  std::vector<std::pair<std::string, std::string>> metadata;
  /// A second sweep reported alongside the main one (e.g. another kernel).
  std::string secondary_label;
  std::vector<ReportRow> secondary_rows;

  bool passed() const;
  std::optional<SlopeFit> slope(const std::string& name) const;
  const Check* check(const std::string& name) const;
};

/// Inclusive log-spaced grid with the given number of points per decade.
std::vector<double> log_grid(double lo, double hi, int points_per_decade = 20);
/// Inclusive log-spaced grid with exactly `points` points.
std::vector<double> log_grid_points(double lo, double hi, int points);
std::vector<double> linear_grid(double lo, double hi, int points);

/// Least-squares line through (log x, log y). Needs >= 5 points, all positive.
SlopeFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y);
SlopeFit fit_loglog(const std::vector<ReportRow>& rows);
/// Fit restricted to x >= max(x) / 10^decades.
SlopeFit fit_last_decades(const std::vector<double>& x, const std::vector<double>& y, double decades = 2.0);

/// max ratio over the last decade <= median ratio over the first decade.
bool ratio_dominated(const std::vector<ReportRow>& rows);

/// Largest ratio over the last decade and median ratio over the first; NaN when a ratio is NaN.
struct Dominance {
  double late_max;
  double early_median;
};
Dominance ratio_dominance(const std::vector<ReportRow>& rows);

/// f * phi(t) per mode by time-domain quadrature of a_n e^{lambda v} phi(t - v) over v >= 0.
Eigen::VectorXcd convolve_time_domain(const Scenario& scenario, const Kernel& kernel, double t,
                                      const QuadratureSpec& spec = {});
/// (1/2 pi) int e^{ist} F(s) psi(s) ds per mode by adaptive quadrature over the kernel support.
Eigen::VectorXcd convolve_frequency_domain(const Scenario& scenario, const Kernel& kernel, double t,
                                           const QuadratureSpec& spec = {});
/// f(t) - f * phi(t) per mode, from (1/2 pi) int e^{ist} F(s) (1 - psi(s)) ds: a fixed
/// Gauss rule on the transition band and rotated contours for the two tails.
Eigen::VectorXcd smoothing_defect(const Scenario& scenario, const Kernel& kernel, double t);

struct ParsevalResult {
  Eigen::VectorXcd time_side;
  Eigen::VectorXcd frequency_side;
  double residual;  // sup norm of the difference
};

/// Both sides of f * phi_R(t) = (1/2 pi) int_{-R}^{R} e^{ist} F(s) psi_R(s) ds.
/// Throws ConvergenceError when either quadrature fails to converge.
ParsevalResult check_parseval(const Scenario& scenario, const Kernel& kernel, double t, double R = 1.0,
                              const QuadratureSpec& spec = {});

/// E(R) = max over an evenly spaced grid on [1, T] (step 0.1) of ||f - f*phi_R||.
/// Rows: (R, E(R), 1/R, R E(R)).
ExperimentReport check_mollifier_rate(const Scenario& scenario, const Kernel& kernel,
                                      const std::vector<double>& R_list, double T = 10.0);

/// Rows (t, ||f - f*phi||, 1/t, t ||f - f*phi||) for the kernel and for `second`.
/// Throws AdmissibilityError for kernels without a flat top (fudge).
ExperimentReport check_asymptotic_regularity(const Scenario& scenario, const Kernel& kernel,
                                             const std::vector<double>& t_grid,
                                             const std::optional<Kernel>& second = std::nullopt);

struct DecayOptions {
  int k = 1;
  std::vector<double> envelope_grid;  // extra abscissae for the resolvent envelopes
  bool require_truncation_safe = true;
};

/// Measured orbit norm against the bound built from the scenario's resolvent envelopes.
ExperimentReport compare_decay(const Scenario& scenario, Variant variant, double c,
                               const std::vector<double>& t_grid, const DecayOptions& options = {});

/// Bound values against closed-form references where they exist.
ExperimentReport bound_table(Variant variant, const std::optional<MonotoneFunction>& growth,
                             const std::optional<MonotoneFunction>& decay, double c, int k,
                             const std::vector<double>& t_grid);

/// Raw-bound oracle against the closed-form bound (infinity variants).
ExperimentReport raw_bound_oracle(Variant variant, const MonotoneFunction& growth, double c, int k,
                                  const std::vector<double>& t_grid);

/// Numeric kernel transforms against psi.
ExperimentReport kernel_check(const Kernel& kernel, const std::vector<double>& s_grid,
                              const QuadratureSpec& spec = {});

/// Parseval residuals over a t grid; rows (t, residual, 1e-6, residual / 1e-6).
ExperimentReport parseval_sweep(const Scenario& scenario, const Kernel& kernel, double R,
                                const std::vector<double>& t_grid, const QuadratureSpec& spec = {});

}  // namespace ingham
