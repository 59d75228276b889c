#include "ingham/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "fixed_rule.hpp"
#include "ingham/parallel.hpp"

namespace ingham {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kParsevalThreshold = 1e-6;

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const auto n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

SlopeFit fit_logs(const std::vector<double>& lx, const std::vector<double>& ly) {
  const auto n = lx.size();
  if (n < 5) throw DomainError("a log-log fit needs at least 5 points (got " + std::to_string(n) + ")");
  Eigen::Map<const Eigen::ArrayXd> X(lx.data(), static_cast<Eigen::Index>(n));
  Eigen::Map<const Eigen::ArrayXd> Y(ly.data(), static_cast<Eigen::Index>(n));
  const Eigen::ArrayXd dx = X - X.mean();
  const Eigen::ArrayXd dy = Y - Y.mean();
  const double sxx = dx.square().sum();
  if (!(sxx > 0.0)) throw DomainError("a log-log fit needs distinct abscissae");
  const double slope = (dx * dy).sum() / sxx;
  const double residual = (dy - slope * dx).square().sum();
  const double half_width = std::sqrt(residual / static_cast<double>(n - 2) / sxx);
  return {slope, half_width};
}

double max_ratio_spread(const std::vector<ReportRow>& rows) {
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (const auto& r : rows) {
    lo = std::min(lo, r.ratio);
    hi = std::max(hi, r.ratio);
  }
  if (hi == 0.0) return 1.0;
  return hi / lo;
}

}  // namespace

ReportRow make_row(double abscissa, double measured, double reference, bool flagged) {
  const double ratio = reference > 0.0 ? measured / reference : kNaN;
  return {abscissa, measured, reference, ratio, flagged};
}

bool ExperimentReport::passed() const {
  if (!converged) return false;
  for (const auto& r : rows)
    if (r.flagged) return false;
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

std::optional<SlopeFit> ExperimentReport::slope(const std::string& name) const {
  for (const auto& [key, fit] : slopes)
    if (key == name) return fit;
  return std::nullopt;
}

const Check* ExperimentReport::check(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

std::vector<double> log_grid(double lo, double hi, int points_per_decade) {
  if (!(lo > 0.0 && hi >= lo) || points_per_decade < 1)
    throw std::invalid_argument("log grid needs 0 < lo <= hi and a positive density");
  const double decades = std::log10(hi / lo);
  const int intervals = std::max(1, static_cast<int>(std::lround(decades * points_per_decade)));
  return log_grid_points(lo, hi, intervals + 1);
}

std::vector<double> log_grid_points(double lo, double hi, int points) {
  if (!(lo > 0.0 && hi >= lo) || points < 1) throw std::invalid_argument("log grid needs 0 < lo <= hi and points >= 1");
  if (points == 1) return {lo};
  std::vector<double> grid(static_cast<std::size_t>(points));
  const double a = std::log(lo), b = std::log(hi);
  for (int i = 0; i < points; ++i) grid[static_cast<std::size_t>(i)] = std::exp(a + (b - a) * i / (points - 1));
  grid.front() = lo;
  grid.back() = hi;
  return grid;
}

std::vector<double> linear_grid(double lo, double hi, int points) {
  if (!(hi >= lo) || points < 1) throw std::invalid_argument("linear grid needs lo <= hi and points >= 1");
  if (points == 1) return {lo};
  std::vector<double> grid(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) grid[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (points - 1);
  grid.back() = hi;
  return grid;
}

SlopeFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw DomainError("fit_loglog needs equally many abscissae and values");
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0))
      throw DomainError("fit_loglog needs positive values (row " + std::to_string(i) + ")");
    lx.push_back(std::log(x[i]));
    ly.push_back(std::log(y[i]));
  }
  return fit_logs(lx, ly);
}

SlopeFit fit_loglog(const std::vector<ReportRow>& rows) {
  std::vector<double> x, y;
  for (const auto& r : rows) {
    x.push_back(r.abscissa);
    y.push_back(r.measured);
  }
  return fit_loglog(x, y);
}

SlopeFit fit_last_decades(const std::vector<double>& x, const std::vector<double>& y, double decades) {
  if (x.empty() || x.size() != y.size()) throw DomainError("fit_last_decades needs matching, non-empty data");
  const double cut = *std::max_element(x.begin(), x.end()) * std::pow(10.0, -decades) * (1.0 - 1e-12);
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] >= cut) {
      xs.push_back(x[i]);
      ys.push_back(y[i]);
    }
  return fit_loglog(xs, ys);
}

Dominance ratio_dominance(const std::vector<ReportRow>& rows) {
  if (rows.empty()) return {kNaN, kNaN};
  const double first = rows.front().abscissa * 10.0 * (1.0 + 1e-12);
  const double last = rows.back().abscissa / 10.0 * (1.0 - 1e-12);
  std::vector<double> early;
  double late = 0.0;
  for (const auto& r : rows) {
    if (std::isnan(r.ratio)) return {kNaN, kNaN};
    if (r.abscissa <= first) early.push_back(r.ratio);
    if (r.abscissa >= last) late = std::max(late, r.ratio);
  }
  return {late, median(early)};
}

bool ratio_dominated(const std::vector<ReportRow>& rows) {
  const auto d = ratio_dominance(rows);
  return d.late_max <= d.early_median;
}

Eigen::VectorXcd convolve_time_domain(const Scenario& scenario, const Kernel& kernel, double t,
                                      const QuadratureSpec& spec) {
  const auto& lambda = scenario.op.eigenvalues();
  const Eigen::VectorXcd a = scenario.coefficients();
  Eigen::VectorXcd out(lambda.size());
  parallel_for(static_cast<std::size_t>(lambda.size()), [&](std::size_t i) {
    const auto n = static_cast<Eigen::Index>(i);
    const Complex l = lambda[n];
    auto part = [&](bool imaginary) {
      RealFunction g = [&, imaginary](double v) {
        const Complex e = std::exp(l * v);
        return (imaginary ? e.imag() : e.real()) * kernel.time(t - v);
      };
      QuadratureResult r;
      if (kernel.kind() == KernelKind::bump) {
        const double extent = kernel.time_extent();
        const double lo = std::max(0.0, t - extent), hi = std::max(0.0, t + extent);
        std::vector<double> breaks;
        const double step = std::max(1.0 / kernel.scale(), (hi - lo) / 400.0);
        for (double b = lo + step; b < hi; b += step) breaks.push_back(b);
        r = integrate_with_breaks(g, lo, hi, breaks, spec);
      } else {
        r = integrate_semi_infinite(g, 0.0, ExponentialDecay{-l.real()}, spec);
      }
      if (!r.converged) throw ConvergenceError("time-domain convolution did not converge at t=" + fmt(t));
      return r.value;
    };
    out[n] = a[n] * Complex(part(false), part(true));
  });
  return out;
}

Eigen::VectorXcd convolve_frequency_domain(const Scenario& scenario, const Kernel& kernel, double t,
                                           const QuadratureSpec& spec) {
  const auto& lambda = scenario.op.eigenvalues();
  const Eigen::VectorXcd a = scenario.coefficients();
  const double S = kernel.support();
  Eigen::VectorXcd out(lambda.size());
  parallel_for(static_cast<std::size_t>(lambda.size()), [&](std::size_t i) {
    const auto n = static_cast<Eigen::Index>(i);
    const Complex l = lambda[n];
    std::vector<double> breaks = kernel.frequency_breaks();
    breaks.push_back(l.imag());
    for (double scale = std::abs(l.real()); scale < 2.0 * S; scale *= 10.0) {
      breaks.push_back(l.imag() - scale);
      breaks.push_back(l.imag() + scale);
    }
    std::sort(breaks.begin(), breaks.end());
    ComplexFunction g = [&](double s) {
      return std::exp(Complex(0.0, s * t)) * kernel.freq(s) / (Complex(0.0, s) - l);
    };
    const auto r = integrate_complex(g, -S, S, breaks, spec);
    if (!r.converged) throw ConvergenceError("frequency-side integral did not converge at t=" + fmt(t));
    out[n] = a[n] * r.value / (2.0 * kPi);
  });
  return out;
}

namespace {

// Node set for sum_k c_k / (i z_k - lambda).
struct ContourNodes {
  std::vector<Complex> z;
  std::vector<Complex> c;
};

// Distance from the pole of 1/(is - lambda), at s = Im(lambda) + i|Re(lambda)|, to the real segment [lo, hi].
double pole_distance_to_segment(const Eigen::VectorXcd& lambda, double lo, double hi) {
  double best = std::numeric_limits<double>::infinity();
  for (Eigen::Index n = 0; n < lambda.size(); ++n) {
    const double x = lambda[n].imag(), y = std::abs(lambda[n].real());
    const double dx = x < lo ? lo - x : (x > hi ? x - hi : 0.0);
    best = std::min(best, std::hypot(dx, y));
  }
  return best;
}

// Distance from the pole to the ray start + w*y, y >= 0.
double pole_distance_to_ray(const Eigen::VectorXcd& lambda, double start, Complex w) {
  double best = std::numeric_limits<double>::infinity();
  for (Eigen::Index n = 0; n < lambda.size(); ++n) {
    const Complex p(lambda[n].imag(), std::abs(lambda[n].real()));
    const Complex d = p - start;
    const double along = std::max(0.0, (d * std::conj(w)).real());
    best = std::min(best, std::abs(d - along * w));
  }
  return best;
}

int panel_count(double length, double width) {
  const double panels = std::ceil(length / width);
  if (!(panels <= 200000.0)) throw ConvergenceError("smoothing defect needs too fine a quadrature grid");
  return std::max(1, static_cast<int>(panels));
}

void add_band(ContourNodes& nodes, const Kernel& kernel, const Eigen::VectorXcd& lambda, double lo, double hi,
              double t) {
  if (!(hi > lo)) return;
  const double width = std::min({3.0 / t, 0.5 * pole_distance_to_segment(lambda, lo, hi), (hi - lo) / 32.0});
  const auto rule = detail::composite_gauss(lo, hi, panel_count(hi - lo, width));
  for (Eigen::Index k = 0; k < rule.nodes.size(); ++k) {
    const double s = rule.nodes[k];
    const double weight = rule.weights[k] * (1.0 - kernel.freq(s));
    if (weight == 0.0) continue;
    nodes.z.emplace_back(s, 0.0);
    nodes.c.push_back(weight * std::exp(Complex(0.0, s * t)));
  }
}

// int over start + w*y, y in [0, inf), of e^{izt} / (iz - lambda) dz with y = u / t.
void add_ray(ContourNodes& nodes, const Eigen::VectorXcd& lambda, double start, Complex w, double t, double sign) {
  const double u_max = 42.0 / w.imag();  // e^{-42} ~ 6e-19
  const double distance = pole_distance_to_ray(lambda, start, w);
  const double width = std::min({2.0, 0.5 * t * distance, 0.5 * t * std::max(1.0, std::abs(start))});
  const auto rule = detail::composite_gauss(0.0, u_max, panel_count(u_max, width));
  for (Eigen::Index k = 0; k < rule.nodes.size(); ++k) {
    const Complex z = start + w * (rule.nodes[k] / t);
    nodes.z.push_back(z);
    nodes.c.push_back(sign * rule.weights[k] * (w / t) * std::exp(Complex(0.0, 1.0) * z * t));
  }
}

// Ray angle from the real axis that keeps the poles furthest from the ray.
double ray_angle(const Eigen::VectorXcd& lambda, double start, bool leftward) {
  double best_angle = kPi / 4.0, best = -1.0;
  for (double angle : {kPi / 4.0, kPi / 3.0, kPi / 6.0, 5.0 * kPi / 12.0, 7.0 * kPi / 24.0, 5.0 * kPi / 24.0}) {
    const Complex w = std::polar(1.0, leftward ? kPi - angle : angle);
    const double d = pole_distance_to_ray(lambda, start, w);
    if (d > best * 1.5) best = d, best_angle = angle;
  }
  return best_angle;
}

}  // namespace

Eigen::VectorXcd smoothing_defect(const Scenario& scenario, const Kernel& kernel, double t) {
  if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("smoothing defect needs t > 0");
  const auto& lambda = scenario.op.eigenvalues();
  const Eigen::VectorXcd a = scenario.coefficients();
  const double S = kernel.support();
  const double P = kernel.plateau();

  ContourNodes nodes;
  if (P > 0.0) {
    add_band(nodes, kernel, lambda, P, S, t);
    add_band(nodes, kernel, lambda, -S, -P, t);
  } else {
    add_band(nodes, kernel, lambda, -S, S, t);
  }
  const double right_angle = ray_angle(lambda, S, false);
  const double left_angle = ray_angle(lambda, -S, true);
  const Complex right = std::polar(1.0, right_angle);
  const Complex left = std::polar(1.0, kPi - left_angle);
  add_ray(nodes, lambda, S, right, t, 1.0);
  add_ray(nodes, lambda, -S, left, t, -1.0);

  const auto count = static_cast<Eigen::Index>(nodes.z.size());
  Eigen::ArrayXcd iz(count), c(count);
  for (Eigen::Index k = 0; k < count; ++k) {
    iz[k] = Complex(0.0, 1.0) * nodes.z[static_cast<std::size_t>(k)];
    c[k] = nodes.c[static_cast<std::size_t>(k)];
  }

  Eigen::VectorXcd out(lambda.size());
  parallel_for(static_cast<std::size_t>(lambda.size()), [&](std::size_t i) {
    const auto n = static_cast<Eigen::Index>(i);
    const Complex l = lambda[n];
    Complex sum = (c / (iz - l)).sum() / (2.0 * kPi);
    // Poles swept by the rotated tails contribute e^{lambda t}.
    const Complex p(l.imag(), std::abs(l.real()));
    if (p.real() > S && std::arg(p - S) < right_angle) sum += std::exp(l * t);
    if (p.real() < -S && std::arg(p + S) > kPi - left_angle) sum += std::exp(l * t);
    out[n] = a[n] * sum;
  });
  return out;
}

ParsevalResult check_parseval(const Scenario& scenario, const Kernel& kernel, double t, double R,
                              const QuadratureSpec& spec) {
  spec.validate();
  const Kernel scaled = kernel.scaled(R);
  ParsevalResult result;
  result.time_side = convolve_time_domain(scenario, scaled, t, spec);
  result.frequency_side = convolve_frequency_domain(scenario, scaled, t, spec);
  result.residual = (result.time_side - result.frequency_side).cwiseAbs().maxCoeff();
  return result;
}

namespace {

void add_metadata(ExperimentReport& report, const std::string& key, const std::string& value) {
  report.metadata.emplace_back(key, value);
}

}  // namespace

ExperimentReport check_mollifier_rate(const Scenario& scenario, const Kernel& kernel,
                                      const std::vector<double>& R_list, double T) {
  if (R_list.empty()) throw std::invalid_argument("mollifier sweep needs at least one R");
  if (!(T >= 1.0)) throw std::invalid_argument("mollifier sweep needs T >= 1");
  for (std::size_t i = 1; i < R_list.size(); ++i)
    if (!(R_list[i] > R_list[i - 1])) throw std::invalid_argument("R values must be increasing");

  ExperimentReport report;
  report.experiment = "mollifier_rate";
  add_metadata(report, "scenario", scenario.describe());
  add_metadata(report, "kernel", std::string(kernel.name()));
  add_metadata(report, "T", fmt(T));
  const auto t_grid = linear_grid(1.0, T, static_cast<int>(std::lround((T - 1.0) * 10.0)) + 1);

  for (double R : R_list) {
    const Kernel scaled = kernel.scaled(R);
    double worst = 0.0;
    for (double t : t_grid) worst = std::max(worst, smoothing_defect(scenario, scaled, t).cwiseAbs().maxCoeff());
    ReportRow row = make_row(R, worst, 1.0 / R);
    row.ratio = R * worst;
    report.rows.push_back(row);
  }
  const double spread = max_ratio_spread(report.rows);
  report.constant_stability = spread;
  report.checks.push_back({"R_times_E_within_factor_2", spread <= 2.0, "max/min of R*E(R) = " + fmt(spread)});
  bool monotone = true;
  for (std::size_t i = 1; i < report.rows.size(); ++i)
    monotone = monotone && report.rows[i].measured <= 1.1 * report.rows[i - 1].measured;
  report.checks.push_back({"E_nonincreasing_within_10pct", monotone, ""});
  return report;
}

ExperimentReport check_asymptotic_regularity(const Scenario& scenario, const Kernel& kernel,
                                             const std::vector<double>& t_grid, const std::optional<Kernel>& second) {
  if (!kernel.has_flat_top())
    throw AdmissibilityError("kernel " + std::string(kernel.name()) +
                             " is inadmissible for asymptotic regularity: its transform is not identically 1 near 0");
  if (second && !second->has_flat_top())
    throw AdmissibilityError("second kernel " + std::string(second->name()) + " is inadmissible");
  if (t_grid.empty()) throw std::invalid_argument("asymptotic regularity needs a non-empty t grid");
  const Kernel other = second ? *second : Kernel::bump();

  ExperimentReport report;
  report.experiment = "asymptotic_regularity";
  add_metadata(report, "scenario", scenario.describe());
  add_metadata(report, "kernel", std::string(kernel.name()));
  add_metadata(report, "second_kernel", std::string(other.name()));

  auto sweep = [&](const Kernel& k) {
    std::vector<ReportRow> rows(t_grid.size());
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
      const double t = t_grid[i];
      const double d = smoothing_defect(scenario, k, t).cwiseAbs().maxCoeff();
      ReportRow row = make_row(t, d, 1.0 / t);
      row.flagged = !std::isfinite(d);
      rows[i] = row;
    }
    return rows;
  };
  report.rows = sweep(kernel);
  report.secondary_label = std::string(other.name());
  report.secondary_rows = sweep(other);

  const double spread = max_ratio_spread(report.rows);
  report.constant_stability = spread;
  report.checks.push_back({"constant_stable_within_factor_2", spread <= 2.0, "max/min of t*||f - f*phi|| = " + fmt(spread)});
  const bool finite = std::all_of(report.secondary_rows.begin(), report.secondary_rows.end(),
                                  [](const ReportRow& r) { return std::isfinite(r.ratio); });
  report.checks.push_back({"second_kernel_constant_finite", finite, report.secondary_label});
  return report;
}

ExperimentReport compare_decay(const Scenario& scenario, Variant variant, double c, const std::vector<double>& t_grid,
                               const DecayOptions& options) {
  if (t_grid.empty()) throw std::invalid_argument("compare_decay needs a non-empty t grid");
  const auto& A = scenario.op;
  std::optional<MonotoneFunction> M, m;
  if (needs_growth(variant)) {
    double top = 1.0;
    for (Eigen::Index n = 0; n < A.size(); ++n) top = std::max(top, std::abs(A.eigenvalues()[n].imag()));
    auto grid = log_grid(1e-3, top, 20);
    grid.insert(grid.end(), options.envelope_grid.begin(), options.envelope_grid.end());
    M = resolvent_envelope_growth(A, grid, needs_decay(variant) ? 1.0 : 0.0);
  }
  if (needs_decay(variant)) {
    auto grid = log_grid(1e-6, 1.0, 20);
    grid.insert(grid.end(), options.envelope_grid.begin(), options.envelope_grid.end());
    m = resolvent_envelope_decay(A, grid);
  }
  const RateBound bound(variant, M, m, c, options.k);

  ExperimentReport report;
  report.experiment = "compare_decay";
  add_metadata(report, "scenario", scenario.describe());
  add_metadata(report, "variant", std::string(to_string(variant)));
  add_metadata(report, "c", fmt(c));
  add_metadata(report, "k", std::to_string(options.k));
  add_metadata(report, "t_min", fmt(bound.t_min()));

  for (double t : t_grid) {
    if (!(t >= bound.t_min()))
      throw DomainError("t=" + fmt(t) + " is below the bound's t_min=" + fmt(bound.t_min()));
    if (options.require_truncation_safe && !truncation_safe(scenario, t))
      throw DomainError("t=" + fmt(t) + " is beyond the truncation-safe range of " + A.label());
  }

  std::vector<double> log_measured(t_grid.size()), log_bound(t_grid.size());
  report.rows.resize(t_grid.size());
  parallel_for(t_grid.size(), [&](std::size_t i) {
    const double t = t_grid[i];
    const double b = bound(t);
    log_measured[i] = log_orbit_norm(scenario, t);
    log_bound[i] = std::log(b);
    ReportRow row{t, std::exp(log_measured[i]), b, std::exp(log_measured[i] - log_bound[i]), false};
    report.rows[i] = row;
  });

  std::vector<double> lx, lm, lb;
  const double cut = t_grid.back() / 100.0 * (1.0 - 1e-12);
  for (std::size_t i = 0; i < t_grid.size(); ++i)
    if (t_grid[i] >= cut && std::isfinite(log_measured[i])) {
      lx.push_back(std::log(t_grid[i]));
      lm.push_back(log_measured[i]);
      lb.push_back(log_bound[i]);
    }
  const auto measured_fit = fit_logs(lx, lm);
  const auto bound_fit = fit_logs(lx, lb);
  report.slopes = {{"measured", measured_fit}, {"bound", bound_fit}};
  report.constant_stability = max_ratio_spread(report.rows);
  const auto dom = ratio_dominance(report.rows);
  report.checks.push_back({"ratio_bounded", dom.late_max <= dom.early_median,
                           "max ratio over the last decade " + fmt(dom.late_max) + " vs median over the first " +
                               fmt(dom.early_median)});
  report.checks.push_back({"slope_ordering", measured_fit.slope <= bound_fit.slope + 0.05,
                           "measured " + fmt(measured_fit.slope) + " vs bound " + fmt(bound_fit.slope)});
  return report;
}

ExperimentReport bound_table(Variant variant, const std::optional<MonotoneFunction>& growth,
                             const std::optional<MonotoneFunction>& decay, double c, int k,
                             const std::vector<double>& t_grid) {
  const RateBound bound(variant, growth, decay, c, k);
  ExperimentReport report;
  report.experiment = "bound_table";
  add_metadata(report, "variant", std::string(to_string(variant)));
  if (growth) add_metadata(report, "growth", growth->describe());
  if (decay) add_metadata(report, "decay", decay->describe());
  add_metadata(report, "c", fmt(c));
  add_metadata(report, "k", std::to_string(k));
  add_metadata(report, "t_min", fmt(bound.t_min()));

  report.rows.resize(t_grid.size());
  std::vector<int> has_reference(t_grid.size(), 0);
  parallel_for(t_grid.size(), [&](std::size_t i) {
    const double t = t_grid[i];
    const double value = bound(t);
    const auto reference = closed_form_bound(variant, growth, decay, c, k, t);
    has_reference[i] = reference.has_value();
    report.rows[i] = make_row(t, value, reference.value_or(kNaN));
  });

  std::vector<double> x, y, ref;
  for (const auto& r : report.rows) {
    x.push_back(r.abscissa);
    y.push_back(r.measured);
    ref.push_back(r.reference);
  }
  const auto fit = fit_last_decades(x, y);
  report.slopes.emplace_back("bound", fit);
  if (std::all_of(has_reference.begin(), has_reference.end(), [](int v) { return v != 0; })) {
    const auto ref_fit = fit_last_decades(x, ref);
    report.slopes.emplace_back("reference", ref_fit);
    report.checks.push_back({"slope_matches_closed_form", std::abs(fit.slope - ref_fit.slope) <= 0.02,
                             "bound " + fmt(fit.slope) + " vs closed form " + fmt(ref_fit.slope)});
  }
  return report;
}

ExperimentReport raw_bound_oracle(Variant variant, const MonotoneFunction& growth, double c, int k,
                                  const std::vector<double>& t_grid) {
  if (variant != Variant::infinity_smooth && variant != Variant::infinity_Ck)
    throw AdmissibilityError("the raw-bound oracle exists for infinity_smooth and infinity_Ck only");
  const RateBound bound(variant, growth, std::nullopt, c, k);
  ExperimentReport report;
  report.experiment = "raw_bound_oracle";
  add_metadata(report, "variant", std::string(to_string(variant)));
  add_metadata(report, "growth", growth.describe());
  add_metadata(report, "c", fmt(c));
  add_metadata(report, "k", std::to_string(k));

  report.rows.resize(t_grid.size());
  parallel_for(t_grid.size(), [&](std::size_t i) {
    const double t = t_grid[i];
    const auto raw = variant == Variant::infinity_smooth ? raw_bound_smooth(growth, c, t)
                                                         : raw_bound_Ck(growth, k, c, t);
    report.rows[i] = make_row(t, raw.value, bound(t));
  });
  bool within = true;
  for (const auto& r : report.rows) within = within && r.ratio >= 0.1 && r.ratio <= 10.0;
  report.constant_stability = max_ratio_spread(report.rows);
  report.checks.push_back({"ratio_within_0.1_to_10", within, ""});
  return report;
}

ExperimentReport kernel_check(const Kernel& kernel, const std::vector<double>& s_grid, const QuadratureSpec& spec) {
  ExperimentReport report;
  report.experiment = "kernel_check";
  add_metadata(report, "kernel", std::string(kernel.name()));
  add_metadata(report, "scale", fmt(kernel.scale()));
  report.rows.resize(s_grid.size());
  std::vector<int> converged(s_grid.size(), 1);
  parallel_for(s_grid.size(), [&](std::size_t i) {
    const auto r = numeric_transform(kernel, s_grid[i], spec);
    converged[i] = r.converged;
    report.rows[i] = make_row(s_grid[i], r.value, kernel.freq(s_grid[i]), !r.converged);
  });
  double worst = 0.0;
  for (const auto& r : report.rows) worst = std::max(worst, std::abs(r.measured - r.reference));
  report.converged = std::all_of(converged.begin(), converged.end(), [](int v) { return v != 0; });
  report.checks.push_back({"max_abs_error_below_1e-6", worst <= 1e-6, "max |numeric - psi| = " + fmt(worst)});
  return report;
}

ExperimentReport parseval_sweep(const Scenario& scenario, const Kernel& kernel, double R,
                                const std::vector<double>& t_grid, const QuadratureSpec& spec) {
  ExperimentReport report;
  report.experiment = "parseval";
  add_metadata(report, "scenario", scenario.describe());
  add_metadata(report, "kernel", std::string(kernel.name()));
  add_metadata(report, "R", fmt(R));
  bool all_below = true;
  for (double t : t_grid) {
    try {
      const auto r = check_parseval(scenario, kernel, t, R, spec);
      report.rows.push_back(make_row(t, r.residual, kParsevalThreshold));
      all_below = all_below && r.residual <= kParsevalThreshold;
    } catch (const ConvergenceError&) {
      report.rows.push_back(make_row(t, kNaN, kParsevalThreshold, true));
      report.converged = false;
      all_below = false;
    }
  }
  report.checks.push_back({"residual_below_1e-6", all_below, ""});
  return report;
}

}  // namespace ingham
