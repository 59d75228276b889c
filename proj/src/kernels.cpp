#include "ingham/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "fixed_rule.hpp"

namespace ingham {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kBumpExtent = 200.0;
constexpr double kBumpSpacing = 0.01;
constexpr double kBumpMassTolerance = 1e-8;

}  // namespace

double bump_freq(double s, double sharpness) {
  const double a = std::abs(s);
  if (a <= 0.5) return 1.0;
  if (a >= 1.0) return 0.0;
  const double u = 2.0 * (1.0 - a);  // 1 at the plateau edge, 0 at the support edge
  const double exponent = sharpness / u - sharpness / (1.0 - u);
  if (exponent > 700.0) return 0.0;
  return 1.0 / (1.0 + std::exp(exponent));
}

std::string_view to_string(KernelKind kind) {
  switch (kind) {
    case KernelKind::tent: return "tent";
    case KernelKind::fudge: return "fudge";
    case KernelKind::bump: return "bump";
  }
  return "unknown";
}

std::optional<KernelKind> kernel_from_string(std::string_view name) {
  for (auto k : {KernelKind::tent, KernelKind::fudge, KernelKind::bump})
    if (to_string(k) == name) return k;
  return std::nullopt;
}

// phi and phi' on the uniform grid 0, h, ..., T (phi is even).
struct BumpTable {
  double spacing;
  Eigen::ArrayXd value;
  Eigen::ArrayXd slope;
  double mass;

  double operator()(double t) const {
    const double u = std::abs(t);
    const auto last = value.size() - 1;
    if (u >= spacing * static_cast<double>(last)) return 0.0;
    const auto j = static_cast<Eigen::Index>(u / spacing);
    const double x = (u - spacing * static_cast<double>(j)) / spacing;
    const double h00 = (1 + 2 * x) * (1 - x) * (1 - x);
    const double h10 = x * (1 - x) * (1 - x);
    const double h01 = x * x * (3 - 2 * x);
    const double h11 = x * x * (x - 1);
    return h00 * value[j] + h10 * spacing * slope[j] + h01 * value[j + 1] + h11 * spacing * slope[j + 1];
  }
};

namespace {

std::shared_ptr<const BumpTable> tabulate_bump(double sharpness) {
  const auto count = static_cast<Eigen::Index>(std::llround(kBumpExtent / kBumpSpacing)) + 1;
  auto table = std::make_shared<BumpTable>();
  table->spacing = kBumpSpacing;
  table->value = Eigen::ArrayXd::Zero(count);
  table->slope = Eigen::ArrayXd::Zero(count);

  // phi(t) = (1/pi) int_0^1 psi(s) cos(st) ds, phi'(t) = -(1/pi) int_0^1 s psi(s) sin(st) ds.
  const auto rule = detail::composite_gauss(0.0, 1.0, 160);
  for (Eigen::Index i = 0; i < rule.nodes.size(); ++i) {
    const double s = rule.nodes[i];
    const double w = rule.weights[i] * bump_freq(s, sharpness) / kPi;
    if (w == 0.0) continue;
    // Rotate (cos(s t_j), sin(s t_j)) along the grid.
    const double c1 = std::cos(s * kBumpSpacing);
    const double s1 = std::sin(s * kBumpSpacing);
    double c = 1.0, sn = 0.0;
    for (Eigen::Index j = 0; j < count; ++j) {
      if ((j & 1023) == 0) {
        c = std::cos(s * kBumpSpacing * static_cast<double>(j));
        sn = std::sin(s * kBumpSpacing * static_cast<double>(j));
      }
      table->value[j] += w * c;
      table->slope[j] -= w * s * sn;
      const double next_c = c * c1 - sn * s1;
      sn = sn * c1 + c * s1;
      c = next_c;
    }
  }

  // Exact integral of the Hermite interpolant, doubled for the negative half.
  const double h = kBumpSpacing;
  double half_mass = 0.0;
  for (Eigen::Index j = 0; j + 1 < count; ++j)
    half_mass += 0.5 * h * (table->value[j] + table->value[j + 1]) +
                 h * h * (table->slope[j] - table->slope[j + 1]) / 12.0;
  table->mass = 2.0 * half_mass;
  return table;
}

void require_scale(double scale) {
  if (!(scale > 0.0) || !std::isfinite(scale)) throw KernelError("kernel scale must be a finite positive number");
}

}  // namespace

Kernel Kernel::tent(double scale) {
  require_scale(scale);
  return {KernelKind::tent, scale, 0.0, nullptr};
}

Kernel Kernel::fudge(double scale) {
  require_scale(scale);
  return {KernelKind::fudge, scale, 0.0, nullptr};
}

Kernel Kernel::bump(double transition_sharpness, double scale) {
  require_scale(scale);
  if (!(transition_sharpness > 0.0) || !std::isfinite(transition_sharpness))
    throw KernelError("bump transition sharpness must be a finite positive number");
  auto table = tabulate_bump(transition_sharpness);
  if (std::abs(table->mass - 1.0) > kBumpMassTolerance)
  {
    char buffer[160];
    std::snprintf(buffer, sizeof buffer,
                  "bump kernel grid resolution insufficient: tabulated mass misses 1 by %.3e (limit 1e-8)",
                  table->mass - 1.0);
    throw KernelError(buffer);
  }
  return {KernelKind::bump, scale, transition_sharpness, std::move(table)};
}

Kernel make_kernel(KernelKind kind, double scale, double sharpness) {
  switch (kind) {
    case KernelKind::tent: return Kernel::tent(scale);
    case KernelKind::fudge: return Kernel::fudge(scale);
    case KernelKind::bump: return Kernel::bump(sharpness, scale);
  }
  throw KernelError("unknown kernel");
}

Kernel Kernel::scaled(double r) const {
  require_scale(r);
  Kernel copy = *this;
  copy.scale_ = scale_ * r;
  return copy;
}

double Kernel::time(double t) const {
  const double u = scale_ * t;
  switch (kind_) {
    case KernelKind::tent: return scale_ * tent_time(u) / (2.0 * kPi);
    case KernelKind::fudge: return scale_ * fudge_time(u) / (2.0 * kPi);
    case KernelKind::bump: return scale_ * (*table_)(u);
  }
  return 0.0;
}

double Kernel::freq(double s) const {
  const double u = s / scale_;
  switch (kind_) {
    case KernelKind::tent: return tent_freq(u);
    case KernelKind::fudge: return fudge_freq(u);
    case KernelKind::bump: return bump_freq(u, sharpness_);
  }
  return 0.0;
}

std::vector<double> Kernel::frequency_breaks() const {
  if (kind_ == KernelKind::fudge) return {-scale_, scale_};
  return {-scale_, -0.5 * scale_, 0.5 * scale_, scale_};
}

double Kernel::time_extent() const {
  return kind_ == KernelKind::bump ? kBumpExtent / scale_ : std::numeric_limits<double>::infinity();
}

double Kernel::mass_defect() const { return kind_ == KernelKind::bump ? 1.0 - table_->mass : 0.0; }

std::vector<OscillatoryTerm> Kernel::cosine_terms(double s) const {
  const double r = scale_;
  std::vector<OscillatoryTerm> terms;
  auto add_cos = [&](const RealFunction& env, double frequency, double weight) {
    terms.push_back({env, std::abs(frequency), 0.0, weight});
  };
  auto add_sin = [&](const RealFunction& env, double frequency, double weight) {
    if (frequency == 0.0) return;
    terms.push_back({env, std::abs(frequency), -0.5 * kPi, frequency > 0.0 ? weight : -weight});
  };
  switch (kind_) {
    case KernelKind::tent: {
      RealFunction env = [r](double t) { return 1.0 / (kPi * r * t * t); };
      add_cos(env, 0.5 * r + s, 1.0);
      add_cos(env, 0.5 * r - s, 1.0);
      add_cos(env, r + s, -1.0);
      add_cos(env, r - s, -1.0);
      break;
    }
    case KernelKind::fudge: {
      RealFunction cube = [r](double t) { return 1.0 / (kPi * r * r * t * t * t); };
      RealFunction square = [r](double t) { return 1.0 / (kPi * r * t * t); };
      add_sin(cube, r + s, 1.0);
      add_sin(cube, r - s, 1.0);
      add_cos(square, r + s, -1.0);
      add_cos(square, r - s, -1.0);
      break;
    }
    case KernelKind::bump:
      throw KernelError("the bump kernel has no closed-form cosine decomposition");
  }
  return terms;
}

QuadratureResult numeric_transform(const Kernel& kernel, double s, const QuadratureSpec& spec) {
  auto integrand = [&](double t) { return kernel.time(t) * std::cos(s * t); };
  QuadratureResult head, tail;
  if (kernel.kind() == KernelKind::bump) {
    const double extent = kernel.time_extent();
    std::vector<double> breaks;
    const double step = std::max(extent / 400.0, 0.5 / kernel.scale());
    for (double b = step; b < extent; b += step) breaks.push_back(b);
    head = integrate_with_breaks(integrand, 0.0, extent, breaks, spec);
  } else {
    head = integrate(integrand, 0.0, 1.0, spec);
    tail = integrate_semi_infinite(integrand, 1.0, OscillatoryDecay{kernel.cosine_terms(s)}, spec);
  }
  return {2.0 * (head.value + tail.value), 2.0 * (head.error_estimate + tail.error_estimate),
          head.converged && tail.converged, head.evaluations + tail.evaluations};
}

QuadratureResult leibniz_tail(const RealFunction& envelope, double alpha, double t, const QuadratureSpec& spec) {
  if (!(alpha > 0.0)) throw std::domain_error("leibniz_tail needs a positive frequency");
  return integrate_oscillatory(envelope, alpha, 0.0, t, spec);
}

namespace {

double tent_tail_from(double a, const QuadratureSpec& spec) {
  RealFunction env = [](double x) { return 4.0 / (x * x); };
  OscillatoryDecay hint{{{env, 0.5, 0.0, 1.0}, {env, 1.0, 0.0, -1.0}}};
  const auto result = integrate_semi_infinite([](double x) { return tent_time(x); }, a, hint, spec);
  if (!result.converged) throw ConvergenceError("tent tail integral did not converge");
  return result.value;
}

}  // namespace

double tent_primitive_plus(double t, const QuadratureSpec& spec) {
  if (!std::isfinite(t)) throw std::domain_error("tent primitive needs a finite argument");
  if (t < 0.0) return -2.0 * kPi - tent_primitive_plus(-t, spec);
  if (t >= 1.0) return -tent_tail_from(t, spec);
  const auto head = integrate([](double x) { return tent_time(x); }, t, 1.0, spec);
  return -(head.value + tent_tail_from(1.0, spec));
}

double tent_primitive_minus(double t, const QuadratureSpec& spec) {
  return tent_primitive_plus(t, spec) + 2.0 * kPi;
}

}  // namespace ingham
