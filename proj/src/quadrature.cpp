#include "ingham/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <deque>
#include <limits>
#include <numbers>
#include <queue>
#include <stdexcept>
#include <string>

namespace ingham {

namespace {

constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

// Gauss weights for the 7-point rule on the odd Kronrod nodes (1, 3, 5, 7).
constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a, b, value, error;
  bool operator<(const Panel& other) const { return error < other.error; }
};

// QUADPACK-style 15-point Kronrod panel with the usual error rescaling.
Panel gauss_kronrod_15(const RealFunction& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double f_center = f(center);
  double kronrod = f_center * kKronrodWeights[7];
  double gauss = f_center * kGaussWeights[3];
  double abs_sum = std::abs(kronrod);
  std::array<double, 7> f_left{}, f_right{};
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kKronrodNodes[j];
    f_left[j] = f(center - dx);
    f_right[j] = f(center + dx);
    const double pair = f_left[j] + f_right[j];
    kronrod += kKronrodWeights[j] * pair;
    abs_sum += kKronrodWeights[j] * (std::abs(f_left[j]) + std::abs(f_right[j]));
    if (j % 2 == 1) gauss += kGaussWeights[j / 2] * pair;
  }
  const double mean = 0.5 * kronrod;
  double asc = kKronrodWeights[7] * std::abs(f_center - mean);
  for (int j = 0; j < 7; ++j)
    asc += kKronrodWeights[j] * (std::abs(f_left[j] - mean) + std::abs(f_right[j] - mean));

  const double value = kronrod * half;
  double error = std::abs((kronrod - gauss) * half);
  const double resasc = asc * std::abs(half);
  const double resabs = abs_sum * std::abs(half);
  if (resasc != 0.0 && error != 0.0)
    error = resasc * std::min(1.0, std::pow(200.0 * error / resasc, 1.5));
  constexpr double eps = std::numeric_limits<double>::epsilon();
  if (resabs > std::numeric_limits<double>::min() / (50.0 * eps))
    error = std::max(50.0 * eps * resabs, error);
  if (!std::isfinite(value)) error = std::numeric_limits<double>::infinity();
  return {a, b, value, error};
}

double tolerance_for(const QuadratureSpec& spec, double value) {
  return std::max(spec.abs_tol, spec.rel_tol * std::abs(value));
}

// Cosine zeros split the tail; with Euler averaging over the last kWindow
// partial sums.
constexpr int kWindow = 16;
constexpr double kTermFloor = 1e-14;
constexpr std::size_t kMaxPieces = 2'000'000;

double euler_average(const std::deque<double>& sums) {
  std::vector<double> level(sums.begin(), sums.end());
  while (level.size() > 1) {
    for (std::size_t i = 0; i + 1 < level.size(); ++i) level[i] = 0.5 * (level[i] + level[i + 1]);
    level.pop_back();
  }
  return level.front();
}

void check_envelope(const RealFunction& envelope, double from, double frequency) {
  const double step = frequency > 0.0 ? std::numbers::pi / frequency : 1.0;
  const double start = from > 0.0 ? from : step * 1e-3;
  double previous = envelope(start);
  auto check_point = [&](double s) {
    const double v = envelope(s);
    if (!(v >= 0.0))
      throw std::domain_error("oscillatory envelope must be non-negative (value " +
                              std::to_string(v) + " at s=" + std::to_string(s) + ")");
    if (v > previous * (1.0 + 1e-12) + 1e-300)
      throw std::domain_error("oscillatory envelope is not decreasing near s=" + std::to_string(s));
    previous = v;
  };
  for (int i = 1; i <= 64; ++i) check_point(start + step * 0.25 * i);
  for (int i = 1; i <= 40; ++i) check_point(start + step * 16.0 * std::ldexp(1.0, i));

  // Integrability of the tail: env(2x)/env(x) must settle below 1/2.
  const double x = std::max(start, step) * std::ldexp(1.0, 24);
  const double near = envelope(x);
  const double far = envelope(2.0 * x);
  if (near > 0.0 && far / near >= 0.5 - 1e-9)
    throw std::domain_error("oscillatory envelope decays too slowly to be integrable");
}

// Non-oscillating tail (frequency 0): geometric panels until they become negligible.
QuadratureResult integrate_monotone_tail(const RealFunction& g, double from,
                                         const QuadratureSpec& spec) {
  QuadratureResult total;
  double left = from;
  double width = std::max(1.0, std::abs(from));
  double previous_piece = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 200; ++i) {
    const auto piece = integrate(g, left, left + width, spec);
    total.value += piece.value;
    total.error_estimate += piece.error_estimate;
    total.evaluations += piece.evaluations;
    total.converged = total.converged && piece.converged;
    const double ratio = std::abs(piece.value) / previous_piece;
    if (std::abs(piece.value) < 1e-3 * spec.abs_tol && ratio < 0.75) {
      const double tail = std::abs(piece.value) * ratio / (1.0 - ratio);
      total.error_estimate += tail;
      return total;
    }
    previous_piece = std::abs(piece.value);
    left += width;
    width *= 2.0;
  }
  total.converged = false;
  return total;
}

}  // namespace

void QuadratureSpec::validate() const {
  if (!(abs_tol > 0.0) || !(rel_tol > 0.0))
    throw std::invalid_argument("quadrature tolerances must be positive");
  if (max_subdivisions < 1) throw std::invalid_argument("max_subdivisions must be >= 1");
  if (oscillation_frequency && !(*oscillation_frequency > 0.0))
    throw std::invalid_argument("oscillation_frequency must be positive");
  if (truncation_radius < 0.0) throw std::invalid_argument("truncation_radius must be >= 0");
}

QuadratureSpec default_quadrature_spec() {
  QuadratureSpec spec;
  if (const char* env = std::getenv("INGHAM_RATES_TOL")) {
    char* end = nullptr;
    const double tol = std::strtod(env, &end);
    if (end != env && std::isfinite(tol) && tol > 0.0) {
      spec.abs_tol = tol;
      spec.rel_tol = tol;
    }
  }
  return spec;
}

QuadratureResult integrate_with_breaks(const RealFunction& f, double a, double b,
                                       std::span<const double> breaks,
                                       const QuadratureSpec& spec) {
  spec.validate();
  if (!(a <= b)) throw std::invalid_argument("integrate: requires a <= b");
  QuadratureResult result;
  if (a == b) return result;

  std::vector<double> points{a};
  for (double p : breaks)
    if (p > a && p < b) points.push_back(p);
  if (spec.oscillation_frequency) {
    const double period = 2.0 * std::numbers::pi / *spec.oscillation_frequency;
    const auto pieces = static_cast<long>(std::min(1e5, std::floor((b - a) / period)));
    for (long i = 1; i <= pieces; ++i) points.push_back(a + period * static_cast<double>(i));
  }
  points.push_back(b);
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());

  std::priority_queue<Panel> heap;
  double value = 0.0;
  double error = 0.0;
  std::vector<Panel> frozen;  // panels too narrow to split further
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    const Panel p = gauss_kronrod_15(f, points[i], points[i + 1]);
    result.evaluations += 15;
    value += p.value;
    error += p.error;
    heap.push(p);
  }

  int splits = 0;
  while (error > tolerance_for(spec, value) && !heap.empty()) {
    if (splits >= spec.max_subdivisions) {
      result.converged = false;
      break;
    }
    const Panel worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b) ||
        (worst.b - worst.a) < 64.0 * std::numeric_limits<double>::epsilon() *
                                  std::max(std::abs(worst.a), std::abs(worst.b))) {
      frozen.push_back(worst);
      continue;
    }
    const Panel left = gauss_kronrod_15(f, worst.a, mid);
    const Panel right = gauss_kronrod_15(f, mid, worst.b);
    result.evaluations += 30;
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++splits;
  }

  // Re-sum to shed the drift of incremental updates.
  value = 0.0;
  error = 0.0;
  for (; !heap.empty(); heap.pop()) {
    value += heap.top().value;
    error += heap.top().error;
  }
  for (const auto& p : frozen) {
    value += p.value;
    error += p.error;
  }
  result.value = value;
  result.error_estimate = error;
  if (!std::isfinite(value) || error > tolerance_for(spec, value)) result.converged = false;
  return result;
}

QuadratureResult integrate(const RealFunction& f, double a, double b, const QuadratureSpec& spec) {
  return integrate_with_breaks(f, a, b, {}, spec);
}

ComplexQuadratureResult integrate_complex(const ComplexFunction& f, double a, double b,
                                          std::span<const double> breaks,
                                          const QuadratureSpec& spec) {
  const auto re = integrate_with_breaks([&](double s) { return f(s).real(); }, a, b, breaks, spec);
  const auto im = integrate_with_breaks([&](double s) { return f(s).imag(); }, a, b, breaks, spec);
  return {{re.value, im.value},
          std::max(re.error_estimate, im.error_estimate),
          re.converged && im.converged};
}

QuadratureResult integrate_oscillatory(const RealFunction& envelope, double frequency,
                                       double phase, double from, const QuadratureSpec& spec) {
  spec.validate();
  if (!(frequency >= 0.0)) throw std::invalid_argument("oscillation frequency must be >= 0");
  check_envelope(envelope, from, frequency);

  auto integrand = [&](double s) { return envelope(s) * std::cos(frequency * s + phase); };
  if (frequency == 0.0) return integrate_monotone_tail(integrand, from, spec);

  constexpr double pi = std::numbers::pi;
  const double first_index = std::ceil((frequency * from + phase - 0.5 * pi) / pi);
  auto zero = [&](double j) { return (0.5 * pi + j * pi - phase) / frequency; };

  QuadratureSpec piece_spec = spec;
  piece_spec.abs_tol = spec.abs_tol * 1e-3;
  piece_spec.oscillation_frequency.reset();

  QuadratureResult result;
  const double first_zero = std::max(from, zero(first_index));
  const auto head = integrate(integrand, from, first_zero, piece_spec);
  double partial = head.value;
  double integration_error = head.error_estimate;
  result.evaluations = head.evaluations;
  result.converged = head.converged;

  std::deque<double> window;
  double previous_accelerated = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t j = 0; j < kMaxPieces; ++j) {
    const double left = zero(first_index + static_cast<double>(j));
    const double right = zero(first_index + static_cast<double>(j) + 1.0);
    const auto piece = integrate(integrand, left, right, piece_spec);
    result.evaluations += piece.evaluations;
    result.converged = result.converged && piece.converged;
    integration_error += piece.error_estimate;
    partial += piece.value;

    if (std::abs(piece.value) < kTermFloor) {
      result.value = partial;
      result.error_estimate = std::abs(piece.value) + integration_error;
      return result;
    }
    window.push_back(partial);
    if (window.size() > static_cast<std::size_t>(kWindow)) window.pop_front();
    if (window.size() == static_cast<std::size_t>(kWindow)) {
      const double accelerated = euler_average(window);
      const double change = std::abs(accelerated - previous_accelerated);
      if (change <= std::max(1e-3 * spec.abs_tol, 1e-15 * std::abs(accelerated))) {
        result.value = accelerated;
        result.error_estimate = change + integration_error;
        return result;
      }
      previous_accelerated = accelerated;
    }
  }
  result.value = window.empty() ? partial : euler_average(window);
  result.error_estimate = std::numeric_limits<double>::infinity();
  result.converged = false;
  return result;
}

QuadratureResult integrate_semi_infinite(const RealFunction& f, double a, const DecayHint& hint,
                                         const QuadratureSpec& spec) {
  spec.validate();
  if (const auto* exp_hint = std::get_if<ExponentialDecay>(&hint)) {
    const double rate = exp_hint->rate;
    if (!(rate > 0.0)) throw std::domain_error("exponential decay hint needs a positive rate");
    double amplitude = 0.0;
    for (int i = 0; i <= 64; ++i) {
      const double s = a + (10.0 / rate) * i / 64.0;
      amplitude = std::max(amplitude, std::abs(f(s)) * std::exp(rate * (s - a)));
    }
    double radius = spec.truncation_radius;
    if (radius <= 0.0) {
      radius = amplitude > 0.0
                   ? std::max(1.0 / rate, std::log(2.0 * amplitude / (rate * spec.abs_tol)) / rate)
                   : 1.0 / rate;
    }
    std::vector<double> breaks;
    for (double x = a + 1.0 / rate; x < a + radius; x += 1.0 / rate) breaks.push_back(x);
    auto result = integrate_with_breaks(f, a, a + radius, breaks, spec);
    result.error_estimate += amplitude * std::exp(-rate * radius) / rate;
    return result;
  }
  if (const auto* poly = std::get_if<PolynomialDecay>(&hint)) {
    const double p = poly->power;
    if (!(p > 1.0))
      throw std::domain_error("polynomial decay s^-" + std::to_string(p) +
                              " is not integrable without oscillation (need power > 1)");
    const double base = std::max(std::abs(a), 1.0);
    double amplitude = 0.0;
    for (int i = 0; i <= 32; ++i) {
      const double s = base * (1.0 + i / 32.0);
      if (s >= a) amplitude = std::max(amplitude, std::abs(f(s)) * std::pow(s, p));
    }
    double radius = spec.truncation_radius;
    if (radius <= 0.0) {
      radius = amplitude > 0.0
                   ? std::pow(2.0 * amplitude / ((p - 1.0) * spec.abs_tol), 1.0 / (p - 1.0))
                   : 2.0 * base;
      radius = std::max(radius, 2.0 * base);
    }
    std::vector<double> breaks;
    for (double x = base; x < radius; x *= 2.0) breaks.push_back(x);
    auto result = integrate_with_breaks(f, a, radius, breaks, spec);
    result.error_estimate += amplitude * std::pow(radius, 1.0 - p) / (p - 1.0);
    return result;
  }

  const auto& osc = std::get<OscillatoryDecay>(hint);
  if (osc.terms.empty()) throw std::invalid_argument("oscillatory hint needs at least one term");
  for (int i = 0; i < 9; ++i) {
    const double s = a + 0.37 * i + 1e-3;
    const double direct = f(s);
    double sum = 0.0;
    for (const auto& term : osc.terms)
      sum += term.weight * term.envelope(s) * std::cos(term.frequency * s + term.phase);
    if (std::abs(direct - sum) > 1e-8 * (1.0 + std::abs(direct)))
      throw std::invalid_argument("oscillatory hint does not reproduce the integrand at s=" +
                                  std::to_string(s));
  }
  QuadratureResult total;
  for (const auto& term : osc.terms) {
    const auto part = integrate_oscillatory(term.envelope, term.frequency, term.phase, a, spec);
    total.value += term.weight * part.value;
    total.error_estimate += std::abs(term.weight) * part.error_estimate;
    total.evaluations += part.evaluations;
    total.converged = total.converged && part.converged;
  }
  return total;
}

}  // namespace ingham
