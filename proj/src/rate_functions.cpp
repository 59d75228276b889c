#include "ingham/rate_functions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include <boost/math/special_functions/lambert_w.hpp>

#include "ingham/quadrature.hpp"

namespace ingham {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(10);
  os << x;
  return os.str();
}

void require_k(int k) {
  if (k < 1) throw DomainError("smoothness order k must be >= 1 (got " + std::to_string(k) + ")");
}

// log(1 + e^q) without overflow.
double log1p_exp(double q) { return q > 35.0 ? q + std::log1p(std::exp(-q)) : std::log1p(std::exp(q)); }

}  // namespace

InversionRangeError::InversionRangeError(double y_, double low, double high)
    : std::range_error("value " + fmt(y_) + " is outside the range [" + fmt(low) + ", " +
                       fmt(high) + ") of the function being inverted"),
      y(y_),
      range_low(low),
      range_high(high) {}

MonotoneFunction MonotoneFunction::power(DomainKind domain, double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha))
    throw DomainError("power family needs a finite alpha > 0");
  return {domain, PowerFamily{alpha}};
}

MonotoneFunction MonotoneFunction::exponential(DomainKind domain, double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha))
    throw DomainError("exponential family needs a finite alpha > 0");
  return {domain, ExponentialFamily{alpha}};
}

MonotoneFunction MonotoneFunction::constant(DomainKind domain, double value) {
  if (!(value >= 1.0) || !std::isfinite(value))
    throw DomainError("constant rate function must be a finite value >= 1");
  return {domain, ConstantFamily{value}};
}

MonotoneFunction MonotoneFunction::tabulated(DomainKind domain, std::vector<double> knots,
                                             std::vector<double> values, bool reciprocal_floor) {
  if (knots.empty() || knots.size() != values.size())
    throw DomainError("tabulated function needs matching, non-empty knots and values");
  for (std::size_t i = 0; i < knots.size(); ++i) {
    if (!std::isfinite(knots[i]) || !std::isfinite(values[i]))
      throw DomainError("tabulated function has a non-finite entry at index " + std::to_string(i));
    if (values[i] < 1.0)
      throw DomainError("tabulated value " + fmt(values[i]) + " at index " + std::to_string(i) +
                        " is below 1");
    if (i > 0 && !(knots[i] > knots[i - 1]))
      throw DomainError("tabulated knots must be strictly increasing (index " + std::to_string(i) + ")");
    if (i > 0) {
      const bool ok = domain == DomainKind::growth ? values[i] >= values[i - 1] : values[i] <= values[i - 1];
      if (!ok)
        throw DomainError("tabulated values are not monotone in the declared direction at index " +
                          std::to_string(i));
    }
  }
  if (domain == DomainKind::growth && knots.front() < 0.0)
    throw DomainError("growth knots must lie in [0, inf)");
  if (domain == DomainKind::decay && (knots.front() <= 0.0 || knots.back() > 1.0))
    throw DomainError("decay knots must lie in (0, 1]");
  if (reciprocal_floor && domain != DomainKind::decay)
    throw DomainError("the 1/r floor only applies to decay functions");
  return {domain, TabulatedFamily{std::move(knots), std::move(values), reciprocal_floor}};
}

bool MonotoneFunction::contains(double x) const {
  if (domain_ == DomainKind::growth) return x >= 0.0 && std::isfinite(x);
  return x > 0.0 && x <= 1.0;
}

void MonotoneFunction::require_domain(double x) const {
  if (!contains(x))
    throw DomainError("argument " + fmt(x) + " outside the domain " +
                      (domain_ == DomainKind::growth ? "[0, inf)" : "(0, 1]"));
}

double MonotoneFunction::tabulated_value(const TabulatedFamily& table, double x) const {
  const auto& k = table.knots;
  const auto& v = table.values;
  double value;
  if (x <= k.front()) {
    value = v.front();
  } else if (x >= k.back()) {
    value = v.back();
  } else {
    const auto hi = static_cast<std::size_t>(std::upper_bound(k.begin(), k.end(), x) - k.begin());
    const std::size_t lo = hi - 1;
    const double w = (x - k[lo]) / (k[hi] - k[lo]);
    value = v[lo] + w * (v[hi] - v[lo]);
  }
  if (table.reciprocal_floor) value = std::max(value, 1.0 / x);
  return value;
}

double MonotoneFunction::operator()(double x) const {
  require_domain(x);
  const bool growth = domain_ == DomainKind::growth;
  return std::visit(
      [&](const auto& fam) -> double {
        using F = std::decay_t<decltype(fam)>;
        if constexpr (std::is_same_v<F, PowerFamily>) {
          return growth ? std::pow(1.0 + x, fam.alpha) : std::pow(x, -fam.alpha);
        } else if constexpr (std::is_same_v<F, ExponentialFamily>) {
          return std::exp(growth ? std::pow(x, fam.alpha) : std::pow(x, -fam.alpha));
        } else if constexpr (std::is_same_v<F, ConstantFamily>) {
          return fam.value;
        } else {
          return tabulated_value(fam, x);
        }
      },
      family_);
}

double MonotoneFunction::log_value(double x) const {
  require_domain(x);
  const bool growth = domain_ == DomainKind::growth;
  return std::visit(
      [&](const auto& fam) -> double {
        using F = std::decay_t<decltype(fam)>;
        if constexpr (std::is_same_v<F, PowerFamily>) {
          return growth ? fam.alpha * std::log1p(x) : -fam.alpha * std::log(x);
        } else if constexpr (std::is_same_v<F, ExponentialFamily>) {
          return growth ? std::pow(x, fam.alpha) : std::pow(x, -fam.alpha);
        } else if constexpr (std::is_same_v<F, ConstantFamily>) {
          return std::log(fam.value);
        } else {
          return std::log(tabulated_value(fam, x));
        }
      },
      family_);
}

std::string MonotoneFunction::describe() const {
  const bool growth = domain_ == DomainKind::growth;
  return std::visit(
      [&](const auto& fam) -> std::string {
        using F = std::decay_t<decltype(fam)>;
        if constexpr (std::is_same_v<F, PowerFamily>) {
          return growth ? "(1+R)^" + fmt(fam.alpha) : "r^-" + fmt(fam.alpha);
        } else if constexpr (std::is_same_v<F, ExponentialFamily>) {
          return growth ? "exp(R^" + fmt(fam.alpha) + ")" : "exp(r^-" + fmt(fam.alpha) + ")";
        } else if constexpr (std::is_same_v<F, ConstantFamily>) {
          return "constant " + fmt(fam.value);
        } else {
          return "tabulated (" + std::to_string(fam.knots.size()) + " knots)";
        }
      },
      family_);
}

double growth_rate_k(const MonotoneFunction& growth, int k, double R) {
  require_k(k);
  if (growth.domain() != DomainKind::growth) throw DomainError("M_k needs a growth function");
  const double log_m = growth.log_value(R);
  return std::exp(log_m + (2.0 * std::log1p(R) + log_m) / k);
}

double growth_rate_log(const MonotoneFunction& growth, double R) {
  if (growth.domain() != DomainKind::growth) throw DomainError("M_log needs a growth function");
  const double log_m = growth.log_value(R);
  return std::exp(log_m) * (std::log1p(R) + log_m);
}

double decay_rate_k(const MonotoneFunction& decay, int k, double r) {
  require_k(k);
  if (decay.domain() != DomainKind::decay) throw DomainError("m_k needs a decay function");
  const double log_m = decay.log_value(r);
  return std::exp(log_m * (1.0 + 1.0 / k) - std::log(r) / k);
}

double decay_rate_log(const MonotoneFunction& decay, double r) {
  if (decay.domain() != DomainKind::decay) throw DomainError("m_log needs a decay function");
  const double log_m = decay.log_value(r);
  return std::exp(log_m) * log1p_exp(log_m - std::log(r));
}

MonotoneEvaluator evaluator(const MonotoneFunction& fn) {
  return {[fn](double x) { return fn(x); }, fn.domain()};
}

MonotoneEvaluator growth_rate_k_evaluator(MonotoneFunction growth, int k) {
  require_k(k);
  return {[g = std::move(growth), k](double R) { return growth_rate_k(g, k, R); }, DomainKind::growth};
}

MonotoneEvaluator growth_rate_log_evaluator(MonotoneFunction growth) {
  return {[g = std::move(growth)](double R) { return growth_rate_log(g, R); }, DomainKind::growth};
}

MonotoneEvaluator decay_rate_k_evaluator(MonotoneFunction decay, int k) {
  require_k(k);
  return {[d = std::move(decay), k](double r) { return decay_rate_k(d, k, r); }, DomainKind::decay};
}

MonotoneEvaluator decay_rate_log_evaluator(MonotoneFunction decay) {
  return {[d = std::move(decay)](double r) { return decay_rate_log(d, r); }, DomainKind::decay};
}

double invert_monotone(const MonotoneEvaluator& fn, double y, double tol_rel) {
  if (!(tol_rel > 0.0)) throw DomainError("inversion tolerance must be positive");
  if (!std::isfinite(y)) throw InversionRangeError(y, -kInf, kInf);
  const double residual_tol = tol_rel * std::max(1.0, std::abs(y));
  auto eval = [&](double x) {
    const double v = fn.f(x);
    if (std::isnan(v)) throw DomainError("function being inverted returned NaN at " + fmt(x));
    return v;
  };

  // lo/hi bracket x; `below` is the end where f <= y.
  double lo, hi;
  const bool growth = fn.domain == DomainKind::growth;
  if (growth) {
    const double edge = eval(0.0);
    if (y < edge) throw InversionRangeError(y, edge, kInf);
    if (y == edge) return 0.0;
    lo = 0.0;
    hi = 1.0;
    while (eval(hi) < y) {
      lo = hi;
      hi *= 2.0;
      if (hi > 1e300) throw InversionRangeError(y, edge, eval(lo));
    }
  } else {
    const double edge = eval(1.0);
    if (y < edge) throw InversionRangeError(y, edge, kInf);
    if (y == edge) return 1.0;
    hi = 1.0;
    lo = 0.5;
    while (eval(lo) < y) {
      hi = lo;
      lo *= 0.5;
      if (lo < 1e-300) throw InversionRangeError(y, edge, eval(hi));
    }
  }

  for (int iter = 0; iter < 4000; ++iter) {
    const double mid = std::midpoint(lo, hi);
    const double value = eval(mid);
    if (std::abs(value - y) <= residual_tol && (hi - lo) <= tol_rel * std::abs(mid)) return mid;
    if (mid <= lo || mid >= hi) return mid;
    const bool mid_below = value < y;
    if (growth == mid_below) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return std::midpoint(lo, hi);
}

std::string_view to_string(Variant v) {
  switch (v) {
    case Variant::infinity_Ck: return "infinity_Ck";
    case Variant::infinity_smooth: return "infinity_smooth";
    case Variant::zero_Ck: return "zero_Ck";
    case Variant::zero_smooth: return "zero_smooth";
    case Variant::zero_infinity_Ck: return "zero_infinity_Ck";
    case Variant::zero_infinity_smooth: return "zero_infinity_smooth";
  }
  return "unknown";
}

std::optional<Variant> variant_from_string(std::string_view name) {
  for (auto v : {Variant::infinity_Ck, Variant::infinity_smooth, Variant::zero_Ck, Variant::zero_smooth,
                 Variant::zero_infinity_Ck, Variant::zero_infinity_smooth})
    if (to_string(v) == name) return v;
  return std::nullopt;
}

bool needs_growth(Variant v) { return v != Variant::zero_Ck && v != Variant::zero_smooth; }
bool needs_decay(Variant v) { return v != Variant::infinity_Ck && v != Variant::infinity_smooth; }
bool uses_smoothness_order(Variant v) {
  return v == Variant::infinity_Ck || v == Variant::zero_Ck || v == Variant::zero_infinity_Ck;
}

double max_admissible_c(Variant v) {
  switch (v) {
    case Variant::infinity_smooth:
    case Variant::zero_infinity_smooth: return 0.5;
    case Variant::zero_smooth: return 1.0;
    default: return kInf;
  }
}

double default_c(Variant v) {
  switch (v) {
    case Variant::infinity_smooth:
    case Variant::zero_infinity_smooth: return 0.45;
    case Variant::zero_smooth: return 0.9;
    default: return 1.0;
  }
}

std::string admissible_c_text(Variant v) {
  switch (v) {
    case Variant::infinity_smooth:
    case Variant::zero_infinity_smooth: return "c∈(0,1/2)";
    case Variant::zero_smooth: return "c∈(0,1)";
    default: return "c>0";
  }
}

RateBound::RateBound(Variant variant, std::optional<MonotoneFunction> growth,
                     std::optional<MonotoneFunction> decay, double c, int k)
    : variant_(variant), growth_(std::move(growth)), decay_(std::move(decay)), c_(c), k_(k) {
  if (!(c > 0.0 && c < max_admissible_c(variant)) || !std::isfinite(c))
    throw AdmissibilityError("c=" + fmt(c) + " is not admissible for " + std::string(to_string(variant)) +
                             ": requires " + admissible_c_text(variant));
  if (uses_smoothness_order(variant) && k < 1)
    throw AdmissibilityError("smoothness order k must be >= 1 for " + std::string(to_string(variant)));
  const bool smooth = !uses_smoothness_order(variant);
  if (needs_growth(variant)) {
    if (!growth_ || growth_->domain() != DomainKind::growth)
      throw AdmissibilityError(std::string(to_string(variant)) + " needs a growth function M");
    growth_eval_ = smooth ? growth_rate_log_evaluator(*growth_) : growth_rate_k_evaluator(*growth_, k);
    growth_floor_ = growth_eval_->f(0.0);
    t_min_ = std::max(t_min_, growth_floor_ / c);
  }
  if (needs_decay(variant)) {
    if (!decay_ || decay_->domain() != DomainKind::decay)
      throw AdmissibilityError(std::string(to_string(variant)) + " needs a decay function m");
    decay_eval_ = smooth ? decay_rate_log_evaluator(*decay_) : decay_rate_k_evaluator(*decay_, k);
    decay_floor_ = decay_eval_->f(1.0);
    t_min_ = std::max(t_min_, decay_floor_ / c);
  }
}

double RateBound::operator()(double t) const {
  if (!(t >= t_min_) || !std::isfinite(t) || (growth_eval_ && !(c_ * t > growth_floor_)))
    throw DomainError("t=" + fmt(t) + " is below t_min=" + fmt(t_min_) + " for " +
                      std::string(to_string(variant_)));
  const double ct = c_ * t;
  // Past the representable range the inverse lies beyond 1e300 (or below 1e-300): the term is 0 in double.
  auto inverse_or_edge = [ct](const MonotoneEvaluator& fn, double edge) {
    try {
      return invert_monotone(fn, ct);
    } catch (const InversionRangeError& e) {
      if (ct >= e.range_high) return edge;
      throw;
    }
  };
  double value = 0.0;
  if (growth_eval_) value += 1.0 / inverse_or_edge(*growth_eval_, kInf);
  if (decay_eval_) value += inverse_or_edge(*decay_eval_, 0.0);
  if (variant_ == Variant::zero_Ck || variant_ == Variant::zero_smooth ||
      variant_ == Variant::zero_infinity_smooth)
    value += 1.0 / t;
  return value;
}

double bound(Variant variant, const std::optional<MonotoneFunction>& growth,
             const std::optional<MonotoneFunction>& decay, double c, int k, double t) {
  return RateBound(variant, growth, decay, c, k)(t);
}

namespace {

// 1/M_*^{-1}(y) from exact inverses.
std::optional<double> closed_growth_part(const MonotoneFunction& M, bool smooth, int k, double y) {
  double alpha = 0.0, log_v = 0.0;
  if (const auto* p = std::get_if<PowerFamily>(&M.family())) {
    alpha = p->alpha;
  } else if (const auto* c = std::get_if<ConstantFamily>(&M.family())) {
    log_v = std::log(c->value);
  } else {
    return std::nullopt;
  }
  double log1p_R;
  if (!smooth) {
    // M_k = v^{(k+1)/k} (1+R)^{alpha + (alpha+2)/k}
    const double p = alpha + (alpha + 2.0) / k;
    log1p_R = (std::log(y) - log_v * (k + 1.0) / k) / p;
  } else if (alpha > 0.0) {
    // (1+R)^alpha (1+alpha) log(1+R) = y  =>  alpha L e^{alpha L} = alpha y / (1+alpha)
    log1p_R = boost::math::lambert_w0(alpha * y / (1.0 + alpha)) / alpha;
  } else {
    // v (log(1+R) + log v) = y
    log1p_R = y / std::exp(log_v) - log_v;
  }
  const double R = std::expm1(log1p_R);
  if (!(R > 0.0)) return std::nullopt;
  return 1.0 / R;
}

// m_*^{-1}(y) from exact inverses.
std::optional<double> closed_decay_part(const MonotoneFunction& m, bool smooth, int k, double y) {
  if (const auto* p = std::get_if<PowerFamily>(&m.family())) {
    if (smooth) return std::nullopt;
    // m_k = r^{-(alpha(k+1)+1)/k}
    const double q = (p->alpha * (k + 1.0) + 1.0) / k;
    return std::pow(y, -1.0 / q);
  }
  if (const auto* c = std::get_if<ConstantFamily>(&m.family())) {
    const double v = c->value;
    if (!smooth) return std::pow(std::pow(v, (k + 1.0) / k) / y, static_cast<double>(k));
    return v / std::expm1(y / v);
  }
  return std::nullopt;
}

}  // namespace

std::optional<double> closed_form_bound(Variant variant, const std::optional<MonotoneFunction>& growth,
                                        const std::optional<MonotoneFunction>& decay, double c, int k,
                                        double t) {
  const RateBound checked(variant, growth, decay, c, k);
  if (!(t >= checked.t_min())) return std::nullopt;
  const bool smooth = !uses_smoothness_order(variant);
  const double y = c * t;
  double value = 0.0;
  if (needs_growth(variant)) {
    const auto part = closed_growth_part(*growth, smooth, k, y);
    if (!part) return std::nullopt;
    value += *part;
  }
  if (needs_decay(variant)) {
    const auto part = closed_decay_part(*decay, smooth, k, y);
    if (!part) return std::nullopt;
    value += *part;
  }
  if (variant == Variant::zero_Ck || variant == Variant::zero_smooth || variant == Variant::zero_infinity_smooth)
    value += 1.0 / t;
  return value;
}

namespace {

constexpr double kRawSearchCap = 1e300;
constexpr int kGridPerDecade = 50;

// Minimises g(exp(u)) over u in [log lo, log hi]; grows hi while the grid
// minimum sits on the upper end.
RawBound minimise_on_log_grid(const std::function<double(double)>& g, double lo, double hi) {
  for (int attempt = 0; attempt < 12; ++attempt) {
    const double u_lo = std::log(lo);
    const double u_hi = std::log(hi);
    const int points = std::max(8, static_cast<int>(kGridPerDecade * (u_hi - u_lo) / std::log(10.0)));
    std::size_t best = 0;
    double best_value = kInf;
    std::vector<double> us(points + 1);
    for (int i = 0; i <= points; ++i) {
      us[i] = u_lo + (u_hi - u_lo) * i / points;
      const double v = g(std::exp(us[i]));
      if (v < best_value) {
        best_value = v;
        best = static_cast<std::size_t>(i);
      }
    }
    if (best == us.size() - 1) {
      if (hi >= kRawSearchCap)
        throw ConvergenceError("raw bound search bracket exhausted at R_max=" + fmt(hi));
      hi = std::min(kRawSearchCap, hi * 1e3);
      continue;
    }
    double a = us[best == 0 ? 0 : best - 1];
    double b = us[best + 1];
    constexpr double inv_phi = 0.6180339887498949;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = g(std::exp(x1));
    double f2 = g(std::exp(x2));
    while (b - a > 1e-6) {
      if (f1 <= f2) {
        b = x2;
        x2 = x1;
        f2 = f1;
        x1 = b - inv_phi * (b - a);
        f1 = g(std::exp(x1));
      } else {
        a = x1;
        x1 = x2;
        f1 = f2;
        x2 = a + inv_phi * (b - a);
        f2 = g(std::exp(x2));
      }
    }
    const double u_star = f1 <= f2 ? x1 : x2;
    const double v_star = std::min(f1, f2);
    if (best_value < v_star) return {best_value, std::exp(us[best])};
    return {v_star, std::exp(u_star)};
  }
  throw ConvergenceError("raw bound search did not settle");
}

double search_ceiling(const MonotoneEvaluator& composed, double ct) {
  double ceiling = 1e6;
  try {
    ceiling = std::max(ceiling, 1e3 * invert_monotone(composed, ct));
  } catch (const InversionRangeError&) {
  }
  return std::min(ceiling, kRawSearchCap);
}

}  // namespace

RawBound raw_bound_smooth(const MonotoneFunction& growth, double c, double t) {
  if (!(t >= 1.0)) throw DomainError("raw_bound_smooth needs t >= 1");
  if (!(c > 0.0 && c < 0.5)) throw AdmissibilityError("raw_bound_smooth requires c∈(0,1/2)");
  if (growth.domain() != DomainKind::growth) throw DomainError("raw_bound_smooth needs a growth function");
  auto g = [&](double R) {
    const double log_m = growth.log_value(R);
    const double m = std::exp(log_m);
    const double log_term = 2.0 * std::log1p(R) + 2.0 * log_m - 2.0 * c * t / m;
    return (std::exp(log_term) + 1.0) / R;
  };
  return minimise_on_log_grid(g, 1.0, search_ceiling(growth_rate_log_evaluator(growth), c * t));
}

RawBound raw_bound_Ck(const MonotoneFunction& growth, int k, double c, double t) {
  require_k(k);
  if (!(t >= 1.0)) throw DomainError("raw_bound_Ck needs t >= 1");
  if (!(c > 0.0)) throw AdmissibilityError("raw_bound_Ck requires c>0");
  if (growth.domain() != DomainKind::growth) throw DomainError("raw_bound_Ck needs a growth function");
  const double log_t = std::log(t);
  auto g = [&](double R) {
    return 1.0 / R + std::exp(std::log(R) + (k + 1) * growth.log_value(R) - k * log_t);
  };
  return minimise_on_log_grid(g, 1.0, search_ceiling(growth_rate_k_evaluator(growth, k), c * t));
}

}  // namespace ingham
