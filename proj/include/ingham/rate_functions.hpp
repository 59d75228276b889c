#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace ingham {

/// Where a rate function lives: growth functions on [0, inf) (bounds on the
/// resolvent as |s| -> inf), decay functions on (0, 1] (bounds as |s| -> 0).
enum class DomainKind { growth, decay };
enum class Direction { non_decreasing, non_increasing };

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised when a value to invert falls outside the range of the function.
class InversionRangeError : public std::range_error {
 public:
  InversionRangeError(double y, double range_low, double range_high);
  double y, range_low, range_high;
};

class AdmissibilityError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct PowerFamily {
  double alpha;  // (1+R)^alpha or r^-alpha
};
struct ExponentialFamily {
  double alpha;  // exp(R^alpha) or exp(r^-alpha)
};
struct ConstantFamily {
  double value = 1.0;
};
struct TabulatedFamily {
  std::vector<double> knots;
  std::vector<double> values;
  bool reciprocal_floor = false;  // decay only: evaluate as max(table(r), 1/r)
};
using RateFamily = std::variant<PowerFamily, ExponentialFamily, ConstantFamily, TabulatedFamily>;

/// A continuous monotone function with values >= 1: non-decreasing on
/// [0, inf) for growth, non-increasing on (0, 1] for decay. Tabulated
/// functions interpolate linearly and are held flat outside their knots.
class MonotoneFunction {
 public:
  static MonotoneFunction power(DomainKind domain, double alpha);
  static MonotoneFunction exponential(DomainKind domain, double alpha);
  static MonotoneFunction constant(DomainKind domain, double value = 1.0);
  /// Rejects unsorted knots, non-finite values, values below 1, knots outside
  /// the domain, and tables that break the domain's direction.
  static MonotoneFunction tabulated(DomainKind domain, std::vector<double> knots,
                                    std::vector<double> values, bool reciprocal_floor = false);

  double operator()(double x) const;
  /// log of the value; exact for the closed-form families, so it stays finite past overflow.
  double log_value(double x) const;

  DomainKind domain() const { return domain_; }
  Direction direction() const {
    return domain_ == DomainKind::growth ? Direction::non_decreasing : Direction::non_increasing;
  }
  const RateFamily& family() const { return family_; }
  bool contains(double x) const;
  std::string describe() const;

 private:
  MonotoneFunction(DomainKind domain, RateFamily family) : domain_(domain), family_(std::move(family)) {}
  void require_domain(double x) const;
  double tabulated_value(const TabulatedFamily& table, double x) const;

  DomainKind domain_;
  RateFamily family_;
};

/// M(R) ((1+R)^2 M(R))^(1/k).
double growth_rate_k(const MonotoneFunction& growth, int k, double R);
/// M(R) (log(1+R) + log M(R)).
double growth_rate_log(const MonotoneFunction& growth, double R);
/// m(r) (m(r)/r)^(1/k).
double decay_rate_k(const MonotoneFunction& decay, int k, double r);
/// m(r) log(1 + m(r)/r).
double decay_rate_log(const MonotoneFunction& decay, double r);

/// A strictly monotone evaluator together with the domain it lives on.
struct MonotoneEvaluator {
  std::function<double(double)> f;
  DomainKind domain;
};

MonotoneEvaluator evaluator(const MonotoneFunction& fn);
MonotoneEvaluator growth_rate_k_evaluator(MonotoneFunction growth, int k);
MonotoneEvaluator growth_rate_log_evaluator(MonotoneFunction growth);
MonotoneEvaluator decay_rate_k_evaluator(MonotoneFunction decay, int k);
MonotoneEvaluator decay_rate_log_evaluator(MonotoneFunction decay);

inline constexpr double kDefaultInversionTolerance = 1e-10;

/// Solves f(x) = y. The bracket grows geometrically away from the domain
/// edge (doubling from 1 for growth, halving from 1 for decay) and is then
/// bisected until |f(x) - y| <= tol_rel * max(1, |y|) and the bracket is
/// relatively narrower than tol_rel.
double invert_monotone(const MonotoneEvaluator& fn, double y,
                       double tol_rel = kDefaultInversionTolerance);

enum class Variant {
  infinity_Ck,
  infinity_smooth,
  zero_Ck,
  zero_smooth,
  zero_infinity_Ck,
  zero_infinity_smooth
};

std::string_view to_string(Variant v);
std::optional<Variant> variant_from_string(std::string_view name);
bool needs_growth(Variant v);
bool needs_decay(Variant v);
bool uses_smoothness_order(Variant v);
/// Open upper end of the admissible c interval; infinity for the C^k variants.
double max_admissible_c(Variant v);
double default_c(Variant v);
/// Human-readable admissible range, e.g. "c∈(0,1/2)".
std::string admissible_c_text(Variant v);

/// A decay bound t -> B(t), evaluated with implicit constant 1.
///
///   infinity_Ck           1/M_k^{-1}(ct)
///   infinity_smooth       1/M_log^{-1}(ct)
///   zero_Ck               m_k^{-1}(ct) + 1/t
///   zero_smooth           m_log^{-1}(ct) + 1/t
///   zero_infinity_Ck      m_k^{-1}(ct) + 1/M_k^{-1}(ct)
///   zero_infinity_smooth  m_log^{-1}(ct) + 1/M_log^{-1}(ct) + 1/t
class RateBound {
 public:
  /// Throws AdmissibilityError for c outside the variant's range or a missing source.
  RateBound(Variant variant, std::optional<MonotoneFunction> growth,
            std::optional<MonotoneFunction> decay, double c, int k = 1);

  double operator()(double t) const;
  /// Infimum of the admissible t; growth inversions need c*t strictly above M_*(0).
  double t_min() const { return t_min_; }
  Variant variant() const { return variant_; }
  double c() const { return c_; }
  int k() const { return k_; }
  const std::optional<MonotoneFunction>& growth() const { return growth_; }
  const std::optional<MonotoneFunction>& decay() const { return decay_; }

 private:
  Variant variant_;
  std::optional<MonotoneFunction> growth_, decay_;
  double c_;
  int k_;
  std::optional<MonotoneEvaluator> growth_eval_, decay_eval_;
  double growth_floor_ = 0.0;  // value of the composed growth function at R = 0
  double decay_floor_ = 0.0;   // value of the composed decay function at r = 1
  double t_min_ = 0.0;
};

double bound(Variant variant, const std::optional<MonotoneFunction>& growth,
             const std::optional<MonotoneFunction>& decay, double c, int k, double t);

/// The bound computed from exact closed-form inverses, when they exist: power and
/// constant sources, except m_log for a power-law m. Smooth power-law growth
/// inverts through the Lambert W function.
std::optional<double> closed_form_bound(Variant variant, const std::optional<MonotoneFunction>& growth,
                                        const std::optional<MonotoneFunction>& decay, double c, int k,
                                        double t);

struct RawBound {
  double value;
  double argmin;
};

/// min over R in [1, R_max] of (1/R)((1+R)^2 M(R)^2 exp(-2ct/M(R)) + 1), found by a
/// log-grid scan refined with golden-section search to relative tolerance 1e-6.
/// R_max = max(1e6, 1e3 * M_log^{-1}(ct)); grows (capped) if the minimiser sits on it.
RawBound raw_bound_smooth(const MonotoneFunction& growth, double c, double t);

/// Same search for 1/R + R M(R)^(k+1) / t^k, with R_max from M_k^{-1}(ct).
RawBound raw_bound_Ck(const MonotoneFunction& growth, int k, double c, double t);

}  // namespace ingham
