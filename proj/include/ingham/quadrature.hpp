#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <variant>
#include <vector>

namespace ingham {

class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct QuadratureSpec {
  double abs_tol = 1e-10;
  double rel_tol = 1e-9;
  int max_subdivisions = 4000;
  std::optional<double> oscillation_frequency;  // period hint, splits the interval
  double truncation_radius = 0.0;               // 0 = choose from the decay hint

  /// Throws std::invalid_argument unless tolerances are positive and the budget is >= 1.
  void validate() const;
};

/// Defaults honour the INGHAM_RATES_TOL environment variable when it holds a positive number.
QuadratureSpec default_quadrature_spec();

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  bool converged = true;
  std::size_t evaluations = 0;
};

struct ComplexQuadratureResult {
  std::complex<double> value;
  double error_estimate = 0.0;
  bool converged = true;
};

using RealFunction = std::function<double(double)>;
using ComplexFunction = std::function<std::complex<double>(double)>;

/// Globally adaptive Gauss-Kronrod (7/15) quadrature on [a, b].
///
/// The interval with the largest local error is bisected until the summed
/// error estimate is below max(abs_tol, rel_tol*|value|). When the budget
/// runs out the best value is returned with converged == false.
QuadratureResult integrate(const RealFunction& f, double a, double b,
                           const QuadratureSpec& spec = {});

/// Same as integrate() but the interval is first split at the given interior
/// points (kinks, near-poles). Points outside (a, b) are ignored.
QuadratureResult integrate_with_breaks(const RealFunction& f, double a, double b,
                                       std::span<const double> breaks,
                                       const QuadratureSpec& spec = {});

/// Real and imaginary parts are integrated separately; the error is the max of the two.
ComplexQuadratureResult integrate_complex(const ComplexFunction& f, double a, double b,
                                          std::span<const double> breaks = {},
                                          const QuadratureSpec& spec = {});

/// One oscillatory component env(s) * weight * cos(frequency*s + phase).
struct OscillatoryTerm {
  RealFunction envelope;
  double frequency = 1.0;
  double phase = 0.0;
  double weight = 1.0;
};

/// Computes the integral of env(s) cos(frequency*s + phase) over [from, inf).
///
/// The range is cut at the zeros of the cosine, so every piece after the
/// first alternates in sign; pieces are summed until one falls below 1e-14
/// or the repeated-averaging (Euler) transform of the partial sums settles.
/// Throws std::domain_error when the envelope is negative or increasing on
/// the sampled grid, or decays too slowly to be integrable.
QuadratureResult integrate_oscillatory(const RealFunction& envelope, double frequency,
                                       double phase, double from,
                                       const QuadratureSpec& spec = {});

struct ExponentialDecay {
  double rate;
};
struct PolynomialDecay {
  double power;
};
struct OscillatoryDecay {
  std::vector<OscillatoryTerm> terms;  // f(s) == sum of terms for s >= a
};
using DecayHint = std::variant<ExponentialDecay, PolynomialDecay, OscillatoryDecay>;

/// Integral of f over [a, inf). Exponential and polynomial hints truncate where
/// the hinted tail bound drops below abs_tol/2; the oscillatory hint checks the
/// decomposition against f and delegates each term to integrate_oscillatory.
QuadratureResult integrate_semi_infinite(const RealFunction& f, double a,
                                         const DecayHint& hint,
                                         const QuadratureSpec& spec = {});

}  // namespace ingham
