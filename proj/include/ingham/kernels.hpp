#pragma once

#include <cmath>
#include <memory>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "ingham/quadrature.hpp"

namespace ingham {

// Closed-form kernels in their raw normalisation. With the transform
// F phi(s) = int e^{-ist} phi(t) dt both have total mass 2*pi.

/// Below this |t| the six-term Taylor series is used (truncation error ~3e-15,
/// against ~1e-8 cancellation error of the direct formula at |t| = 1e-4).
inline constexpr double kSeriesThreshold = 0.5;

/// 4 (cos(t/2) - cos t) / t^2, with phi(0) = 3/2.
template <typename Scalar>
Scalar tent_time(Scalar t) {
  using std::abs;
  using std::cos;
  if (abs(t) < Scalar(kSeriesThreshold)) {
    // 4 sum_{n>=1} (-1)^n t^{2n-2} (2^{-2n} - 1) / (2n)!
    const Scalar t2 = t * t;
    Scalar sum = 0, power = 1, factorial = 1, quarter = 1;
    for (int n = 1; n <= 6; ++n) {
      factorial *= Scalar((2 * n - 1) * (2 * n));
      quarter /= Scalar(4);
      const Scalar term = power * (quarter - Scalar(1)) / factorial;
      sum += (n % 2 == 1) ? -term : term;
      power *= t2;
    }
    return Scalar(4) * sum;
  }
  return Scalar(4) * (cos(t / Scalar(2)) - cos(t)) / (t * t);
}

/// 4 (sin t / t - cos t) / t^2, with limit 4/3 at 0.
template <typename Scalar>
Scalar fudge_time(Scalar t) {
  using std::abs;
  using std::cos;
  using std::sin;
  if (abs(t) < Scalar(kSeriesThreshold)) {
    // 4 sum_{n>=1} (-1)^n t^{2n-2} (1/(2n+1)! - 1/(2n)!)
    const Scalar t2 = t * t;
    Scalar sum = 0, power = 1, even_factorial = 1;
    for (int n = 1; n <= 6; ++n) {
      even_factorial *= Scalar((2 * n - 1) * (2 * n));
      const Scalar odd_factorial = even_factorial * Scalar(2 * n + 1);
      const Scalar term = power * (Scalar(1) / odd_factorial - Scalar(1) / even_factorial);
      sum += (n % 2 == 1) ? -term : term;
      power *= t2;
    }
    return Scalar(4) * sum;
  }
  return Scalar(4) * (sin(t) / t - cos(t)) / (t * t);
}

/// Fourier transform of tent_time / (2 pi): 1 on |s| <= 1/2, 2(1-|s|) on [1/2, 1], 0 beyond.
template <typename Scalar>
Scalar tent_freq(Scalar s) {
  using std::abs;
  const Scalar a = abs(s);
  if (a <= Scalar(0.5)) return Scalar(1);
  if (a >= Scalar(1)) return Scalar(0);
  return Scalar(2) * (Scalar(1) - a);
}

/// The piecewise profile 1 on |s| <= 1/2, 1-|s| on [1/2, 1], 0 beyond, as written
/// in the tent construction. It is not the transform of tent_time (it jumps at 1/2).
template <typename Scalar>
Scalar tent_profile_literal(Scalar s) {
  using std::abs;
  const Scalar a = abs(s);
  if (a <= Scalar(0.5)) return Scalar(1);
  if (a >= Scalar(1)) return Scalar(0);
  return Scalar(1) - a;
}

/// Fourier transform of fudge_time / (2 pi): max(0, 1 - s^2).
template <typename Scalar>
Scalar fudge_freq(Scalar s) {
  const Scalar v = Scalar(1) - s * s;
  return v > Scalar(0) ? v : Scalar(0);
}

/// Elementwise versions for Eigen arrays.
template <typename Derived>
auto tent_time(const Eigen::ArrayBase<Derived>& t) {
  return t.unaryExpr([](typename Derived::Scalar x) { return tent_time(x); });
}
template <typename Derived>
auto fudge_time(const Eigen::ArrayBase<Derived>& t) {
  return t.unaryExpr([](typename Derived::Scalar x) { return fudge_time(x); });
}

/// Exponential smoothstep: 1 on |s| <= 1/2, 0 on |s| >= 1, C-infinity in between.
double bump_freq(double s, double sharpness = 2.0);

enum class KernelKind { tent, fudge, bump };

std::string_view to_string(KernelKind kind);
std::optional<KernelKind> kernel_from_string(std::string_view name);

class KernelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct BumpTable;

/// A unit-mass smoothing kernel phi_r(t) = r phi(rt) with transform
/// psi_r(s) = psi(s/r); psi(0) = 1 and psi vanishes for |s| >= r.
class Kernel {
 public:
  static Kernel tent(double scale = 1.0);
  static Kernel fudge(double scale = 1.0);
  /// Tabulates phi on [-200, 200] (spacing 0.01) by inverse transform of the
  /// smoothstep psi; throws KernelError when the tabulated mass misses 1 by > 1e-8.
  static Kernel bump(double transition_sharpness = 2.0, double scale = 1.0);

  KernelKind kind() const { return kind_; }
  std::string_view name() const { return to_string(kind_); }
  double scale() const { return scale_; }
  double sharpness() const { return sharpness_; }
  Kernel scaled(double r) const;

  double time(double t) const;
  double freq(double s) const;

  /// psi == 1 on a neighbourhood of 0 (false for fudge).
  bool has_flat_top() const { return kind_ != KernelKind::fudge; }
  /// psi == 1 for |s| <= plateau(); 0 for fudge.
  double plateau() const { return has_flat_top() ? 0.5 * scale_ : 0.0; }
  /// psi vanishes for |s| >= support().
  double support() const { return scale_; }
  /// Points where psi is not smooth, within [-support, support].
  std::vector<double> frequency_breaks() const;
  /// Half-width of the time range where phi is nonzero numerically (inf for closed forms).
  double time_extent() const;
  /// 1 - tabulated mass, for bump; 0 for the closed forms.
  double mass_defect() const;

  /// Terms whose sum equals phi(t) cos(s t) for t > 0 (tent and fudge only).
  std::vector<OscillatoryTerm> cosine_terms(double s) const;

 private:
  Kernel(KernelKind kind, double scale, double sharpness, std::shared_ptr<const BumpTable> table)
      : kind_(kind), scale_(scale), sharpness_(sharpness), table_(std::move(table)) {}

  KernelKind kind_;
  double scale_;
  double sharpness_;
  std::shared_ptr<const BumpTable> table_;
};

Kernel make_kernel(KernelKind kind, double scale = 1.0, double sharpness = 2.0);

/// int e^{-ist} phi(t) dt computed by quadrature; tent and fudge use the
/// cosine-term tail from t = 1 on, bump integrates the table.
QuadratureResult numeric_transform(const Kernel& kernel, double s,
                                   const QuadratureSpec& spec = {});

/// Phi_alpha(t) = int_t^inf env(s) cos(alpha s) ds by half-period splitting.
QuadratureResult leibniz_tail(const RealFunction& envelope, double alpha, double t,
                              const QuadratureSpec& spec = {});

/// -int_t^inf tent_time, in the raw normalisation.
double tent_primitive_plus(double t, const QuadratureSpec& spec = {});
/// int_{-inf}^t tent_time = tent_primitive_plus(t) + 2 pi.
double tent_primitive_minus(double t, const QuadratureSpec& spec = {});

}  // namespace ingham
