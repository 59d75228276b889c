#pragma once

#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "ingham/rate_functions.hpp"

namespace ingham {

using Complex = std::complex<double>;

class SpectrumError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A generator acting diagonally on a sequence space with the sup norm, so
/// every operator norm below is an exact maximum over modes.
class DiagonalOperator {
 public:
  /// Throws SpectrumError unless every eigenvalue is finite with Re < 0.
  explicit DiagonalOperator(Eigen::VectorXcd eigenvalues, std::string label = "diagonal");

  const Eigen::VectorXcd& eigenvalues() const { return eigenvalues_; }
  Eigen::Index size() const { return eigenvalues_.size(); }
  const std::string& label() const { return label_; }

  /// 1 / min_n |is - lambda_n|.
  double resolvent_norm(double s) const;
  /// min_n |is - lambda_n|, via a window search over eigenvalues sorted by Im.
  double distance_to_spectrum(double s) const;
  double min_modulus() const { return eigenvalues_.cwiseAbs().minCoeff(); }

 private:
  Eigen::VectorXcd eigenvalues_;
  std::string label_;
  std::vector<double> sorted_imag_;
  std::vector<double> sorted_real_;
};

enum class OrbitKind { Ainv, AR_omega, AR_omega_sq, vector };

std::string_view to_string(OrbitKind kind);
std::optional<OrbitKind> orbit_from_string(std::string_view name);

/// A contiguous run of modes belonging to one family (used for truncation checks).
struct ModeBlock {
  Eigen::Index offset;
  Eigen::Index size;
  std::string family;
};

struct Scenario {
  DiagonalOperator op;
  OrbitKind orbit = OrbitKind::vector;
  double omega = 1.0;
  Eigen::VectorXcd x;  // vector the orbit starts from; sup norm 1 by default
  std::vector<ModeBlock> blocks;

  /// a_n with f_n(t) = a_n e^{lambda_n t}: x/lambda, lambda x/(omega - lambda),
  /// lambda x/(omega - lambda)^2 or x.
  Eigen::VectorXcd coefficients() const;
  std::string describe() const;
};

/// lambda_n = -n^{-alpha} + i n, n = 1..N.
Scenario polynomial_cluster_infinity(double alpha, Eigen::Index N, OrbitKind orbit = OrbitKind::Ainv,
                                     double omega = 1.0);
/// lambda_n = -n^{-beta} + i/n, n = 1..N.
Scenario polynomial_cluster_zero(double beta, Eigen::Index N, OrbitKind orbit = OrbitKind::AR_omega,
                                 double omega = 1.0);
Scenario single_mode(Complex lambda, OrbitKind orbit = OrbitKind::vector, double omega = 1.0);
/// Both clusters side by side: a singularity at zero and one at infinity.
Scenario combined_clusters(double alpha, Eigen::Index N_infinity, double beta, Eigen::Index N_zero,
                           OrbitKind orbit = OrbitKind::AR_omega_sq, double omega = 1.0);
/// Same operator, orbit started from a different vector (validated length).
Scenario with_vector(Scenario scenario, Eigen::VectorXcd x);

/// f(t) componentwise.
Eigen::VectorXcd orbit(const Scenario& scenario, double t);
/// Exact operator norm (or sup norm of the vector orbit) at time t >= 0.
double orbit_norm(const Scenario& scenario, double t);
/// log of orbit_norm, exact even where the norm underflows; -inf for a zero orbit.
double log_orbit_norm(const Scenario& scenario, double t);
/// Index of the mode attaining orbit_norm at time t.
Eigen::Index maximizing_mode(const Scenario& scenario, double t);
/// True while the maximizing mode sits in the first half of its block.
bool truncation_safe(const Scenario& scenario, double t);

/// F^{(j)}(s) = a_n (-i)^j j! / (is - lambda_n)^{j+1} componentwise.
Eigen::VectorXcd boundary_function(const Scenario& scenario, double s, int j = 0);

/// Running maximum of max(||R(is)||, ||R(-is)||) over grid, eigenvalue ordinates,
/// midpoints and ten points per gap, from `from` upward, clamped at 1.
MonotoneFunction resolvent_envelope_growth(const DiagonalOperator& A, const std::vector<double>& R_grid,
                                           double from = 0.0);
/// Running maximum from |s| = 1 down to each r in (0, 1], clamped at 1 and
/// evaluated as max(table(r), 1/r).
MonotoneFunction resolvent_envelope_decay(const DiagonalOperator& A, const std::vector<double>& r_grid);

}  // namespace ingham
