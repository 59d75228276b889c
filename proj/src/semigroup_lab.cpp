#include "ingham/semigroup_lab.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace ingham {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require(bool ok, const std::string& message) {
  if (!ok) throw std::invalid_argument(message);
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

}  // namespace

DiagonalOperator::DiagonalOperator(Eigen::VectorXcd eigenvalues, std::string label)
    : eigenvalues_(std::move(eigenvalues)), label_(std::move(label)) {
  if (eigenvalues_.size() == 0) throw SpectrumError("a diagonal operator needs at least one eigenvalue");
  for (Eigen::Index n = 0; n < eigenvalues_.size(); ++n) {
    const Complex z = eigenvalues_[n];
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
      throw SpectrumError("eigenvalue " + std::to_string(n) + " is not finite");
    if (!(z.real() < 0.0))
      throw SpectrumError("eigenvalue " + std::to_string(n) + " has Re >= 0; the semigroup must be bounded");
  }
  std::vector<Eigen::Index> order(static_cast<std::size_t>(eigenvalues_.size()));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::sort(order.begin(), order.end(),
            [&](Eigen::Index a, Eigen::Index b) { return eigenvalues_[a].imag() < eigenvalues_[b].imag(); });
  sorted_imag_.reserve(order.size());
  sorted_real_.reserve(order.size());
  for (auto n : order) {
    sorted_imag_.push_back(eigenvalues_[n].imag());
    sorted_real_.push_back(eigenvalues_[n].real());
  }
}

double DiagonalOperator::distance_to_spectrum(double s) const {
  const auto count = sorted_imag_.size();
  const auto start = static_cast<std::size_t>(
      std::lower_bound(sorted_imag_.begin(), sorted_imag_.end(), s) - sorted_imag_.begin());
  double best = kInf;
  for (std::size_t i = start; i < count && sorted_imag_[i] - s < best; ++i)
    best = std::min(best, std::hypot(sorted_real_[i], sorted_imag_[i] - s));
  for (std::size_t i = start; i-- > 0 && s - sorted_imag_[i] < best;)
    best = std::min(best, std::hypot(sorted_real_[i], sorted_imag_[i] - s));
  return best;
}

double DiagonalOperator::resolvent_norm(double s) const {
  const double d = distance_to_spectrum(s);
  if (!(d > 0.0)) throw SpectrumError("is = " + fmt(s) + "i lies in the spectrum");
  return 1.0 / d;
}

std::string_view to_string(OrbitKind kind) {
  switch (kind) {
    case OrbitKind::Ainv: return "Ainv";
    case OrbitKind::AR_omega: return "AR_omega";
    case OrbitKind::AR_omega_sq: return "AR_omega_sq";
    case OrbitKind::vector: return "vector";
  }
  return "unknown";
}

std::optional<OrbitKind> orbit_from_string(std::string_view name) {
  for (auto k : {OrbitKind::Ainv, OrbitKind::AR_omega, OrbitKind::AR_omega_sq, OrbitKind::vector})
    if (to_string(k) == name) return k;
  return std::nullopt;
}

Eigen::VectorXcd Scenario::coefficients() const {
  const auto& lambda = op.eigenvalues();
  switch (orbit) {
    case OrbitKind::Ainv: return x.cwiseQuotient(lambda);
    case OrbitKind::AR_omega: {
      const Eigen::VectorXcd gap = (Complex(omega) - lambda.array()).matrix();
      return lambda.cwiseProduct(x).cwiseQuotient(gap);
    }
    case OrbitKind::AR_omega_sq: {
      const Eigen::VectorXcd gap = (Complex(omega) - lambda.array()).square().matrix();
      return lambda.cwiseProduct(x).cwiseQuotient(gap);
    }
    case OrbitKind::vector: return x;
  }
  return x;
}

std::string Scenario::describe() const {
  std::string text = op.label() + ", orbit " + std::string(to_string(orbit));
  if (orbit == OrbitKind::AR_omega || orbit == OrbitKind::AR_omega_sq) text += ", omega " + fmt(omega);
  return text;
}

namespace {

Scenario make_scenario(Eigen::VectorXcd lambda, std::string label, OrbitKind orbit, double omega,
                       std::vector<ModeBlock> blocks) {
  require(omega > 0.0 && std::isfinite(omega), "omega must be a finite positive number");
  const auto n = lambda.size();
  Scenario s{DiagonalOperator(std::move(lambda), std::move(label)), orbit, omega,
             Eigen::VectorXcd::Ones(n), std::move(blocks)};
  return s;
}

}  // namespace

Scenario polynomial_cluster_infinity(double alpha, Eigen::Index N, OrbitKind orbit, double omega) {
  require(alpha > 0.0 && std::isfinite(alpha), "cluster_infinity needs alpha > 0");
  require(N >= 1, "cluster_infinity needs N >= 1");
  Eigen::VectorXcd lambda(N);
  for (Eigen::Index n = 1; n <= N; ++n)
    lambda[n - 1] = Complex(-std::pow(static_cast<double>(n), -alpha), static_cast<double>(n));
  return make_scenario(std::move(lambda), "cluster_infinity(alpha=" + fmt(alpha) + ", N=" + std::to_string(N) + ")",
                       orbit, omega, {{0, N, "cluster_infinity"}});
}

Scenario polynomial_cluster_zero(double beta, Eigen::Index N, OrbitKind orbit, double omega) {
  require(beta > 1.0 && std::isfinite(beta), "cluster_zero needs beta > 1");
  require(N >= 1, "cluster_zero needs N >= 1");
  Eigen::VectorXcd lambda(N);
  for (Eigen::Index n = 1; n <= N; ++n) {
    const double nd = static_cast<double>(n);
    lambda[n - 1] = Complex(-std::pow(nd, -beta), 1.0 / nd);
  }
  return make_scenario(std::move(lambda), "cluster_zero(beta=" + fmt(beta) + ", N=" + std::to_string(N) + ")",
                       orbit, omega, {{0, N, "cluster_zero"}});
}

Scenario single_mode(Complex lambda, OrbitKind orbit, double omega) {
  Eigen::VectorXcd v(1);
  v[0] = lambda;
  return make_scenario(std::move(v), "single_mode(" + fmt(lambda.real()) + (lambda.imag() < 0 ? "" : "+") +
                                         fmt(lambda.imag()) + "i)",
                       orbit, omega, {{0, 1, "single_mode"}});
}

Scenario combined_clusters(double alpha, Eigen::Index N_infinity, double beta, Eigen::Index N_zero,
                           OrbitKind orbit, double omega) {
  const auto inf = polynomial_cluster_infinity(alpha, N_infinity, orbit, omega);
  const auto zero = polynomial_cluster_zero(beta, N_zero, orbit, omega);
  Eigen::VectorXcd lambda(N_infinity + N_zero);
  lambda << inf.op.eigenvalues(), zero.op.eigenvalues();
  return make_scenario(std::move(lambda), inf.op.label() + " + " + zero.op.label(), orbit, omega,
                       {{0, N_infinity, "cluster_infinity"}, {N_infinity, N_zero, "cluster_zero"}});
}

Scenario with_vector(Scenario scenario, Eigen::VectorXcd x) {
  require(x.size() == scenario.op.size(), "orbit vector length " + std::to_string(x.size()) +
                                              " does not match " + std::to_string(scenario.op.size()) + " modes");
  require(x.allFinite(), "orbit vector must be finite");
  scenario.x = std::move(x);
  return scenario;
}

Eigen::VectorXcd orbit(const Scenario& scenario, double t) {
  require(t >= 0.0, "orbits are defined for t >= 0");
  const Eigen::VectorXcd growth = (scenario.op.eigenvalues().array() * t).exp().matrix();
  return scenario.coefficients().cwiseProduct(growth);
}

namespace {

Eigen::ArrayXd mode_magnitudes(const Scenario& scenario, double t) {
  require(t >= 0.0, "orbits are defined for t >= 0");
  if (scenario.orbit == OrbitKind::Ainv && !(scenario.op.min_modulus() > 0.0))
    throw SpectrumError("A is not invertible");
  return scenario.coefficients().cwiseAbs().array() * (scenario.op.eigenvalues().real().array() * t).exp();
}

}  // namespace

double orbit_norm(const Scenario& scenario, double t) { return mode_magnitudes(scenario, t).maxCoeff(); }

namespace {

Eigen::ArrayXd log_mode_magnitudes(const Scenario& scenario, double t) {
  require(t >= 0.0, "orbits are defined for t >= 0");
  if (scenario.orbit == OrbitKind::Ainv && !(scenario.op.min_modulus() > 0.0))
    throw SpectrumError("A is not invertible");
  return scenario.coefficients().cwiseAbs().array().log() + scenario.op.eigenvalues().real().array() * t;
}

}  // namespace

double log_orbit_norm(const Scenario& scenario, double t) { return log_mode_magnitudes(scenario, t).maxCoeff(); }

Eigen::Index maximizing_mode(const Scenario& scenario, double t) {
  Eigen::Index index = 0;
  log_mode_magnitudes(scenario, t).maxCoeff(&index);
  return index;
}

bool truncation_safe(const Scenario& scenario, double t) {
  const auto index = maximizing_mode(scenario, t);
  for (const auto& block : scenario.blocks)
    if (index >= block.offset && index < block.offset + block.size)
      return static_cast<double>(index - block.offset) < 0.5 * static_cast<double>(block.size);
  return false;
}

Eigen::VectorXcd boundary_function(const Scenario& scenario, double s, int j) {
  require(j >= 0, "derivative order must be >= 0");
  const Eigen::ArrayXcd gap = Complex(0.0, s) - scenario.op.eigenvalues().array();
  if ((gap.abs() == 0.0).any()) throw SpectrumError("boundary function evaluated at a spectral point");
  double factorial = 1.0;
  for (int i = 2; i <= j; ++i) factorial *= i;
  const Complex prefactor = std::pow(Complex(0.0, -1.0), j) * factorial;
  return (prefactor * scenario.coefficients().array() / gap.pow(j + 1)).matrix();
}

namespace {

// Sorted, de-duplicated ordinates with midpoints and ten interior points per gap.
std::vector<double> envelope_abscissae(std::vector<double> points, std::vector<double> ordinates) {
  std::sort(ordinates.begin(), ordinates.end());
  ordinates.erase(std::unique(ordinates.begin(), ordinates.end()), ordinates.end());
  for (std::size_t i = 0; i < ordinates.size(); ++i) {
    points.push_back(ordinates[i]);
    if (i + 1 == ordinates.size()) break;
    const double a = ordinates[i], b = ordinates[i + 1];
    points.push_back(0.5 * (a + b));
    for (int k = 1; k <= 10; ++k) points.push_back(a + (b - a) * k / 11.0);
  }
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  return points;
}

double symmetric_norm(const DiagonalOperator& A, double s) {
  return std::max(A.resolvent_norm(s), A.resolvent_norm(-s));
}

}  // namespace

MonotoneFunction resolvent_envelope_growth(const DiagonalOperator& A, const std::vector<double>& R_grid, double from) {
  require(from >= 0.0 && std::isfinite(from), "envelope lower limit must be finite and >= 0");
  std::vector<double> points{from};
  for (double R : R_grid)
    if (R >= from && std::isfinite(R)) points.push_back(R);
  std::vector<double> ordinates;
  for (Eigen::Index n = 0; n < A.size(); ++n) {
    const double y = std::abs(A.eigenvalues()[n].imag());
    if (y >= from) ordinates.push_back(y);
  }
  const auto knots = envelope_abscissae(std::move(points), std::move(ordinates));
  std::vector<double> values(knots.size());
  double running = 1.0;
  for (std::size_t i = 0; i < knots.size(); ++i) {
    running = std::max(running, symmetric_norm(A, knots[i]));
    values[i] = running;
  }
  return MonotoneFunction::tabulated(DomainKind::growth, knots, std::move(values));
}

MonotoneFunction resolvent_envelope_decay(const DiagonalOperator& A, const std::vector<double>& r_grid) {
  std::vector<double> points{1.0};
  for (double r : r_grid)
    if (r > 0.0 && r <= 1.0) points.push_back(r);
  std::vector<double> ordinates;
  for (Eigen::Index n = 0; n < A.size(); ++n) {
    const double y = std::abs(A.eigenvalues()[n].imag());
    if (y > 0.0 && y <= 1.0) ordinates.push_back(y);
  }
  const auto knots = envelope_abscissae(std::move(points), std::move(ordinates));
  std::vector<double> values(knots.size());
  double running = 1.0;
  for (std::size_t i = knots.size(); i-- > 0;) {
    running = std::max(running, symmetric_norm(A, knots[i]));
    values[i] = running;
  }
  return MonotoneFunction::tabulated(DomainKind::decay, knots, std::move(values), true);
}

}  // namespace ingham
