#include <algorithm>
#include <cmath>
#include <limits>
#include <complex>
#include <vector>

#include "doctest.h"
#include "generators.hpp"
#include "ingham/quadrature.hpp"
#include "ingham/semigroup_lab.hpp"
#include "ingham/verify.hpp"

using namespace ingham;

namespace {

const Complex I(0.0, 1.0);

// Brute-force operator norm from the eigenvalues alone.
double brute_norm(const Eigen::VectorXcd& lambda, OrbitKind kind, double omega, double t) {
  double best = 0.0;
  for (Eigen::Index n = 0; n < lambda.size(); ++n) {
    const Complex l = lambda[n];
    const double decay = std::exp(l.real() * t);
    double v = 0.0;
    switch (kind) {
      case OrbitKind::Ainv: v = decay / std::abs(l); break;
      case OrbitKind::AR_omega: v = std::abs(l) * decay / std::abs(omega - l); break;
      case OrbitKind::AR_omega_sq: v = std::abs(l) * decay / std::norm(omega - l); break;
      case OrbitKind::vector: v = decay; break;
    }
    best = std::max(best, v);
  }
  return best;
}

double brute_distance(const Eigen::VectorXcd& lambda, double s) {
  double d = INFINITY;
  for (Eigen::Index n = 0; n < lambda.size(); ++n) d = std::min(d, std::abs(I * s - lambda[n]));
  return d;
}

}  // namespace

TEST_SUITE("semigroup_lab") {
  TEST_CASE("single-mode orbits") {
    CHECK(orbit_norm(single_mode({-1.0, 0.0}, OrbitKind::Ainv), 0.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(orbit_norm(single_mode({-1.0, 1.0}, OrbitKind::Ainv), 1.0) ==
          doctest::Approx(std::exp(-1.0) / std::sqrt(2.0)).epsilon(1e-14));
    CHECK(orbit_norm(single_mode({-1.0, 1.0}, OrbitKind::Ainv), 1.0) == doctest::Approx(0.260130).epsilon(1e-6));
    CHECK(orbit_norm(single_mode({-2.0, 0.0}), 0.5) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
  }

  TEST_CASE("cluster at infinity: orbit maximiser near n = t") {
    const auto sc = polynomial_cluster_infinity(1.0, 10000);
    const double v = orbit_norm(sc, 100.0);
    CHECK(v == doctest::Approx(brute_norm(sc.op.eigenvalues(), OrbitKind::Ainv, 1.0, 100.0)).epsilon(1e-12));
    CHECK(v == doctest::Approx(std::exp(-1.0) / 100.0).epsilon(0.01));
    const auto n = maximizing_mode(sc, 100.0) + 1;
    CHECK(n >= 90);
    CHECK(n <= 110);
    CHECK(truncation_safe(sc, 100.0));
    CHECK_FALSE(truncation_safe(sc, 9000.0));
  }

  TEST_CASE("orbit norms match brute force for every orbit kind") {
    for (auto kind : {OrbitKind::Ainv, OrbitKind::AR_omega, OrbitKind::AR_omega_sq, OrbitKind::vector}) {
      for (const Scenario& sc : {polynomial_cluster_infinity(1.5, 500, kind, 2.0), polynomial_cluster_zero(2.0, 400, kind, 0.5),
                                 combined_clusters(1.0, 300, 2.0, 200, kind, 1.0)}) {
        for (double t : {0.0, 0.7, 13.0, 450.0}) {
          CHECK(orbit_norm(sc, t) == doctest::Approx(brute_norm(sc.op.eigenvalues(), kind, sc.omega, t)).epsilon(1e-12));
          CHECK(std::exp(log_orbit_norm(sc, t)) == doctest::Approx(orbit_norm(sc, t)).epsilon(1e-12));
        }
      }
    }
  }

  TEST_CASE("log norm stays finite past underflow") {
    const auto sc = single_mode({-1.0, 0.0});
    CHECK(orbit_norm(sc, 1000.0) == 0.0);
    CHECK(log_orbit_norm(sc, 1000.0) == doctest::Approx(-1000.0).epsilon(1e-14));
  }

  TEST_CASE("resolvent norms") {
    const DiagonalOperator A(Eigen::VectorXcd::Constant(1, Complex(-1.0, 1.0)));
    CHECK(A.resolvent_norm(1.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(A.resolvent_norm(0.0) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
    const auto sc = polynomial_cluster_infinity(1.0, 1000);
    for (int n : {1, 7, 100, 999}) CHECK(sc.op.resolvent_norm(n) == doctest::Approx(n).epsilon(1e-12));
  }

  TEST_CASE("growth envelope") {
    const DiagonalOperator A(Eigen::VectorXcd::Constant(1, Complex(-1.0, 1.0)));
    const auto M1 = resolvent_envelope_growth(A, log_grid(0.01, 100.0));
    CHECK(M1(1.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(M1(0.0) == doctest::Approx(std::max(1.0, A.resolvent_norm(0.0))).epsilon(1e-12));

    const auto sc = polynomial_cluster_infinity(1.0, 200);
    const auto M = resolvent_envelope_growth(sc.op, log_grid(0.01, 200.0));
    CHECK(M(0.0) == doctest::Approx(std::max(1.0, sc.op.resolvent_norm(0.0))).epsilon(1e-12));
    for (int n = 1; n <= 200; n += 13) CHECK(M(n) == doctest::Approx(n).epsilon(1e-9));
    gen::reseed(41);
    for (int i = 0; i < 200; ++i) {
      const double R = gen::uniform(1.0, 199.0);
      CHECK(M(R) >= std::floor(R) * (1 - 1e-12));
      CHECK(M(R) <= std::floor(R) + 1.0);
    }
  }

  TEST_CASE("decay envelope") {
    const auto sc = polynomial_cluster_zero(2.0, 1000);
    const auto m = resolvent_envelope_decay(sc.op, log_grid(1e-4, 1.0));
    for (int n : {10, 50, 300}) {
      CHECK(sc.op.resolvent_norm(1.0 / n) == doctest::Approx(double(n) * n).epsilon(1e-9));
      CHECK(m(1.0 / n) == doctest::Approx(double(n) * n).epsilon(1e-6));
    }
    // For small n a neighbouring mode is closer than the real part: mode 3 dominates at s = 1/2.
    double nearest = INFINITY;
    for (int j = 1; j <= 1000; ++j) nearest = std::min(nearest, std::hypot(1.0 / (double(j) * j), 0.5 - 1.0 / j));
    CHECK(sc.op.resolvent_norm(0.5) == doctest::Approx(1.0 / nearest).epsilon(1e-12));
    CHECK(sc.op.resolvent_norm(0.5) > 4.0);
    const auto m1 = resolvent_envelope_decay(single_mode({-1.0, 0.0}).op, log_grid(1e-3, 1.0));
    for (double r : {1e-3, 0.01, 0.5, 1.0}) CHECK(m1(r) == doctest::Approx(std::max(1.0, 1.0 / r)).epsilon(1e-12));
  }

  TEST_CASE("boundary function against the Laplace transform") {
    const auto sc = single_mode({-1.0, 0.0}, OrbitKind::Ainv);
    const Complex F0 = boundary_function(sc, 0.0, 0)[0];
    const Complex F1 = boundary_function(sc, 0.0, 1)[0];
    // f(t) = T(t) A^{-1} 1 = -e^{-t}; its Laplace transform at is = 0 is -1 and the s-derivative is i.
    CHECK(std::abs(F0 - Complex(-1.0, 0.0)) <= 1e-15);
    CHECK(std::abs(F1 - Complex(0.0, 1.0)) <= 1e-15);
    for (double s : {0.0, 0.4, 2.0}) {
      for (int j : {0, 1, 2}) {
        const auto oracle = integrate_complex(
            [&](double t) {
              return std::pow(-I * t, j) * std::exp(-I * s * t) * orbit(sc, t)[0];
            },
            0.0, 60.0);
        CHECK(std::abs(boundary_function(sc, s, j)[0] - oracle.value) <= 1e-9);
      }
    }
  }

  TEST_CASE("boundary function derivatives are bounded by j! |s| m(|s|)^{j+1}") {
    const auto sc = polynomial_cluster_zero(2.0, 1000, OrbitKind::AR_omega);
    const auto m = resolvent_envelope_decay(sc.op, log_grid(1e-3, 1.0));
    for (int j : {0, 1, 2}) {
      double worst = 0.0;
      for (double s : log_grid(1e-3, 1.0)) {
        const double lhs = boundary_function(sc, s, j).cwiseAbs().maxCoeff();
        const double rhs = std::tgamma(j + 1.0) * s * std::pow(m(s), j + 1);
        worst = std::max(worst, lhs / rhs);
      }
      CHECK(std::isfinite(worst));
      CHECK(worst <= 10.0);
    }
  }

  TEST_CASE("scenario parameters are validated") {
    CHECK_THROWS_AS(single_mode({0.0, 1.0}), SpectrumError);
    CHECK_THROWS_AS(single_mode({0.5, 0.0}), SpectrumError);
    CHECK_THROWS_AS(polynomial_cluster_infinity(0.0, 10), std::invalid_argument);
    CHECK_THROWS_AS(polynomial_cluster_zero(1.0, 10), std::invalid_argument);
    CHECK_THROWS_AS(polynomial_cluster_zero(2.0, 0), std::invalid_argument);
    CHECK_THROWS_AS(polynomial_cluster_zero(2.0, 10, OrbitKind::AR_omega, -1.0), std::invalid_argument);
    CHECK_THROWS(with_vector(single_mode({-1.0, 0.0}), Eigen::VectorXcd::Ones(3)));
    CHECK(orbit_from_string("AR_omega_sq") == OrbitKind::AR_omega_sq);
    CHECK_FALSE(orbit_from_string("Bogus").has_value());
  }

  TEST_CASE("property: semigroup law") {
    gen::reseed(42);
    const auto sc = combined_clusters(1.0, 500, 2.0, 300, OrbitKind::vector);
    const auto& lambda = sc.op.eigenvalues();
    for (int i = 0; i < 50; ++i) {
      const double t = gen::uniform(0.0, 50.0), s = gen::uniform(0.0, 50.0);
      const Eigen::VectorXcd lhs = orbit(sc, t + s);
      const Eigen::VectorXcd rhs = orbit(sc, t).cwiseProduct((lambda * s).array().exp().matrix());
      // Rounding in the phase Im(lambda)(t+s) dominates the error.
      const double phase = lambda.imag().cwiseAbs().maxCoeff() * (t + s);
      CHECK((lhs - rhs).cwiseAbs().maxCoeff() <= 8.0 * phase * std::numeric_limits<double>::epsilon());
    }
  }

  TEST_CASE("property: orbits are contractive") {
    gen::reseed(43);
    for (auto kind : {OrbitKind::Ainv, OrbitKind::AR_omega, OrbitKind::AR_omega_sq, OrbitKind::vector}) {
      for (const Scenario& sc : {polynomial_cluster_infinity(gen::uniform(0.5, 2), 300, kind),
                                 polynomial_cluster_zero(gen::uniform(1.2, 3), 300, kind),
                                 single_mode({-gen::uniform(0.1, 3), gen::uniform(-3, 3)}, kind)}) {
        const double n0 = orbit_norm(sc, 0.0);
        for (int i = 0; i < 20; ++i) CHECK(orbit_norm(sc, gen::log_uniform(1e-3, 1e4)) <= n0 * (1 + 1e-15));
      }
    }
  }

  TEST_CASE("property: resolvent norm equals the reciprocal distance to the spectrum") {
    gen::reseed(44);
    for (const Scenario& sc : {polynomial_cluster_infinity(1.0, 2000), polynomial_cluster_zero(2.0, 2000),
                               combined_clusters(0.7, 500, 1.5, 500)}) {
      const auto& lambda = sc.op.eigenvalues();
      for (int i = 0; i < 300; ++i) {
        const double s = (i % 2 ? 1.0 : -1.0) * gen::log_uniform(1e-4, 3000.0);
        const double d = brute_distance(lambda, s);
        CHECK(sc.op.distance_to_spectrum(s) == doctest::Approx(d).epsilon(1e-14));
        CHECK(sc.op.resolvent_norm(s) == doctest::Approx(1.0 / d).epsilon(1e-14));
      }
    }
  }

  TEST_CASE("property: envelopes dominate the resolvent and respect the clamp") {
    gen::reseed(45);
    const auto sc = combined_clusters(1.0, 400, 2.0, 300);
    const auto grid_R = log_grid(1e-2, 400.0);
    const auto grid_r = log_grid(1e-4, 1.0);
    const auto M = resolvent_envelope_growth(sc.op, grid_R);
    const auto m = resolvent_envelope_decay(sc.op, grid_r);
    for (double R : grid_R) CHECK(M(R) >= std::max(sc.op.resolvent_norm(R), sc.op.resolvent_norm(-R)) * (1 - 1e-12));
    for (Eigen::Index n = 0; n < sc.op.size(); ++n) {
      const double s = std::abs(sc.op.eigenvalues()[n].imag());
      const double peak = std::max(sc.op.resolvent_norm(s), sc.op.resolvent_norm(-s));
      if (s <= 400.0) CHECK(M(s) >= peak * (1 - 1e-12));
      if (s >= 1e-4 && s <= 1.0) CHECK(m(s) >= peak * (1 - 1e-12));
    }
    for (double r : grid_r) CHECK(m(r) >= std::max(sc.op.resolvent_norm(r), sc.op.resolvent_norm(-r)) * (1 - 1e-12));
    for (int i = 0; i < 500; ++i) {
      const double r = gen::log_uniform(1e-4, 1.0);
      CHECK(m(r) >= 1.0 / r);
    }
  }

  TEST_CASE("truncation stability under doubling N") {
    const auto a = polynomial_cluster_infinity(1.0, 10000), a2 = polynomial_cluster_infinity(1.0, 20000);
    for (double t : log_grid(10.0, 1000.0)) CHECK(std::abs(orbit_norm(a, t) / orbit_norm(a2, t) - 1.0) < 0.01);
    const auto z = polynomial_cluster_zero(2.0, 1000, OrbitKind::AR_omega),
               z2 = polynomial_cluster_zero(2.0, 2000, OrbitKind::AR_omega);
    for (double t : log_grid(10.0, 1e4)) CHECK(std::abs(orbit_norm(z, t) / orbit_norm(z2, t) - 1.0) < 0.01);
  }
}
