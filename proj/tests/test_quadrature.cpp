#include <cmath>
#include <complex>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "generators.hpp"
#include "ingham/kernels.hpp"
#include "ingham/quadrature.hpp"

using namespace ingham;

namespace {

constexpr double pi = std::numbers::pi;

double sine_integral(double x) {
  double sum = 0.0, term = x;
  for (int n = 0; n < 30; ++n) {
    sum += term / (2 * n + 1);
    term *= -x * x / ((2 * n + 2) * (2 * n + 3));
  }
  return sum;
}

struct ClosedForm {
  RealFunction f;
  double a, b, exact;
};

std::vector<ClosedForm> closed_forms() {
  return {
      {[](double) { return 1.0; }, 0, 1, 1.0},
      {[](double x) { return x * x; }, 0, 2, 8.0 / 3.0},
      {[](double x) { return std::pow(x, 7); }, -1, 2, (256.0 - 1.0) / 8.0},
      {[](double x) { return std::cos(x); }, 0, pi / 2, 1.0},
      {[](double x) { return std::sin(x); }, 0, pi, 2.0},
      {[](double x) { return std::exp(x); }, 0, 3, std::exp(3.0) - 1.0},
      {[](double x) { return 1.0 / (1.0 + x * x); }, 0, 1, pi / 4},
      {[](double x) { return std::sqrt(x); }, 0, 1, 2.0 / 3.0},
      {[](double x) { return std::log(x); }, 0, 1, -1.0},
      {[](double x) { return 1.0 / std::sqrt(x); }, 0, 1, 2.0},
      {[](double x) { return std::exp(-x * x); }, -5, 5, std::sqrt(pi) * std::erf(5.0)},
      {[](double x) { return std::cos(10 * x); }, 0, pi / 20, 0.1},
      {[](double x) { return x * std::sin(x); }, 0, pi, pi},
      {[](double x) { return 1.0 / (1.0 + 25 * x * x); }, -1, 1, 0.4 * std::atan(5.0)},
      {[](double x) { return std::abs(x - 1.0 / 3.0); }, 0, 1, 5.0 / 18.0},
      {[](double x) { return std::exp(x) * std::cos(x); }, 0, pi / 2, (std::exp(pi / 2) - 1.0) / 2.0},
      {[](double x) { return 1.0 / x; }, 1, std::exp(2.0), 2.0},
      {[](double x) { return std::tanh(x); }, 0, 2, std::log(std::cosh(2.0))},
      {[](double x) { return std::cos(x) * std::cos(x); }, 0, pi, pi / 2},
      {[](double x) { return x * std::exp(-x); }, 0, 10, 1.0 - 11.0 * std::exp(-10.0)},
  };
}

}  // namespace

TEST_SUITE("quadrature") {
  TEST_CASE("finite intervals") {
    CHECK(integrate([](double) { return 1.0; }, 0.0, 1.0).value == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::abs(integrate([](double x) { return std::cos(x); }, 0.0, pi / 2).value - 1.0) <= 1e-12);
    CHECK(integrate([](double x) { return x; }, 2.0, 2.0).value == 0.0);
  }

  TEST_CASE("tent kernel on a window misses only its tail mass") {
    QuadratureSpec spec;
    spec.max_subdivisions = 20000;
    const auto r = integrate([](double t) { return tent_time(t); }, -50.0, 50.0, spec);
    CHECK(r.converged);
    // Leibniz bound on each cosine term of the tail beyond 50, on both sides.
    const double tail_bound = 2.0 * (4.0 / 0.5 * 4.0 / 2500.0 + 4.0 * 4.0 / 2500.0);
    CHECK(std::abs(r.value - 2.0 * pi) <= tail_bound);
    CHECK(r.value == doctest::Approx(2.0 * pi + 2.0 * tent_primitive_plus(50.0)).epsilon(1e-9));
  }

  TEST_CASE("breaks split the interval") {
    const double kinks[] = {0.3, 0.7, 5.0};
    const auto r = integrate_with_breaks([](double x) { return std::abs(x - 0.3) + std::abs(x - 0.7); }, 0.0, 1.0, kinks);
    CHECK(r.value == doctest::Approx(0.5 * 0.09 + 0.5 * 0.49 + 0.5 * 0.49 + 0.5 * 0.09).epsilon(1e-13));
  }

  TEST_CASE("complex integrands") {
    const auto r = integrate_complex([](double x) { return std::exp(std::complex<double>(0.0, x)); }, 0.0, 1.0);
    const std::complex<double> exact = (std::exp(std::complex<double>(0.0, 1.0)) - 1.0) / std::complex<double>(0.0, 1.0);
    CHECK(std::abs(r.value - exact) <= 1e-12);
  }

  TEST_CASE("oscillatory tails") {
    CHECK(integrate_oscillatory([](double s) { return std::exp(-s); }, 1.0, 0.0, 0.0).value ==
          doctest::Approx(0.5).epsilon(1e-10));
    const double oracle = std::cos(1.0) - (pi / 2.0 - sine_integral(1.0));
    CHECK(std::abs(integrate_oscillatory([](double s) { return 1.0 / (s * s); }, 1.0, 0.0, 1.0).value - oracle) <= 1e-8);
    for (double alpha : {10.0, 100.0, 1000.0}) {
      const double v = integrate_oscillatory([](double s) { return 1.0 / (s * s); }, alpha, 0.0, 1.0).value;
      CHECK(std::abs(v) <= 4.0 / alpha);
    }
  }

  TEST_CASE("semi-infinite integrals") {
    CHECK(integrate_semi_infinite([](double s) { return std::exp(-s); }, 0.0, ExponentialDecay{1.0}).value ==
          doctest::Approx(1.0).epsilon(1e-10));
    CHECK(integrate_semi_infinite([](double s) { return 1.0 / (s * s); }, 1.0, PolynomialDecay{2.0}).value ==
          doctest::Approx(1.0).epsilon(1e-10));
    const RealFunction env = [](double s) { return 4.0 / (s * s); };
    OscillatoryDecay hint{{{env, 0.5, 0.0, 1.0}, {env, 1.0, 0.0, -1.0}}};
    const auto r = integrate_semi_infinite([](double t) { return tent_time(t); }, 1.0, hint);
    CHECK(r.value == doctest::Approx(-tent_primitive_plus(1.0)).epsilon(1e-8));
    CHECK_THROWS(integrate_semi_infinite([](double s) { return 1.0 / s; }, 1.0, PolynomialDecay{1.0}));
  }

  TEST_CASE("exhausted budget is flagged, not thrown") {
    QuadratureSpec spec;
    spec.max_subdivisions = 1;
    spec.abs_tol = 1e-14;
    spec.rel_tol = 1e-14;
    const auto r = integrate([](double x) { return std::sin(1.0 / (x + 1e-3)); }, 0.0, 1.0, spec);
    CHECK_FALSE(r.converged);
    CHECK(std::isfinite(r.value));
  }

  TEST_CASE("QuadratureSpec validation") {
    QuadratureSpec spec;
    CHECK_NOTHROW(spec.validate());
    spec.abs_tol = 0.0;
    CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
    spec = QuadratureSpec{};
    spec.max_subdivisions = 0;
    CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
    CHECK_THROWS_AS(integrate([](double x) { return x; }, 0.0, 1.0, spec), std::invalid_argument);
  }

  TEST_CASE("INGHAM_RATES_TOL sets default tolerances") {
    ::setenv("INGHAM_RATES_TOL", "1e-7", 1);
    const auto spec = default_quadrature_spec();
    CHECK(spec.abs_tol == 1e-7);
    CHECK(spec.rel_tol == 1e-7);
    ::setenv("INGHAM_RATES_TOL", "garbage", 1);
    CHECK(default_quadrature_spec().abs_tol == QuadratureSpec{}.abs_tol);
    ::unsetenv("INGHAM_RATES_TOL");
    CHECK(default_quadrature_spec().abs_tol == QuadratureSpec{}.abs_tol);
  }

  TEST_CASE("error estimates are conservative on closed-form integrals") {
    QuadratureSpec spec;
    spec.abs_tol = 1e-6;
    spec.rel_tol = 1e-6;
    int honest = 0, total = 0;
    for (const auto& c : closed_forms()) {
      const auto r = integrate(c.f, c.a, c.b, spec);
      const double err = std::abs(r.value - c.exact);
      ++total;
      if (err <= r.error_estimate) ++honest;
      CHECK_MESSAGE(err <= 10.0 * r.error_estimate + 1e-15, "integral #", total, " err=", err, " est=", r.error_estimate);
      CHECK(err <= 1e-6 * std::max(1.0, std::abs(c.exact)) * 10.0);
    }
    CHECK(total == 20);
    CHECK(honest >= 19);
  }

  TEST_CASE("property: additivity") {
    gen::reseed(31);
    for (int i = 0; i < 50; ++i) {
      const double p = gen::uniform(-3, 3), q = gen::uniform(0.1, 5), w = gen::uniform(0.5, 8);
      const RealFunction f = [&](double x) { return std::exp(p * x / 3.0) * std::cos(w * x) + q * x * x; };
      auto xs = gen::sorted_grid(-2.0, 2.0, 3);
      if (xs.size() < 3) continue;
      const double ab = integrate(f, xs[0], xs[1]).value, bc = integrate(f, xs[1], xs[2]).value;
      const double ac = integrate(f, xs[0], xs[2]).value;
      CHECK(std::abs(ab + bc - ac) <= 3e-9 * std::max(1.0, std::abs(ac)));
    }
  }

  TEST_CASE("property: oscillatory tails agree with windowed quadrature") {
    gen::reseed(32);
    const std::vector<RealFunction> envelopes{[](double s) { return 1.0 / (s * s); },
                                              [](double s) { return std::pow(s, -1.5); },
                                              [](double s) { return std::exp(-s); }};
    QuadratureSpec fine;
    fine.max_subdivisions = 50000;
    for (int i = 0; i < 30; ++i) {
      const auto& env = envelopes[i % 3];
      const double alpha = gen::log_uniform(0.3, 20.0), phase = gen::uniform(0.0, pi);
      const double a = gen::uniform(0.5, 5.0), b = a + gen::uniform(1.0, 40.0);
      const double tails = integrate_oscillatory(env, alpha, phase, a).value - integrate_oscillatory(env, alpha, phase, b).value;
      const double window = integrate([&](double s) { return env(s) * std::cos(alpha * s + phase); }, a, b, fine).value;
      CHECK(std::abs(tails - window) <= 1e-8);
    }
  }
}
