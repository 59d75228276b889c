#include <cmath>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "doctest.h"
#include "generators.hpp"
#include "ingham/rate_functions.hpp"
#include "ingham/verify.hpp"

using namespace ingham;

namespace {

constexpr double e = std::numbers::e;

// Plain bisection on a monotone function; independent of invert_monotone.
double bisect(const std::function<double(double)>& f, double y, double lo, double hi, bool increasing) {
  for (int i = 0; i < 400; ++i) {
    const double mid = lo + 0.5 * (hi - lo);
    if ((f(mid) < y) == increasing) lo = mid;
    else hi = mid;
  }
  return 0.5 * (lo + hi);
}

MonotoneFunction random_growth() {
  switch (gen::integer(0, 3)) {
    case 0: return MonotoneFunction::power(DomainKind::growth, gen::uniform(0.2, 3.0));
    case 1: return MonotoneFunction::exponential(DomainKind::growth, gen::uniform(0.2, 1.5));
    case 2: return MonotoneFunction::constant(DomainKind::growth, gen::uniform(1.0, 5.0));
    default: {
      auto t = gen::monotone_table(0.0, 50.0, 12, true);
      return MonotoneFunction::tabulated(DomainKind::growth, t.knots, t.values);
    }
  }
}

MonotoneFunction random_decay() {
  switch (gen::integer(0, 3)) {
    case 0: return MonotoneFunction::power(DomainKind::decay, gen::uniform(0.2, 3.0));
    case 1: return MonotoneFunction::exponential(DomainKind::decay, gen::uniform(0.2, 1.0));
    case 2: return MonotoneFunction::constant(DomainKind::decay, gen::uniform(1.0, 5.0));
    default: {
      auto t = gen::monotone_table(0.01, 1.0, 12, false);
      return MonotoneFunction::tabulated(DomainKind::decay, t.knots, t.values);
    }
  }
}

}  // namespace

TEST_SUITE("rate_functions") {
  TEST_CASE("composed growth rates by direct substitution") {
    const auto lin = MonotoneFunction::power(DomainKind::growth, 1.0);
    const auto one = MonotoneFunction::constant(DomainKind::growth);
    CHECK(growth_rate_k(lin, 2, 3.0) == doctest::Approx(32.0).epsilon(1e-14));
    CHECK(growth_rate_k(one, 2, 99.0) == doctest::Approx(100.0).epsilon(1e-14));
    CHECK(growth_rate_log(lin, e - 1.0) == doctest::Approx(2.0 * e).epsilon(1e-14));
    CHECK(growth_rate_log(one, 0.0) == 0.0);
    CHECK(growth_rate_log(one, 7.0) == doctest::Approx(std::log(8.0)).epsilon(1e-14));
    const auto ex = MonotoneFunction::exponential(DomainKind::growth, 1.0);
    CHECK(growth_rate_log(ex, 1.0) == doctest::Approx(e * (std::log(2.0) + 1.0)).epsilon(1e-14));
    CHECK(growth_rate_log(ex, 1.0) == doctest::Approx(4.602452).epsilon(1e-6));
  }

  TEST_CASE("power-law M_k has exponent alpha + (alpha+2)/k") {
    for (double alpha : {0.5, 1.0, 2.0}) {
      for (int k : {1, 2, 3}) {
        const auto M = MonotoneFunction::power(DomainKind::growth, alpha);
        const double R1 = 10.0, R2 = 1000.0;
        const double exponent = std::log(growth_rate_k(M, k, R2) / growth_rate_k(M, k, R1)) /
                                std::log((1.0 + R2) / (1.0 + R1));
        CHECK(exponent == doctest::Approx(alpha + (alpha + 2.0) / k).epsilon(1e-12));
      }
    }
    const auto lin = MonotoneFunction::power(DomainKind::growth, 1.0);
    CHECK(std::log(growth_rate_k(lin, 2, 1e4) / growth_rate_k(lin, 2, 1e2)) / std::log((1 + 1e4) / (1 + 1e2)) ==
          doctest::Approx(2.5).epsilon(1e-12));
  }

  TEST_CASE("composed decay rates by direct substitution") {
    const auto inv = MonotoneFunction::power(DomainKind::decay, 1.0);
    const auto one = MonotoneFunction::constant(DomainKind::decay);
    CHECK(decay_rate_k(inv, 2, 0.5) == doctest::Approx(4.0).epsilon(1e-14));
    for (double r : {0.01, 0.3, 1.0}) CHECK(decay_rate_k(one, 1, r) == doctest::Approx(1.0 / r).epsilon(1e-14));
    CHECK(decay_rate_log(one, 1.0) == doctest::Approx(std::log(2.0)).epsilon(1e-14));
    CHECK(decay_rate_log(inv, 1.0) == doctest::Approx(std::log(2.0)).epsilon(1e-14));
    CHECK(decay_rate_log(inv, 0.1) == doctest::Approx(10.0 * std::log(101.0)).epsilon(1e-14));
    CHECK(decay_rate_log(inv, 0.1) == doctest::Approx(46.1512).epsilon(1e-6));
    // m(r) = r^-1, k = 2: m_k(r) = r^-2.
    CHECK(std::log(decay_rate_k(inv, 2, 1e-3) / decay_rate_k(inv, 2, 1e-1)) / std::log(1e-2) ==
          doctest::Approx(-2.0).epsilon(1e-12));
  }

  TEST_CASE("inversion of composed rates") {
    const auto one = MonotoneFunction::constant(DomainKind::growth);
    const auto lin = MonotoneFunction::power(DomainKind::growth, 1.0);
    const auto inv = MonotoneFunction::power(DomainKind::decay, 1.0);
    CHECK(invert_monotone(growth_rate_log_evaluator(one), 1.0) == doctest::Approx(e - 1.0).epsilon(1e-9));
    CHECK(invert_monotone(growth_rate_k_evaluator(lin, 2), 32.0) == doctest::Approx(3.0).epsilon(1e-9));
    CHECK(invert_monotone(decay_rate_log_evaluator(inv), 46.1512) == doctest::Approx(0.1).epsilon(1e-5));
    CHECK(invert_monotone(decay_rate_log_evaluator(inv), 10.0 * std::log(101.0)) ==
          doctest::Approx(0.1).epsilon(1e-9));
  }

  TEST_CASE("inversion outside the range is reported") {
    const auto one = MonotoneFunction::constant(DomainKind::growth, 2.0);
    CHECK_THROWS_AS(invert_monotone(evaluator(one), 5.0), InversionRangeError);
    const auto inv = MonotoneFunction::power(DomainKind::decay, 1.0);
    CHECK_THROWS_AS(invert_monotone(decay_rate_log_evaluator(inv), 0.1), InversionRangeError);
  }

  TEST_CASE("bound values against closed-form inverses") {
    const auto one = MonotoneFunction::constant(DomainKind::growth);
    CHECK(bound(Variant::infinity_Ck, one, std::nullopt, 1.0, 2, 100.0) == doctest::Approx(1.0 / 99.0).epsilon(1e-9));

    for (double alpha : {1.0, 2.0}) {
      for (int k : {1, 2, 3}) {
        const auto M = MonotoneFunction::power(DomainKind::growth, alpha);
        const double p = alpha + (alpha + 2.0) / k;
        for (double t : {1e2, 1e4, 1e6}) {
          const double c = 1.0;
          const double expected = 1.0 / (std::pow(c * t, 1.0 / p) - 1.0);
          CHECK(bound(Variant::infinity_Ck, M, std::nullopt, c, k, t) == doctest::Approx(expected).epsilon(1e-8));
        }
        const auto m = MonotoneFunction::power(DomainKind::decay, alpha);
        const double q = (alpha * (k + 1) + 1.0) / k;
        for (double t : {1e2, 1e4, 1e6}) {
          const double expected = std::pow(t, -1.0 / q) + 1.0 / t;
          CHECK(bound(Variant::zero_Ck, std::nullopt, m, 1.0, k, t) == doctest::Approx(expected).epsilon(1e-8));
        }
      }
    }

    // M(R) = 1 + R: M_log(R) = 2 (1+R) log(1+R).
    const auto lin = MonotoneFunction::power(DomainKind::growth, 1.0);
    for (double t : {1e2, 1e4, 1e6}) {
      const double y = 0.45 * t;
      const double R = bisect([](double x) { return 2.0 * (1.0 + x) * std::log1p(x); }, y, 0.0, y, true);
      CHECK(bound(Variant::infinity_smooth, lin, std::nullopt, 0.45, 1, t) == doctest::Approx(1.0 / R).epsilon(1e-8));
    }
    // m(r) = 1/r: m_log(r) = log(1 + r^-2)/r.
    const auto inv = MonotoneFunction::power(DomainKind::decay, 1.0);
    for (double t : {1e2, 1e4}) {
      const double y = 0.9 * t;
      const double r = bisect([](double x) { return std::log1p(1.0 / (x * x)) / x; }, y, 1e-12, 1.0, false);
      CHECK(bound(Variant::zero_smooth, std::nullopt, inv, 0.9, 1, t) == doctest::Approx(r + 1.0 / t).epsilon(1e-8));
    }
  }

  TEST_CASE("closed_form_bound agrees with the numeric bound") {
    const auto lin = MonotoneFunction::power(DomainKind::growth, 1.0);
    const auto sq = MonotoneFunction::power(DomainKind::growth, 2.0);
    const auto inv = MonotoneFunction::power(DomainKind::decay, 1.0);
    for (double t : {50.0, 1e3, 1e5}) {
      for (const auto& M : {lin, sq}) {
        const auto cf = closed_form_bound(Variant::infinity_smooth, M, std::nullopt, 0.45, 1, t);
        REQUIRE(cf.has_value());
        CHECK(*cf == doctest::Approx(bound(Variant::infinity_smooth, M, std::nullopt, 0.45, 1, t)).epsilon(1e-8));
      }
      const auto cz = closed_form_bound(Variant::zero_Ck, std::nullopt, inv, 1.0, 2, t);
      REQUIRE(cz.has_value());
      CHECK(*cz == doctest::Approx(bound(Variant::zero_Ck, std::nullopt, inv, 1.0, 2, t)).epsilon(1e-8));
    }
    CHECK_FALSE(closed_form_bound(Variant::zero_smooth, std::nullopt, inv, 0.9, 1, 100.0).has_value());
  }

  TEST_CASE("smooth bounds carry the logarithmic correction") {
    for (double alpha : {1.0, 2.0}) {
      const auto M = MonotoneFunction::power(DomainKind::growth, alpha);
      const double r1 = bound(Variant::infinity_smooth, M, std::nullopt, 0.45, 1, 1e8) / std::pow(std::log(1e8) / 1e8, 1.0 / alpha);
      const double r2 = bound(Variant::infinity_smooth, M, std::nullopt, 0.45, 1, 1e12) / std::pow(std::log(1e12) / 1e12, 1.0 / alpha);
      CHECK(r2 / r1 == doctest::Approx(1.0).epsilon(0.1));
    }
  }

  TEST_CASE("asymptotic exponents of the Ck bounds") {
    // Far enough out that the -1 in (ct)^{1/p} - 1 no longer bends the fit.
    for (double alpha : {1.0, 2.0}) {
      for (int k : {1, 2, 3}) {
        const auto M = MonotoneFunction::power(DomainKind::growth, alpha);
        const auto m = MonotoneFunction::power(DomainKind::decay, alpha);
        std::vector<double> ts = log_grid(1e12, 1e15), bi, bz;
        for (double t : ts) {
          bi.push_back(bound(Variant::infinity_Ck, M, std::nullopt, 1.0, k, t));
          bz.push_back(bound(Variant::zero_Ck, std::nullopt, m, 1.0, k, t));
        }
        CHECK(std::abs(fit_loglog(ts, bi).slope + k / (alpha * (k + 1) + 2)) <= 0.02);
        CHECK(std::abs(fit_loglog(ts, bz).slope + k / (alpha * (k + 1) + 1)) <= 0.02);
      }
    }
  }

  TEST_CASE("admissible c is enforced with the range named") {
    const auto lin = MonotoneFunction::power(DomainKind::growth, 1.0);
    const auto inv = MonotoneFunction::power(DomainKind::decay, 1.0);
    try {
      RateBound b(Variant::infinity_smooth, lin, std::nullopt, 0.7);
      FAIL("expected AdmissibilityError");
    } catch (const AdmissibilityError& err) {
      CHECK(std::string(err.what()).find("c∈(0,1/2)") != std::string::npos);
    }
    CHECK_THROWS_AS(RateBound(Variant::zero_smooth, std::nullopt, inv, 1.0), AdmissibilityError);
    CHECK_THROWS_AS(RateBound(Variant::zero_infinity_smooth, lin, inv, 0.5), AdmissibilityError);
    CHECK_THROWS_AS(RateBound(Variant::infinity_Ck, lin, std::nullopt, -1.0), AdmissibilityError);
    CHECK_NOTHROW(RateBound(Variant::infinity_Ck, lin, std::nullopt, 50.0));
    CHECK_NOTHROW(RateBound(Variant::zero_smooth, std::nullopt, inv, 0.9));
    CHECK_THROWS_AS(RateBound(Variant::infinity_smooth, std::nullopt, std::nullopt, 0.45), AdmissibilityError);
    CHECK_THROWS_AS(RateBound(Variant::zero_Ck, std::nullopt, std::nullopt, 1.0), AdmissibilityError);
  }

  TEST_CASE("default c sits inside each admissible range") {
    for (auto v : {Variant::infinity_Ck, Variant::infinity_smooth, Variant::zero_Ck, Variant::zero_smooth,
                   Variant::zero_infinity_Ck, Variant::zero_infinity_smooth}) {
      CHECK(default_c(v) > 0.0);
      CHECK(default_c(v) < max_admissible_c(v));
      CHECK(variant_from_string(to_string(v)) == v);
    }
    CHECK(default_c(Variant::infinity_smooth) == 0.45);
    CHECK(default_c(Variant::zero_smooth) == 0.9);
    CHECK(default_c(Variant::infinity_Ck) == 1.0);
  }

  TEST_CASE("t below t_min is rejected") {
    const auto one = MonotoneFunction::constant(DomainKind::growth, 2.0);
    RateBound b(Variant::infinity_Ck, one, std::nullopt, 1.0, 1);
    CHECK(b.t_min() > 0.0);
    CHECK_THROWS_AS(b(0.5 * b.t_min()), DomainError);
    CHECK(std::isfinite(b(2.0 * b.t_min())));
  }

  TEST_CASE("growth inverse beyond double range contributes zero") {
    // M = 2: M_log(R) = 2 (log(1+R) + log 2) reaches 4.5e5 only at R ~ e^{225000}.
    const auto two = MonotoneFunction::constant(DomainKind::growth, 2.0);
    CHECK(bound(Variant::infinity_smooth, two, std::nullopt, 0.45, 1, 1e6) == 0.0);
    CHECK(bound(Variant::infinity_smooth, two, std::nullopt, 0.45, 1, 100.0) > 0.0);
  }

  TEST_CASE("tabulated functions reject bad tables") {
    CHECK_THROWS_AS(MonotoneFunction::tabulated(DomainKind::growth, {0, 2, 1}, {1, 2, 3}), DomainError);
    CHECK_THROWS_AS(MonotoneFunction::tabulated(DomainKind::growth, {0, 1, 2}, {1, 3, 2}), DomainError);
    CHECK_THROWS_AS(MonotoneFunction::tabulated(DomainKind::growth, {0, 1, 2}, {0.5, 1, 2}), DomainError);
    CHECK_THROWS_AS(MonotoneFunction::tabulated(DomainKind::decay, {0.1, 0.5, 1.0}, {1, 2, 3}), DomainError);
    CHECK_THROWS_AS(MonotoneFunction::tabulated(DomainKind::decay, {0.1, 0.5, 2.0}, {3, 2, 1}), DomainError);
    CHECK_THROWS_AS(MonotoneFunction::tabulated(DomainKind::growth, {0, 1}, {1, NAN}), DomainError);
    const auto ok = MonotoneFunction::tabulated(DomainKind::growth, {0, 1, 3}, {1, 2, 2});
    CHECK(ok(0.5) == doctest::Approx(1.5));
    CHECK(ok(10.0) == 2.0);
  }

  TEST_CASE("closed-form families reject domain violations") {
    const auto g = MonotoneFunction::power(DomainKind::growth, 1.0);
    const auto d = MonotoneFunction::power(DomainKind::decay, 1.0);
    CHECK_THROWS_AS(g(-1.0), DomainError);
    CHECK_THROWS_AS(d(0.0), DomainError);
    CHECK_THROWS_AS(d(1.5), DomainError);
  }

  TEST_CASE("raw_bound_smooth with constant M") {
    // Minimand (1/R)((1+R)^2 e^{-80} + 1) ~ R e^{-80} + 1/R: interior minimum at R = e^{40}, value 2 e^{-40}.
    const auto one = MonotoneFunction::constant(DomainKind::growth);
    const auto rb = raw_bound_smooth(one, 0.4, 100.0);
    CHECK(rb.argmin == doctest::Approx(std::exp(40.0)).epsilon(1e-3));
    CHECK(rb.value == doctest::Approx(2.0 * std::exp(-40.0)).epsilon(1e-6));
  }

  TEST_CASE("raw_bound_smooth minimiser against a brute-force scan") {
    const auto lin = MonotoneFunction::power(DomainKind::growth, 1.0);
    const double c = 0.4, t = 1e3;
    const auto minimand = [&](double R) {
      const double M = 1.0 + R;
      return ((1.0 + R) * (1.0 + R) * M * M * std::exp(-2.0 * c * t / M) + 1.0) / R;
    };
    double best = INFINITY, arg = 0.0;
    for (double lr = 0.0; lr <= std::log(1e7); lr += 1e-4) {
      const double v = minimand(std::exp(lr));
      if (v < best) best = v, arg = std::exp(lr);
    }
    const auto rb = raw_bound_smooth(lin, c, t);
    CHECK(rb.value == doctest::Approx(best).epsilon(1e-6));
    CHECK(rb.argmin == doctest::Approx(arg).epsilon(1e-3));
    const double Rlog = bisect([](double x) { return 2.0 * (1.0 + x) * std::log1p(x); }, c * t, 0.0, c * t, true);
    CHECK(rb.argmin / Rlog <= 3.0);
    CHECK(rb.argmin / Rlog >= 1.0 / 3.0);
  }

  TEST_CASE("raw_bound_Ck closed forms") {
    const auto one = MonotoneFunction::constant(DomainKind::growth);
    for (int k : {1, 2, 3}) {
      for (double t : {1e2, 1e4}) {
        const auto rb = raw_bound_Ck(one, k, 1.0, t);
        CHECK(rb.argmin == doctest::Approx(std::pow(t, k / 2.0)).epsilon(1e-5));
        CHECK(rb.value == doctest::Approx(2.0 * std::pow(t, -k / 2.0)).epsilon(1e-6));
      }
    }
    const auto lin = MonotoneFunction::power(DomainKind::growth, 1.0);
    const auto rb = raw_bound_Ck(lin, 2, 1.0, 1e4);
    const double Rk = std::pow(1e4, 1.0 / 2.5) - 1.0;  // M_2(R) = (1+R)^{5/2}
    CHECK(rb.argmin / Rk <= 3.0);
    CHECK(rb.argmin / Rk >= 1.0 / 3.0);
    double prev = INFINITY;
    for (int k : {1, 2, 3, 4}) {
      const double v = raw_bound_Ck(lin, k, 1.0, 1e6).value;
      CHECK(v < prev);
      prev = v;
    }
  }

  TEST_CASE("raw bound and closed-form bound stay within a fixed factor") {
    for (double alpha : {1.0, 2.0}) {
      const auto M = MonotoneFunction::power(DomainKind::growth, alpha);
      for (double t : log_grid(1e3, 1e5, 5)) {
        const double ratio = raw_bound_smooth(M, 0.45, t).value / bound(Variant::infinity_smooth, M, std::nullopt, 0.45, 1, t);
        CHECK(ratio >= 0.1);
        CHECK(ratio <= 10.0);
        for (int k : {1, 2}) {
          const double rk = raw_bound_Ck(M, k, 1.0, t).value / bound(Variant::infinity_Ck, M, std::nullopt, 1.0, k, t);
          CHECK(rk >= 0.1);
          CHECK(rk <= 10.0);
        }
      }
    }
  }

  TEST_CASE("property: composed rates are monotone on random grids") {
    gen::reseed(11);
    for (int trial = 0; trial < 20; ++trial) {
      const auto M = random_growth();
      const auto m = random_decay();
      const int k = gen::integer(1, 4);
      const auto Rs = gen::sorted_grid(0.0, 1e3, 1000);
      const auto rs = gen::sorted_grid(1e-3, 1.0, 1000, true);
      double prev_k = -INFINITY, prev_log = -INFINITY;
      bool ok = true;
      for (double R : Rs) {
        const double a = growth_rate_k(M, k, R), b = growth_rate_log(M, R);
        ok = ok && a >= prev_k && b >= prev_log && M(R) >= 1.0;
        prev_k = a, prev_log = b;
      }
      CHECK_MESSAGE(ok, M.describe());
      prev_k = INFINITY, prev_log = INFINITY;
      ok = true;
      for (double r : rs) {
        const double a = decay_rate_k(m, k, r), b = decay_rate_log(m, r);
        ok = ok && a <= prev_k && b <= prev_log && m(r) >= 1.0;
        prev_k = a, prev_log = b;
      }
      CHECK_MESSAGE(ok, m.describe());
    }
  }

  TEST_CASE("property: inversion round-trips") {
    gen::reseed(12);
    for (int family = 0; family < 4; ++family) {
      const MonotoneFunction M = family == 0   ? MonotoneFunction::power(DomainKind::growth, 1.5)
                                 : family == 1 ? MonotoneFunction::exponential(DomainKind::growth, 0.5)
                                 : family == 2 ? MonotoneFunction::constant(DomainKind::growth, 2.0)
                                               : MonotoneFunction::tabulated(DomainKind::growth, {0, 10, 100}, {1, 4, 9});
      const MonotoneFunction m = family == 0   ? MonotoneFunction::power(DomainKind::decay, 1.5)
                                 : family == 1 ? MonotoneFunction::exponential(DomainKind::decay, 0.5)
                                 : family == 2 ? MonotoneFunction::constant(DomainKind::decay, 2.0)
                                               : MonotoneFunction::tabulated(DomainKind::decay, {0.01, 0.1, 1}, {9, 4, 1});
      const std::vector<MonotoneEvaluator> growth_evals{growth_rate_k_evaluator(M, 2), growth_rate_log_evaluator(M)};
      const std::vector<MonotoneEvaluator> decay_evals{decay_rate_k_evaluator(m, 2), decay_rate_log_evaluator(m)};
      for (int i = 0; i < 100; ++i) {
        for (const auto& f : growth_evals) {
          const double x = gen::log_uniform(1e-2, 1e4);
          CHECK(invert_monotone(f, f.f(x)) == doctest::Approx(x).epsilon(1e-9));
        }
        for (const auto& f : decay_evals) {
          const double x = gen::log_uniform(1e-4, 0.9);
          CHECK(invert_monotone(f, f.f(x)) == doctest::Approx(x).epsilon(1e-9));
        }
      }
    }
  }

  TEST_CASE("property: bounds are non-negative and non-increasing past t_min") {
    gen::reseed(13);
    const std::vector<Variant> variants{Variant::infinity_Ck, Variant::infinity_smooth, Variant::zero_Ck,
                                        Variant::zero_smooth, Variant::zero_infinity_Ck, Variant::zero_infinity_smooth};
    for (int trial = 0; trial < 30; ++trial) {
      const auto M = random_growth();
      const auto m = random_decay();
      const Variant v = variants[gen::integer(0, 5)];
      const int k = gen::integer(1, 3);
      const double c = default_c(v) * gen::uniform(0.2, 1.0);
      const RateBound b(v, M, m, c, k);
      const double start = std::max(1.0, 1.01 * b.t_min());
      double prev = INFINITY;
      bool ok = true;
      for (double t : gen::sorted_grid(start, start * 1e4, 200, true)) {
        const double value = b(t);
        ok = ok && value >= 0.0 && value <= prev * (1.0 + 1e-9);  // 0 once the inverse leaves double range
        prev = value;
      }
      CHECK_MESSAGE(ok, to_string(v), " ", M.describe(), " ", m.describe());
    }
  }
}
