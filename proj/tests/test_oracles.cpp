#include <doctest.h>

#include <cmath>
#include <random>

#include "almsq/analytic.hpp"
#include "almsq/error.hpp"
#include "almsq/oracles.hpp"
#include "reference/reference.hpp"

using namespace almsq;

TEST_SUITE("oracles") {
  TEST_CASE("S1 examples") {
    CHECK(s1_sum(1000, 100, 100, 50) == 0.0);
    CHECK(s1_solutions(1000, 100, 100, 50) == 0);
    CHECK(s1_sum(2, 2, 4, 2) == doctest::Approx(41.0 / 24.0).epsilon(1e-15));
    CHECK(s1_bound(2, 2, 4, 2) == doctest::Approx((2 + 2) / 4.0 * std::pow(std::log(16.0), 2)));
  }

  TEST_CASE("S1 grid too large") {
    try {
      s1_sum(1000000000ull, 1, 1000, 100);
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::infeasible);
      CHECK(std::string(e.what()).find("grid too large") != std::string::npos);
    }
  }

  TEST_CASE("S2 examples") {
    CHECK(s2_sum(4, 4, 10, 4) == doctest::Approx(130.60080778616118855).epsilon(1e-13));
    CHECK(s2_sum(1, 1, 10, 4) == doctest::Approx(33.032951790177312482).epsilon(1e-13));
    CHECK(ref::s2_min_log(100, 10, 20, 5) > std::log(4.0 / 3.0));
    CHECK(s2_sum(100, 10, 20, 5) <= static_cast<double>(ref::s2(100, 10, 20, 5, true)));
    const auto terms = s2_bound_terms(4, 4, 10, 4);
    const double lg = std::log(160.0);
    CHECK(terms[0] == doctest::Approx(4.0 * 16 / 10 * lg));
    CHECK(terms[1] == doctest::Approx(16.0 * 16 / 100 * lg));
  }

  TEST_CASE("property: product matching equals the quadruple loop") {
    std::mt19937_64 gen(29);
    for (int i = 0; i < 60; ++i) {
      const std::uint64_t n1 = 1 + gen() % 24, n2 = 1 + gen() % 24;
      const double u = 4 + static_cast<double>(gen() % 60);
      const double l = 0.5 + static_cast<double>(gen() % static_cast<std::uint64_t>(u / 2));
      CHECK(s1_solutions(n1, n2, u, l) == ref::s1_count(n1, n2, u, l));
      CHECK(s1_sum(n1, n2, u, l) == doctest::Approx(static_cast<double>(ref::s1(n1, n2, u, l))).epsilon(1e-14));
      CHECK(s2_sum(n1, n2, u, l) == doctest::Approx(static_cast<double>(ref::s2(n1, n2, u, l))).epsilon(1e-12));
    }
  }

  TEST_CASE("property: S1 emptiness when N1/N2 is out of reach") {
    std::mt19937_64 gen(31);
    int hits = 0;
    for (int i = 0; i < 400; ++i) {
      const std::uint64_t n1 = 1 + gen() % 400, n2 = 1 + gen() % 400;
      const double u = 10 + static_cast<double>(gen() % 200);
      const double l = 1 + static_cast<double>(gen() % static_cast<std::uint64_t>(u / 2));
      const double spread = (u + l) / (u - l);
      const double need = std::max(double(n1) / (2.0 * n2), double(n2) / (2.0 * n1));
      if (spread < need) {
        ++hits;
        CHECK(s1_sum(n1, n2, u, l) == 0.0);
      }
    }
    CHECK(hits > 20);
  }

  TEST_CASE("property: S1 at N1 = N2 dominates its diagonal") {
    std::mt19937_64 gen(37);
    for (int i = 0; i < 10; ++i) {
      const std::uint64_t n = 1 + gen() % 50;
      const double u = 8 + static_cast<double>(gen() % 100), l = 1 + static_cast<double>(gen() % 4);
      long double diag = 0;
      for (std::uint64_t a = n; a < 2 * n; ++a)
        for (auto m : ref::window_ints(u, l)) diag += 1.0L / (a * m);
      CHECK(s1_sum(n, n, u, l) >= static_cast<double>(diag) * (1 - 1e-14));
      CHECK(s1_sum(n, n, u, l) > 0.0);
    }
  }

  TEST_CASE("second moment") {
    CHECK(second_moment(1.0, 50, 10, 0.1) == 0.0);
    const double coarse = 0.9 * max_resolving_step(100, 50, 10);
    CHECK(second_moment(100, 50, 10, coarse) == doctest::Approx(52.288468875029802697).epsilon(1e-3));
    const double v = second_moment(100, 50, 10, max_resolving_step(100, 50, 10) / 8);
    CHECK(v == doctest::Approx(52.288468875029802697).epsilon(1e-7));
    CHECK_THROWS_AS(second_moment(100, 50, 10, 2 * max_resolving_step(100, 50, 10)), Error);
    const auto terms = second_moment_bound_terms(100, 50, 10);
    CHECK(terms[0] == doctest::Approx(100.0 * 10 / 50 * std::pow(std::log(5000.0), 2)));
    CHECK(terms[2] == doctest::Approx(100.0 * 100 / 2500 * std::log(5000.0)));
  }

  TEST_CASE("property: second moment non-decreasing in T") {
    const double step = 0.05;
    double prev = 0;
    for (double t : {2.0, 10.0, 30.0, 60.0, 61.0}) {
      const double v = second_moment(t, 36, 12, step);
      CHECK(v >= 0.0);
      CHECK(v >= prev);
      prev = v;
    }
  }

  TEST_CASE("mean value integral") {
    CHECK(mv_mean_value(1.0, 100, 10, 0.1) == 0.0);
    CHECK(mv_mean_value(500.0, 37, 0, 0.1) == doctest::Approx(499.0 / 37).epsilon(1e-12));
    const double step = max_resolving_step(1000, 100, 10) / 8;
    CHECK(mv_mean_value(1000, 100, 10, step) ==
          doctest::Approx(static_cast<double>(ref::mv_integral(1000, 100, 10))).epsilon(1e-9));
    CHECK(mv_mean_value(1000, 500, 250, max_resolving_step(1000, 500, 250) / 8) ==
          doctest::Approx(static_cast<double>(ref::mv_integral(1000, 500, 250))).epsilon(1e-9));
    CHECK(mv_mean_value(1000, 500, 250, 0.9 * max_resolving_step(1000, 500, 250)) ==
          doctest::Approx(static_cast<double>(ref::mv_integral(1000, 500, 250))).epsilon(1e-4));
    CHECK(mv_bound(1000, 100, 10) == doctest::Approx(110.0));
  }

  TEST_CASE("Perron majorant") {
    CHECK(perron_majorant(1e4, 100, 10.6, 0.2) == 0.0);
    CHECK(perron_majorant(1e5 + 0.5, 1e3, 300, 30) == doctest::Approx(2153.0797850599666846).epsilon(1e-10));
    CHECK(perron_mean_square(1e5, 1e3, 1.0, 1e3, 10.6, 0.2, 50) == 0.0);
    const double one = perron_mean_square(1e5, 1e3, 1.0, 1e3, 300, 30, 50);
    const double two = perron_mean_square(1e5, 1e3, 2.0, 1e3, 300, 30, 50);
    CHECK(std::isfinite(one));
    CHECK(std::isfinite(two));
    CHECK(one > 0.0);
    CHECK_THROWS_AS(perron_mean_square(1e5, 1e3, 2.5, 1e3, 300, 30, 50), Error);
  }

  TEST_CASE("property: Perron majorant non-increasing in T") {
    std::mt19937_64 gen(41);
    for (int i = 0; i < 20; ++i) {
      const double x = 1000 + static_cast<double>(gen() % 100000) + 0.25 * (gen() % 4);
      const double u = 20 + static_cast<double>(gen() % 200), l = static_cast<double>(gen() % 10);
      double prev = INFINITY;
      for (double t = 2; t < 1e5; t *= 2) {
        const double v = perron_majorant(x, t, u, l);
        CHECK(v <= prev);
        prev = v;
      }
    }
  }

  TEST_CASE("measure bound") {
    const MeasureBound m = measure_bound(1e20, {0.45, 1.0}, 0.1);
    CHECK(m.terms[0] == doctest::Approx(896524238660229871.68).epsilon(1e-10));
    CHECK(m.terms[1] == doctest::Approx(9086965054289317351.2).epsilon(1e-10));
    CHECK(m.terms[2] == doctest::Approx(1363657882500575311.4).epsilon(1e-10));
    CHECK(m.terms[3] == doctest::Approx(125178692178.98978255).epsilon(1e-10));
    const auto& c = m.choice.config;
    CHECK(m.terms[0] / m.terms[1] == doctest::Approx(std::sqrt(c.big_t) / c.big_l * std::log(1e20)));
    const bool big_middle = std::sqrt(c.big_t) * c.big_u >= m.choice.big_y;
    CHECK((!big_middle || m.vacuous));
    CHECK(m.vacuous == (m.predicted_fraction >= 1.0));
  }

  TEST_CASE("grid validation") {
    for (Lemma l : {Lemma::diagonal, Lemma::off_diagonal, Lemma::second_moment, Lemma::perron, Lemma::mean_value})
      CHECK_NOTHROW(validate_grid(l, default_grid(l)));
    LemmaGrid g = default_grid(Lemma::off_diagonal);
    g.l_values[0] = 3.0;  // below 32^0.4 = 4
    CHECK_THROWS_AS(validate_grid(Lemma::off_diagonal, g), Error);
    g = default_grid(Lemma::second_moment);
    g.beta = 0.4;
    CHECK_THROWS_AS(validate_grid(Lemma::second_moment, g), Error);
    g = default_grid(Lemma::diagonal);
    g.l_values[1] = 40.0;  // more than U/2
    CHECK_THROWS_AS(validate_grid(Lemma::diagonal, g), Error);
    CHECK(parse_lemma("mv") == Lemma::mean_value);
    CHECK_FALSE(parse_lemma("5"));
  }

  TEST_CASE("verify reports") {
    const auto a = verify_lemma(Lemma::diagonal, default_grid(Lemma::diagonal), 1);
    const auto b = verify_lemma(Lemma::diagonal, default_grid(Lemma::diagonal), 6);
    REQUIRE(a.size() == 27);
    REQUIRE(b.size() == a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(a[i].lhs == b[i].lhs);
      CHECK(a[i].grid_point == b[i].grid_point);
      CHECK(a[i].lhs >= 0.0);
      CHECK(a[i].bound > 0.0);
      CHECK(a[i].ratio == a[i].lhs / a[i].bound);
    }
    CHECK(a[0].grid_point[0].first == "N1");
  }
}
