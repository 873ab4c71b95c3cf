#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "almsq/analytic.hpp"
#include "almsq/error.hpp"
#include "reference/reference.hpp"

using namespace almsq;
using cd = std::complex<double>;

namespace {

AnalyticConfig win(double u, double l, double v = 2.0) {
  AnalyticConfig c;
  c.big_u = u;
  c.big_l = l;
  c.big_v = v;
  return c;
}

double rel(cd got, cd want) { return std::abs(got - want) / std::abs(want); }

}  // namespace

TEST_SUITE("analytic") {
  TEST_CASE("zeta classical values") {
    CHECK(std::abs(zeta_em({2.0, 0.0}) - std::numbers::pi * std::numbers::pi / 6) <= 1e-13);
    CHECK(std::abs(zeta_em({0.0, 0.0}) + 0.5) <= 1e-13);
    CHECK(zeta_em({0.5, 0.0}).real() == doctest::Approx(-1.4603545088095868129).epsilon(1e-13));
    const auto alt = ref::zeta_alternating(0.5L);
    CHECK(std::fabs(zeta_em({0.5, 0.0}).real() - static_cast<double>(alt.real())) <= 1e-12);
    CHECK_THROWS_AS(zeta_em({1.0, 0.0}), Error);
  }

  TEST_CASE("zeta against high-precision values") {
    CHECK(rel(zeta_em({0.5, 14.0}), {0.022241142609993589246, -0.1032581232664500579}) < 1e-10);
    CHECK(rel(zeta_em({0.3, 100.0}), {3.6680751248517151529, 0.031450241790270148118}) < 1e-10);
    CHECK(rel(zeta_em({2.0, 3.0}), {0.79802198514627572062, -0.11374430805293850022}) < 1e-12);
    CHECK(rel(zeta_em({0.75, 1000.0}), {0.83371313000315202652, 0.29162342463359248799}) < 1e-10);
    CHECK(rel(zeta_em({-1.5, 7.0}), {0.8161767728365667735, 1.0196443720204429417}) < 1e-10);
    const auto alt = ref::zeta_alternating({0.5L, 14.0L});
    CHECK(rel(zeta_em({0.5, 14.0}), {static_cast<double>(alt.real()), static_cast<double>(alt.imag())}) < 1e-8);
  }

  TEST_CASE("error bound covers the error and shrinks") {
    const cd exact{0.022241142609993589246, -0.1032581232664500579};
    double prev = INFINITY;
    for (std::uint64_t n : {10ull, 20ull, 40ull}) {
      const double b = zeta_em_error_bound({0.5, 14.0}, n, 4);
      CHECK(std::abs(zeta_em({0.5, 14.0}, n, 4) - exact) <= b + 1e-15);
      CHECK(b < prev);
      prev = b;
    }
    CHECK_THROWS_AS(zeta_em({0.5, 14.0}, 5), Error);
  }

  TEST_CASE("chi") {
    CHECK(std::abs(chi({0.5, 0.0}) - 1.0) <= 1e-14);
    CHECK(rel(chi({0.5, 100.0}), {0.99988536418961387744, -0.015141283941701319162}) < 1e-10);
    CHECK(rel(chi({0.3, 5.0}), {0.76601951761881885605, 0.57041596191755385831}) < 1e-10);
    CHECK(rel(chi({2.0, 3.0}), {2.8682705211995865987, 0.2000756627175353028}) < 1e-10);
    CHECK(std::abs(chi({0.3, 5.0}) * chi({0.7, -5.0}) - 1.0) <= 1e-8);
    CHECK_THROWS_AS(chi({1.0, 0.0}), Error);
    CHECK_THROWS_AS(chi({3.0, 0.0}), Error);
    for (double t : {2.0, 10.0, 100.0, 1000.0, 10000.0, 3.7, 777.7})
      CHECK(std::fabs(std::abs(chi({0.5, t})) - 1.0) <= 1e-8);
  }

  TEST_CASE("approximate functional equation") {
    CHECK(rel(zeta_afe(2 * std::numbers::pi), {1.7117872871116524088, 0.70239508676117182869}) < 1e-12);
    CHECK(std::abs(zeta_afe(50.0) - zeta_em({0.5, 50.0})) <= 5.0 * std::pow(50.0, -0.25));
    for (double t : {3.0, 50.0, 333.3})
      CHECK(std::abs(zeta_afe(-t) - std::conj(zeta_afe(t))) <= 1e-12);
    CHECK_THROWS_AS(zeta_afe(1.0), Error);
  }

  TEST_CASE("property: conjugate symmetry of zeta") {
    for (double s : {-0.5, 0.25, 0.5, 1.5})
      for (double t : {2.0, 30.0, 400.0})
        CHECK(std::abs(zeta_em({s, -t}) - std::conj(zeta_em({s, t}))) <= 1e-12 * (1 + std::abs(zeta_em({s, t}))));
  }

  TEST_CASE("convexity ratio") {
    CHECK(convexity_ratio(1.0, 100.0) == doctest::Approx(0.35487381255246159783).epsilon(1e-10));
    CHECK(convexity_ratio(1.0, 100.0) < 1.0);
    double worst = 0;
    for (double t = 10; t <= 1e4; t *= 1.5) worst = std::max(worst, convexity_ratio(0.5, t));
    CHECK(std::isfinite(worst));
    CHECK(worst < 2.0);
    CHECK_THROWS_AS(convexity_ratio(1.5, 100.0), Error);
    CHECK_THROWS_AS(convexity_ratio(0.5, 1.0), Error);
  }

  TEST_CASE("Dirichlet polynomial") {
    CHECK(dirichlet_N({0.0, 0.0}, win(100, 10)).real() == 21.0);
    CHECK(dirichlet_N({1.0, 0.0}, win(100, 10)).real() == doctest::Approx(0.21077510650657314149).epsilon(1e-14));
    CHECK(dirichlet_N({2.0, 0.0}, win(2, 1)).real() == doctest::Approx(49.0 / 36.0).epsilon(1e-15));
    CHECK_THROWS_AS(dirichlet_N({1.0, 0.0}, win(10.6, 0.2)), Error);
    const auto r = window_integers(10.6, 0.2);
    CHECK(r.empty());
    CHECK(window_integers(100, 10).first == 90);
    CHECK(window_integers(100, 10).last == 110);
  }

  TEST_CASE("property: N(sigma) positive and decreasing") {
    double prev = INFINITY;
    for (double s = -1.0; s <= 3.0; s += 0.25) {
      const cd v = dirichlet_N({s, 0.0}, win(50, 20));
      CHECK(v.real() > 0.0);
      CHECK(v.imag() == 0.0);
      CHECK(v.real() < prev);
      prev = v.real();
    }
  }

  TEST_CASE("Phi examples") {
    CHECK(phi_count(100.0, win(10, 2, 10)) == 6);
    CHECK(ref::phi_pairs(100.0, 10, 2, 10).size() == 6);
    CHECK(phi_count(100.5, win(10, 0, 1000)) == 0);
    CHECK(main_term(100.0, win(10, 0, 4)) == doctest::Approx(2.5));
  }

  TEST_CASE("property: Phi against listing, and additive over the window") {
    std::mt19937_64 gen(23);
    std::uniform_real_distribution<double> yd(50.0, 1e5), vd(1.5, 50.0);
    for (int i = 0; i < 300; ++i) {
      const double y = yd(gen), v = vd(gen);
      const double u = 5.0 + static_cast<double>(gen() % 200), l = static_cast<double>(gen() % 5);
      CHECK(phi_count(y, win(u, l, v)) == ref::phi_pairs(y, u, l, v).size());
    }
    for (double y : {1234.5, 99999.0, 5e5}) {
      const auto whole = phi_count(y, win(100, 10, 7));
      CHECK(whole == phi_count(y, win(94.5, 4.5, 7)) + phi_count(y, win(105, 5, 7)));
      CHECK(whole == phi_count(y, win(90, 0, 7)) + phi_count(y, win(100, 9, 7)) + phi_count(y, win(110, 0, 7)));
    }
  }

  TEST_CASE("discrepancy: exact sweep against a reference integral") {
    const auto cfg = win(20, 5, 10);
    const auto exact = discrepancy(1e4, 500, cfg, 0, QuadratureMode::exact);
    CHECK(exact.tolerance == 0.0);
    CHECK(exact.i_xy == doctest::Approx(static_cast<double>(ref::discrepancy_exact(1e4, 500, 20, 5, 10))).epsilon(1e-9));
    const auto mid = discrepancy(1e4, 500, cfg, 1 << 16);
    CHECK(std::fabs(mid.i_xy - exact.i_xy) <= mid.tolerance);
    CHECK(mid.tolerance < 0.2 * exact.i_xy);
    CHECK(mid.i_xy >= 0.0);
    CHECK(exact.main_term_sq == doctest::Approx(std::pow(1e4 / 10 * dirichlet_N({1, 0}, cfg).real(), 2)));
  }

  TEST_CASE("discrepancy: midpoint tolerance shrinks with samples") {
    const auto cfg = win(300, 60, 20);
    const auto exact = discrepancy(1e6, 2e4, cfg, 0, QuadratureMode::exact);
    double prev = INFINITY;
    for (std::uint64_t s : {1000ull, 10000ull, 100000ull}) {
      const auto m = discrepancy(1e6, 2e4, cfg, s);
      CHECK(std::fabs(m.i_xy - exact.i_xy) <= m.tolerance);
      CHECK(m.tolerance < prev);
      prev = m.tolerance;
    }
  }
}
