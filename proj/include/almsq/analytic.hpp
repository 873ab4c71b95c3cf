#pragma once

#include <complex>
#include <cstdint>
#include <string_view>
#include <optional>

#include "almsq/core.hpp"

namespace almsq {

struct ComplexPoint {
  double sigma = 0.5;
  double t = 0.0;

  std::complex<double> value() const { return {sigma, t}; }
};

// ---------------------------------------------------------------------------
// Zeta function and the functional-equation factor
// ---------------------------------------------------------------------------

inline constexpr int kDefaultEmCorrections = 8;

/// zeta(s) by Euler-Maclaurin summation: the first terms-1 terms directly,
/// the tail by the integral, the half term and `corrections` Bernoulli terms.
/// Requires s != 1 and terms >= 10.
std::complex<double> zeta_em(ComplexPoint s, std::uint64_t terms,
                             int corrections = kDefaultEmCorrections);

/// Upper bound on |zeta(s) - zeta_em(s, terms, corrections)| from the first
/// omitted Bernoulli term (valid while sigma + 2 corrections + 1 > 0).
double zeta_em_error_bound(ComplexPoint s, std::uint64_t terms,
                           int corrections = kDefaultEmCorrections);

/// Direct-sum length used when none is given: |s| + 16, at least 16, which
/// keeps the correction series geometrically convergent.
std::uint64_t default_em_terms(ComplexPoint s);

std::complex<double> zeta_em(ComplexPoint s);

/// chi(s) = (2 pi)^s / (2 Gamma(s) cos(pi s / 2)), evaluated in log space so
/// that |t| up to 1e4 neither overflows nor underflows. Throws at the poles
/// s = 1, 3, 5, ...
std::complex<double> chi(ComplexPoint s);

/// Approximate functional equation on the critical line:
/// sum_{n <= M} n^(-1/2-it) + chi(1/2+it) sum_{n <= M} n^(-1/2+it),
/// M = floor(sqrt(|t| / 2 pi)). Requires |t| >= 2.
std::complex<double> zeta_afe(double t);

/// |zeta(sigma+it)| / ((|t|+2)^((1-sigma)/3) ln|t|) for 0 <= sigma <= 1, |t| >= 2.
double convexity_ratio(double sigma, double t);

// ---------------------------------------------------------------------------
// Short Dirichlet polynomial and the product counter
// ---------------------------------------------------------------------------

/// Integers n in [U - L, U + L] (first > last when empty).
struct IntegerRange {
  std::uint64_t first = 1;
  std::uint64_t last = 0;

  bool empty() const { return first > last; }
  std::uint64_t size() const { return empty() ? 0 : last - first + 1; }
};

IntegerRange window_integers(double big_u, double big_l);

/// N(s) = sum over integers U - L <= n <= U + L of n^(-s).
std::complex<double> dirichlet_N(ComplexPoint s, const AnalyticConfig& cfg);

/// Phi(y): pairs (n, n') with n in the window, n' >= 1 and y <= n n' <= y + y/V.
std::uint64_t phi_count(double y, const AnalyticConfig& cfg);

/// (y / V) N(1).
double main_term(double y, const AnalyticConfig& cfg);

enum class QuadratureMode { midpoint, exact };

std::string_view to_string(QuadratureMode mode);
std::optional<QuadratureMode> parse_quadrature_mode(std::string_view name);

/// Mean square of Phi(y) - (y/V) N(1) over [X, X + Y].
struct DiscrepancyReport {
  double i_xy = 0.0;
  double main_term_sq = 0.0;  // ((X/V) N(1))^2
  std::uint64_t samples = 0;
  double tolerance = 0.0;     // bound on |midpoint - exact|; 0 in exact mode
  QuadratureMode mode = QuadratureMode::midpoint;
};

inline constexpr double kExactDiscrepancyMaxY = 1e6;

/// Midpoint rule over `samples` equal cells, or (mode = exact, Y <= 1e6) the
/// exact integral of the step-minus-linear integrand from a sweep over the
/// jump points of Phi.
DiscrepancyReport discrepancy(double big_x, double big_y, const AnalyticConfig& cfg,
                              std::uint64_t samples,
                              QuadratureMode mode = QuadratureMode::midpoint);

}  // namespace almsq
