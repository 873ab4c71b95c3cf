#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "almsq/core.hpp"

namespace almsq {

/// Which inequality a grid exercises.
enum class Lemma { diagonal = 1, off_diagonal = 2, second_moment = 3, perron = 4, mean_value = 5 };

std::string_view to_string(Lemma lemma);
std::optional<Lemma> parse_lemma(std::string_view name);  // "1".."4", "mv"

/// Computed left-hand side against the right-hand side with implied constant 1.
struct BoundReport {
  Lemma lemma = Lemma::diagonal;
  std::vector<std::pair<std::string, double>> grid_point;
  double lhs = 0.0;
  double bound = 0.0;
  double ratio = 0.0;
  std::vector<double> bound_terms;  // individual summands of the bound
};

// ---------------------------------------------------------------------------
// Sums over products n m with n in [N, 2N) and m in [U - L, U + L]
// ---------------------------------------------------------------------------

inline constexpr double kMaxCandidatePairs = 1e9;

/// Sum of 1/sqrt(n1 n2 m1 m2) over n1 m1 = n2 m2. Computed by matching sorted
/// product multiplicities: equal products P contribute c1(P) c2(P) / P.
double s1_sum(std::uint64_t n1, std::uint64_t n2, double big_u, double big_l);

/// Number of quadruples with n1 m1 = n2 m2.
std::uint64_t s1_solutions(std::uint64_t n1, std::uint64_t n2, double big_u, double big_l);

/// ((L + U^(1/2)) / U) ln^2(N1 N2 U).
double s1_bound(std::uint64_t n1, std::uint64_t n2, double big_u, double big_l);

/// Sum of 1/(sqrt(n1 n2 m1 m2) |log(n2 m2 / (n1 m1))|) over n1 m1 != n2 m2.
double s2_sum(std::uint64_t n1, std::uint64_t n2, double big_u, double big_l);

/// (N1 N2)^(1/2) L^2 / U ln(N1 N2 U) + N1 N2 L^2 / U^2 ln(N1 N2 U).
std::array<double, 2> s2_bound_terms(std::uint64_t n1, std::uint64_t n2, double big_u, double big_l);

// ---------------------------------------------------------------------------
// Critical-line integrals
// ---------------------------------------------------------------------------

/// Largest Simpson step resolving |zeta N|^2 up to height T:
/// pi / (ln(U + L) + max(0, ln sqrt(T / 2 pi))).
double max_resolving_step(double big_t, double big_u, double big_l);

/// Composite Simpson estimate of the integral over [1, T] of
/// |zeta(1/2+it) N(1/2+it)|^2.
double second_moment(double big_t, double big_u, double big_l, double step);

/// T L / U ln^2(TU), T^(1/2) L^2 / U ln(TU) and T L^2 / U^2 ln(TU). The first
/// two form the stated bound; the third is carried separately.
std::array<double, 3> second_moment_bound_terms(double big_t, double big_u, double big_l);

/// Composite Simpson estimate of I(u), the integral over [1, u] of |N(1/2+it)|^2.
double mv_mean_value(double u, double big_u, double big_l, double step);

/// u L / U + L.
double mv_bound(double u, double big_u, double big_l);

// ---------------------------------------------------------------------------
// Perron truncation error
// ---------------------------------------------------------------------------

/// sum over x/2 < n < 2x, n != x of a_n min(1, x / (T |x - n|))
///   + (4x)^c / T * sum_m m^(-c) zeta(c),
/// with a_n the number of divisors of n in [U - L, U + L].
double perron_majorant(double x, double big_t, double big_u, double big_l, double perron_c);

/// perron_majorant with c = 1 + 1/ln x.
double perron_majorant(double x, double big_t, double big_u, double big_l);

/// Midpoint-sample mean of perron_majorant(a y)^2 over y in [X, X + Y], with
/// c = 1 + 1/ln X.
double perron_mean_square(double big_x, double big_y, double a, double big_t, double big_u,
                          double big_l, std::uint64_t samples);

/// L^2 X^2 / (U^2 T^2) ln^2 X and X L^2 / (T Y) ln^2 X.
std::array<double, 2> perron_bound_terms(double big_x, double big_y, double big_t, double big_u,
                                         double big_l);

// ---------------------------------------------------------------------------
// Exceptional-set measure
// ---------------------------------------------------------------------------

struct MeasureBound {
  ParameterChoice choice;
  std::array<double, 4> terms{};  // T(U/L)ln^3 X, T^(1/2) U ln^2 X, Y V^2/T^2 ln^2 X, V^2 U^2/(X T) ln^2 X
  double predicted_fraction = 0.0;  // sum(terms) / Y
  bool vacuous = false;             // predicted_fraction >= 1
};

MeasureBound measure_bound(double big_x, const AlmostSquareParams& params, double eps);

// ---------------------------------------------------------------------------
// Grids
// ---------------------------------------------------------------------------

/// Grid of evaluation points. (u_values[i], l_values[i]) are paired; the rest
/// combine as a Cartesian product. t_values holds T (lemmas 3, 4) or u (mean
/// value). x_values, y_values, a_values and samples are used by lemma 4 only.
struct LemmaGrid {
  std::vector<std::uint64_t> n1_ranges;
  std::vector<std::uint64_t> n2_ranges;
  std::vector<double> u_values;
  std::vector<double> l_values;
  std::vector<double> t_values;
  double beta = 0.4;
  std::vector<double> x_values;
  std::vector<double> y_values;
  std::vector<double> a_values;
  std::uint64_t samples = 200;
  double step = 0.0;  // 0 = max_resolving_step / 8
};

LemmaGrid default_grid(Lemma lemma);

/// Throws Error(invalid_input) naming the first point outside the lemma's hypotheses.
void validate_grid(Lemma lemma, const LemmaGrid& grid);

/// Evaluates every grid point (in parallel) and returns reports in grid order.
std::vector<BoundReport> verify_lemma(Lemma lemma, const LemmaGrid& grid, unsigned workers = 0);

}  // namespace almsq
