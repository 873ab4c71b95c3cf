#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

namespace almsq {

/// Factor window shape: n = ab is a (theta, C)-almost square when both a and b
/// lie in [sqrt(n) - C n^theta, sqrt(n) + C n^theta].
struct AlmostSquareParams {
  double theta = 0.5;
  double c_coef = 1.0;
};

// Throws Error(invalid_input) unless 0 <= theta <= 1/2 and C > 0, both finite.
void validate(const AlmostSquareParams& params);

/// Evaluated window around sqrt(n). The true endpoints lie within `radius`
/// of `lo` and `hi`; lo is clamped at 0.
struct Window {
  double lo = 0.0;
  double hi = 0.0;
  double radius = 0.0;
};

enum class IntervalPreset { theorem, corollary, conjecture, custom };

std::string_view to_string(IntervalPreset preset);
std::optional<IntervalPreset> parse_interval_preset(std::string_view name);

/// Short-interval length H(x) = coef * x^pow * (ln x)^logpow.
struct IntervalSpec {
  double coef = 1.0;
  double pow = 0.0;
  double logpow = 0.0;
  IntervalPreset preset = IntervalPreset::custom;

  static IntervalSpec theorem(double theta, double eps = 0.1);
  static IntervalSpec corollary(double eps = 0.1);
  static IntervalSpec conjecture(double theta, double eps = 0.1);
  static IntervalSpec custom(double coef, double pow, double logpow);
};

/// Parameters of the counting apparatus: window centre U and half-width L for
/// the short Dirichlet polynomial, ratio V for the product interval
/// [y, y(1 + 1/V)], truncation height T, line Re s = eta and Perron abscissa c.
struct AnalyticConfig {
  double big_u = 0.0;
  double big_l = 0.0;
  double big_v = 2.0;
  double big_t = 2.0;
  double eta = 0.5;
  double perron_c = 2.0;
};

struct ParameterChoice {
  AnalyticConfig config;
  double big_y = 0.0;
};

/// Window for n under params. Throws Error(range) if C n^theta overflows.
Window window_of(std::uint64_t n, const AlmostSquareParams& params);

/// Exact membership of the integer a in the window of n. Uses a double
/// evaluation when it is decisive and otherwise escalates to directed-rounding
/// interval arithmetic, doubling precision until the comparison is certified.
bool in_window(std::uint64_t a, std::uint64_t n, const AlmostSquareParams& params);

/// Same decision with a window already computed by window_of(n, params).
bool in_window(std::uint64_t a, std::uint64_t n, const Window& window,
               const AlmostSquareParams& params);

/// Only the interval-arithmetic path; exposed so tests can check that the
/// fast path never changes an answer.
bool in_window_exact(std::uint64_t a, std::uint64_t n, const AlmostSquareParams& params);

/// H(x) with natural log. Requires x > e.
double interval_length(double x, const IntervalSpec& spec);

/// Parameter formulas U = X^(1/2), L = C X^theta / (2C + 3),
/// T = X^(2 theta) / (ln X)^(4 + eps/2), V = X^(2 theta) / (ln X)^(5 + eps),
/// Y = X^(1/2) L, eta = 1/2, c = 1 + 1/ln X, without the V, T >= 2 checks.
ParameterChoice parameter_formulas(double big_x, const AlmostSquareParams& params, double eps);

/// parameter_formulas plus validation: 1/4 < theta <= 1/2 and V, T >= 2
/// (otherwise Error(infeasible) "X too small for these parameters").
ParameterChoice choose_parameters(double big_x, const AlmostSquareParams& params, double eps);

// Exact floor(sqrt(n)).
std::uint64_t isqrt(std::uint64_t n);

}  // namespace almsq
