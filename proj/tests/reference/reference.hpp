#pragma once
// Slow, independent reference implementations used only by the tests.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace ref {

using cplx = std::complex<long double>;

inline std::vector<std::uint64_t> window_ints(double u, double l) {
  std::vector<std::uint64_t> out;
  const long double lo = std::ceil(static_cast<long double>(u) - l);
  const long double hi = std::floor(static_cast<long double>(u) + l);
  for (long double m = std::max(lo, 1.0L); m <= hi; m += 1.0L) out.push_back(static_cast<std::uint64_t>(m));
  return out;
}

// Almost-square test by trial division over every divisor, long double endpoints.
inline std::optional<std::pair<std::uint64_t, std::uint64_t>> almost_square(std::uint64_t n, double theta,
                                                                          double c) {
  const long double root = std::sqrt(static_cast<long double>(n));
  const long double w = c * std::pow(static_cast<long double>(n), static_cast<long double>(theta));
  const long double lo = std::max(0.0L, root - w), hi = root + w;
  for (std::uint64_t a = 1; a * a <= n; ++a) {
    if (n % a) continue;
    const std::uint64_t b = n / a;
    if (a >= lo && a <= hi && b >= lo && b <= hi) return std::pair{a, b};
  }
  return std::nullopt;
}

// theta = 1/2 with integer C is decidable in integers: a >= (1 - C) sqrt(n) and b <= (1 + C) sqrt(n).
inline bool almost_square_half(std::uint64_t n, std::uint64_t c) {
  for (std::uint64_t a = 1; a * a <= n; ++a) {
    if (n % a) continue;
    const std::uint64_t b = n / a;
    const bool a_ok = c >= 1 || a * a >= (1 - c) * (1 - c) * n;
    if (a_ok && b * b <= (1 + c) * (1 + c) * n) return true;
  }
  return false;
}

inline long double s1(std::uint64_t n1, std::uint64_t n2, double u, double l) {
  const auto ms = window_ints(u, l);
  long double total = 0;
  for (std::uint64_t a = n1; a < 2 * n1; ++a)
    for (std::uint64_t b = n2; b < 2 * n2; ++b)
      for (auto m1 : ms)
        for (auto m2 : ms)
          if (a * m1 == b * m2) total += 1.0L / static_cast<long double>(a * m1);
  return total;
}

inline std::uint64_t s1_count(std::uint64_t n1, std::uint64_t n2, double u, double l) {
  const auto ms = window_ints(u, l);
  std::uint64_t total = 0;
  for (std::uint64_t a = n1; a < 2 * n1; ++a)
    for (std::uint64_t b = n2; b < 2 * n2; ++b)
      for (auto m1 : ms)
        for (auto m2 : ms) total += a * m1 == b * m2;
  return total;
}

// Off-diagonal sum; flat = true replaces |log ratio| by log(4/3).
inline long double s2(std::uint64_t n1, std::uint64_t n2, double u, double l, bool flat = false) {
  const auto ms = window_ints(u, l);
  long double total = 0;
  for (std::uint64_t a = n1; a < 2 * n1; ++a)
    for (std::uint64_t b = n2; b < 2 * n2; ++b)
      for (auto m1 : ms)
        for (auto m2 : ms) {
          const long double p = a * m1, q = b * m2;
          if (p == q) continue;
          const long double lg = flat ? std::log(4.0L / 3.0L) : std::fabs(std::log(q / p));
          total += 1.0L / (std::sqrt(p * q) * lg);
        }
  return total;
}

// Smallest off-diagonal |log ratio| in the quadruple sum.
inline long double s2_min_log(std::uint64_t n1, std::uint64_t n2, double u, double l) {
  const auto ms = window_ints(u, l);
  long double best = INFINITY;
  for (std::uint64_t a = n1; a < 2 * n1; ++a)
    for (std::uint64_t b = n2; b < 2 * n2; ++b)
      for (auto m1 : ms)
        for (auto m2 : ms)
          if (a * m1 != b * m2)
            best = std::min(best, std::fabs(std::log(static_cast<long double>(b * m2) / (a * m1))));
  return best;
}

// Pairs (n, k) with n in the window and y <= n k <= y (1 + 1/V), by listing.
inline std::vector<std::pair<std::uint64_t, std::uint64_t>> phi_pairs(double y, double u, double l, double v) {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
  const long double top = static_cast<long double>(y) + static_cast<long double>(y) / v;
  for (auto n : window_ints(u, l))
    for (std::uint64_t k = 1; static_cast<long double>(n * k) <= top; ++k)
      if (static_cast<long double>(n * k) >= y) out.emplace_back(n, k);
  return out;
}

// Integral over [1, u] of |sum n^(-1/2-it)|^2 in closed form.
inline long double mv_integral(double u, double big_u, double l) {
  const auto ns = window_ints(big_u, l);
  long double total = 0;
  for (auto m : ns)
    for (auto n : ns) {
      const long double w = 1.0L / std::sqrt(static_cast<long double>(m) * n);
      if (m == n) {
        total += w * (u - 1.0L);
        continue;
      }
      const long double r = std::log(static_cast<long double>(m) / n);
      total += w * (std::sin(r * u) - std::sin(r)) / r;
    }
  return total;
}

// Borwein's alternating series for eta(s), zeta = eta / (1 - 2^(1-s)).
inline cplx zeta_alternating(cplx s, int n = 60) {
  std::vector<long double> d(n + 1);
  long double term = 1.0L / n, sum = term;
  d[0] = n * sum;
  for (int i = 1; i <= n; ++i) {
    term *= 4.0L * (n + i - 1) * (n - i + 1) / ((2.0L * i - 1) * (2.0L * i));
    sum += term;
    d[i] = n * sum;
  }
  cplx acc = 0;
  for (int k = 0; k < n; ++k) {
    const cplx v = (d[n] - d[k]) * std::pow(static_cast<long double>(k + 1), -s);
    acc += k % 2 ? -v : v;
  }
  const cplx eta = acc / d[n];
  return eta / (1.0L - std::pow(2.0L, 1.0L - s));
}

// I_{X,Y} by exact integration between the jump points of Phi.
inline long double discrepancy_exact(double x, double y_len, double u, double l, double v) {
  const auto ns = window_ints(u, l);
  long double n1 = 0;
  for (auto n : ns) n1 += 1.0L / n;
  const long double slope = n1 / v, stretch = 1.0L + 1.0L / v;
  const long double lo = x, hi = static_cast<long double>(x) + y_len;
  std::vector<long double> cuts{lo, hi};
  for (auto n : ns) {
    for (std::uint64_t k = static_cast<std::uint64_t>(lo / n); n * k <= hi * stretch + n; ++k) {
      const long double p = static_cast<long double>(n * k);
      if (p > lo && p < hi) cuts.push_back(p);
      if (p / stretch > lo && p / stretch < hi) cuts.push_back(p / stretch);
    }
  }
  std::sort(cuts.begin(), cuts.end());
  long double total = 0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const long double a = cuts[i], b = cuts[i + 1];
    if (b <= a) continue;
    const long double mid = 0.5L * (a + b);
    std::uint64_t phi = 0;
    for (auto n : ns)
      for (std::uint64_t k = static_cast<std::uint64_t>(mid / n); static_cast<long double>(n * k) <= mid * stretch; ++k)
        phi += static_cast<long double>(n * k) >= mid;
    const long double fa = phi - slope * a, fb = phi - slope * b;
    total += (b - a) * (fa * fa + fa * fb + fb * fb) / 3.0L;
  }
  return total / y_len;
}

}  // namespace ref
