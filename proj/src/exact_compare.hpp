#pragma once

#include <cmath>
#include <cstdint>

// Exact comparisons between integers and binary64 values.
namespace almsq::detail {

using u128 = unsigned __int128;

inline bool int_ge_real(u128 v, double d) {
  if (d <= 0.0) return true;
  if (d >= 0x1p127) return false;
  const double fd = std::floor(d);
  const auto f = static_cast<u128>(fd);
  return v > f || (v == f && fd == d);
}

inline bool int_le_real(u128 v, double d) {
  if (d < 0.0) return false;
  if (d >= 0x1p127) return true;
  return v <= static_cast<u128>(std::floor(d));
}

// Smallest integer q >= 1 with q * den >= x.
inline u128 ceil_ratio(double x, u128 den) {
  double guess = std::ceil(x / static_cast<double>(den));
  if (guess < 1.0) guess = 1.0;
  u128 q = guess >= 0x1p120 ? (u128{1} << 120) : static_cast<u128>(guess);
  while (q > 1 && int_ge_real((q - 1) * den, x)) --q;
  while (!int_ge_real(q * den, x)) ++q;
  return q;
}

// Largest integer q >= 0 with q * den <= x (x >= 0).
inline u128 floor_ratio(double x, u128 den) {
  if (x < 0.0) return 0;
  double guess = std::floor(x / static_cast<double>(den));
  u128 q = guess >= 0x1p120 ? (u128{1} << 120) : static_cast<u128>(guess);
  while (q > 0 && !int_le_real(q * den, x)) --q;
  while (int_le_real((q + 1) * den, x)) ++q;
  return q;
}

// Largest q >= 0 with q * n <= x, exact for binary64 x.
inline std::uint64_t floor_div_real(double x, std::uint64_t n) {
  if (x < 0.0) return 0;
  if (x >= 0x1p52 || n >= (std::uint64_t{1} << 40))
    return static_cast<std::uint64_t>(floor_ratio(x, n));
  auto q = static_cast<std::uint64_t>(x / static_cast<double>(n));
  if (static_cast<double>((q + 1) * n) <= x)
    ++q;
  else if (q > 0 && static_cast<double>(q * n) > x)
    --q;
  return q;
}

// Smallest q >= 0 with q * n >= x.
inline std::uint64_t ceil_div_real(double x, std::uint64_t n) {
  if (x <= 0.0) return 0;
  std::uint64_t q = floor_div_real(x, n);
  if (static_cast<long double>(q) * static_cast<long double>(n) < x) ++q;
  return q;
}

}  // namespace almsq::detail
