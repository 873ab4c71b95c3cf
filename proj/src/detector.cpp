#include "almsq/detector.hpp"

#include <algorithm>
#include <cmath>

#include "almsq/error.hpp"
#include "almsq/parallel.hpp"
#include "exact_compare.hpp"

namespace almsq {

namespace {

using detail::int_ge_real;
using detail::int_le_real;
using detail::u128;

void check_range(std::uint64_t lo, std::uint64_t hi) {
  if (lo == 0 || lo > hi) throw Error(ErrorKind::invalid_input, "need 1 <= lo <= hi");
}

std::uint64_t ceil_div(std::uint64_t num, std::uint64_t den) { return num / den + (num % den != 0); }

// First a to try: no qualifying a lies below the window, and the cofactor
// n / a must not exceed the top of the window either.
std::uint64_t first_candidate(std::uint64_t n, const Window& w) {
  const double by_low = w.lo - w.radius;
  const double by_cofactor = static_cast<double>(n) / (w.hi + w.radius);
  const double start = std::floor(std::max({by_low, by_cofactor, 0.0}));
  const auto a0 = static_cast<std::uint64_t>(start);
  return a0 > 1 ? a0 - 1 : 1;
}

template <class Uint>
std::optional<Witness> trial_divide(Uint n, Uint a0, Uint a_max, const Window& w,
                                    const AlmostSquareParams& params) {
  for (Uint a = a0; a <= a_max; ++a) {
    if (n % a != 0) continue;
    const Uint b = n / a;
    if (in_window(a, n, w, params) && in_window(b, n, w, params)) return Witness{n, a, b};
  }
  return std::nullopt;
}

template <class Task>
std::vector<Witness> run_segmented(std::uint64_t lo, std::uint64_t hi,
                                   const EnumerateOptions& options, Task&& segment) {
  const std::uint64_t chunk = std::max<std::uint64_t>(options.chunk_size, 1);
  const std::uint64_t count = (hi - lo) / chunk + 1;
  std::vector<std::vector<Witness>> parts(count);
  parallel_for(
      count,
      [&](std::size_t k) {
        const std::uint64_t clo = lo + k * chunk;
        const std::uint64_t chi = (hi - clo < chunk - 1) ? hi : clo + chunk - 1;
        parts[k] = segment(clo, chi);
      },
      options.workers);
  std::vector<Witness> out;
  for (auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

}  // namespace

std::optional<Witness> certify(std::uint64_t n, const AlmostSquareParams& params) {
  const Window w = window_of(n, params);
  const std::uint64_t a_max = isqrt(n);
  const std::uint64_t a0 = first_candidate(n, w);
  if (a0 > a_max) return std::nullopt;
  if (n <= 0xffffffffu) {
    auto found = trial_divide<std::uint32_t>(static_cast<std::uint32_t>(n),
                                             static_cast<std::uint32_t>(a0),
                                             static_cast<std::uint32_t>(a_max), w, params);
    return found;
  }
  return trial_divide<std::uint64_t>(n, a0, a_max, w, params);
}

std::vector<Witness> enumerate(std::uint64_t lo, std::uint64_t hi,
                               const AlmostSquareParams& params,
                               const EnumerateOptions& options) {
  check_range(lo, hi);
  validate(params);
  const double reach = params.c_coef * std::pow(static_cast<double>(hi), params.theta);
  if (!std::isfinite(reach)) throw Error(ErrorKind::range, "C hi^theta is not representable");

  // Every qualifying pair a <= b has a >= sqrt(lo) - C hi^theta, a <= sqrt(hi)
  // and b - a <= 2 C hi^theta.
  const double a_floor = std::floor(std::sqrt(static_cast<double>(lo)) - reach) - 1.0;
  const std::uint64_t a_min = a_floor < 1.0 ? 1 : static_cast<std::uint64_t>(a_floor);
  const std::uint64_t a_max = isqrt(hi);
  const double span_d = std::ceil(2.0 * reach * (1.0 + 1e-12)) + 1.0;
  const std::uint64_t b_span =
      span_d >= 0x1p63 ? (std::uint64_t{1} << 63) : static_cast<std::uint64_t>(span_d);

  return run_segmented(lo, hi, options, [&](std::uint64_t clo, std::uint64_t chi) {
    std::vector<std::uint32_t> best(chi - clo + 1, 0);
    for (std::uint64_t a = a_min; a <= a_max; ++a) {
      const std::uint64_t b_lo = std::max(a, ceil_div(clo, a));
      const std::uint64_t b_hi = std::min(chi / a, a + b_span);
      for (std::uint64_t b = b_lo; b <= b_hi; ++b) {
        const std::uint64_t n = a * b;
        std::uint32_t& slot = best[n - clo];
        if (slot != 0) continue;
        const Window w = window_of(n, params);
        if (in_window(a, n, w, params) && in_window(b, n, w, params))
          slot = static_cast<std::uint32_t>(a);
      }
    }
    std::vector<Witness> found;
    for (std::uint64_t i = 0; i < best.size(); ++i) {
      if (best[i] == 0) continue;
      const std::uint64_t n = clo + i;
      found.push_back({n, best[i], n / best[i]});
    }
    return found;
  });
}

std::vector<Witness> enumerate_oracle(std::uint64_t lo, std::uint64_t hi,
                                      const AlmostSquareParams& params,
                                      const EnumerateOptions& options) {
  check_range(lo, hi);
  validate(params);
  return run_segmented(lo, hi, options, [&](std::uint64_t clo, std::uint64_t chi) {
    std::vector<Witness> found;
    for (std::uint64_t n = clo;; ++n) {
      if (auto w = certify(n, params)) found.push_back(*w);
      if (n == chi) break;
    }
    return found;
  });
}

std::optional<CorollaryWitness> corollary_certify(std::uint64_t n, double x) {
  if (n == 0) throw Error(ErrorKind::invalid_input, "n must be >= 1");
  if (!(x > 0.0) || !std::isfinite(x)) throw Error(ErrorKind::invalid_input, "x must be > 0");
  const double four_x = 4.0 * x;  // exact scaling
  // Walk down from sqrt(n): the first divisor found gives the most balanced
  // pair, and every smaller divisor has a larger cofactor.
  const std::uint64_t a_top = std::min<std::uint64_t>(
      isqrt(n), static_cast<std::uint64_t>(std::floor(2.0 * std::sqrt(x))) + 1);
  for (std::uint64_t a = a_top; a >= 1; --a) {
    const u128 a2 = static_cast<u128>(a) * a;
    if (!int_ge_real(4 * a2, x)) break;        // a < sqrt(x)/2
    if (!int_le_real(a2, four_x)) continue;    // a > 2 sqrt(x)
    if (n % a != 0) continue;
    const std::uint64_t b = n / a;
    const u128 b2 = static_cast<u128>(b) * b;
    if (int_le_real(b2, four_x)) return CorollaryWitness{n, a, b, x};
    break;
  }
  return std::nullopt;
}

}  // namespace almsq
