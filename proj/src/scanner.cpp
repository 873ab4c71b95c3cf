#include "almsq/scanner.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>

#include "almsq/detector.hpp"
#include "almsq/error.hpp"
#include "almsq/parallel.hpp"
#include "exact_compare.hpp"

namespace almsq {

namespace {

using detail::int_ge_real;
using detail::int_le_real;
using detail::u128;

double effective_span(const ScanConfig& cfg) { return cfg.span > 0.0 ? cfg.span : cfg.big_x; }

void check_config(const ScanConfig& cfg) {
  validate(cfg.params);
  if (cfg.samples == 0) throw Error(ErrorKind::invalid_input, "samples must be >= 1");
  if (!std::isfinite(cfg.big_x) || !std::isfinite(cfg.span) || cfg.span < 0.0)
    throw Error(ErrorKind::invalid_input, "X and span must be finite, span >= 0");
  if (cfg.big_x + effective_span(cfg) >= 0x1p62)
    throw Error(ErrorKind::infeasible, "scan range exceeds 64-bit integers");
  if (interval_length(cfg.big_x, cfg.spec) < 1.0)
    throw Error(ErrorKind::invalid_input, "degenerate interval: H(X) < 1");
}

std::uint64_t ceil_to_u64(double x) { return static_cast<std::uint64_t>(std::ceil(x)); }

// Distance from x to the first n in [x, end] with a factorization whose
// factors both lie in [x^(1/2)/2, 2 x^(1/2)]; negative if there is none.
double corollary_wait(double x, double end) {
  const double root = std::sqrt(x);
  std::uint64_t a_lo = static_cast<std::uint64_t>(std::max(1.0, std::floor(root / 2.0) - 1.0));
  while (!int_ge_real(4 * static_cast<u128>(a_lo) * a_lo, x)) ++a_lo;
  std::uint64_t a_hi = static_cast<std::uint64_t>(std::floor(2.0 * root) + 1.0);
  while (a_hi > 0 && !int_le_real(static_cast<u128>(a_hi) * a_hi, 4.0 * x)) --a_hi;

  bool found = false;
  u128 best = 0;
  for (std::uint64_t a = a_lo; a <= a_hi; ++a) {
    u128 q = std::max<u128>(detail::ceil_ratio(x, a), a_lo);
    if (q > a_hi) continue;
    const u128 n = q * a;
    if (!int_le_real(n, end)) continue;
    if (!found || n < best) {
      best = n;
      found = true;
    }
  }
  if (!found) return -1.0;
  return static_cast<double>(static_cast<long double>(best) - static_cast<long double>(x));
}

}  // namespace

std::string_view to_string(ScanMode mode) {
  return mode == ScanMode::theorem ? "theorem" : "corollary";
}

std::optional<ScanMode> parse_scan_mode(std::string_view name) {
  if (name == "theorem") return ScanMode::theorem;
  if (name == "corollary") return ScanMode::corollary;
  return std::nullopt;
}

std::vector<double> sample_points(const ScanConfig& cfg) {
  const double span = effective_span(cfg);
  std::vector<double> xs(cfg.samples);
  if (cfg.seed == 0) {
    for (std::uint64_t i = 0; i < cfg.samples; ++i)
      xs[i] = cfg.big_x + static_cast<double>(i) * span / static_cast<double>(cfg.samples);
  } else {
    // 53 high bits of mt19937_64 mapped to [0, 1); independent of the
    // standard library's distribution implementations.
    std::mt19937_64 gen(cfg.seed);
    for (auto& x : xs) x = cfg.big_x + static_cast<double>(gen() >> 11) * 0x1p-53 * span;
  }
  return xs;
}

std::vector<GapBucket> power_of_two_histogram(const std::vector<std::uint64_t>& gaps) {
  std::vector<GapBucket> buckets;
  std::uint64_t zeros = 0;
  int top = -1;
  for (auto g : gaps) {
    if (g == 0)
      ++zeros;
    else
      top = std::max(top, static_cast<int>(std::bit_width(g)) - 1);
  }
  if (zeros > 0) buckets.push_back({0, 0, zeros});
  const std::size_t offset = buckets.size();
  for (int k = 0; k <= top; ++k) {
    const std::uint64_t lo = std::uint64_t{1} << k;
    const std::uint64_t hi = k == 63 ? ~std::uint64_t{0} : (lo << 1) - 1;
    buckets.push_back({lo, hi, 0});
  }
  for (auto g : gaps)
    if (g != 0) ++buckets[offset + std::bit_width(g) - 1].count;
  return buckets;
}

CoverageReport coverage_scan(const ScanConfig& cfg) {
  check_config(cfg);
  const std::vector<double> xs = sample_points(cfg);
  std::vector<double> ends(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) ends[i] = xs[i] + interval_length(xs[i], cfg.spec);

  CoverageReport report;
  report.sampled = xs.size();

  if (cfg.mode == ScanMode::theorem) {
    const std::uint64_t lo = std::max<std::uint64_t>(1, ceil_to_u64(*std::min_element(xs.begin(), xs.end())));
    const std::uint64_t hi =
        static_cast<std::uint64_t>(std::floor(*std::max_element(ends.begin(), ends.end())));
    std::vector<std::uint64_t> squares;
    if (lo <= hi) {
      for (const auto& w : enumerate(lo, hi, cfg.params, {cfg.chunk_size, cfg.workers}))
        squares.push_back(w.n);
    }
    for (std::size_t i = 0; i < xs.size(); ++i) {
      auto it = std::lower_bound(squares.begin(), squares.end(), ceil_to_u64(xs[i]));
      const bool covered = it != squares.end() && int_le_real(*it, ends[i]);
      if (!covered) ++report.exceptional;
    }
    std::vector<std::uint64_t> gaps;
    for (std::size_t i = 1; i < squares.size(); ++i) gaps.push_back(squares[i] - squares[i - 1]);
    report.max_gap = gaps.empty() ? 0.0 : static_cast<double>(*std::max_element(gaps.begin(), gaps.end()));
    report.gap_histogram = power_of_two_histogram(gaps);
  } else {
    std::vector<double> waits(xs.size());
    parallel_for(
        xs.size(), [&](std::size_t i) { waits[i] = corollary_wait(xs[i], ends[i]); }, cfg.workers);
    std::vector<std::uint64_t> gaps;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      double w = waits[i];
      if (w < 0.0) {
        ++report.exceptional;
        w = std::ceil(ends[i] - xs[i]) + 1.0;
      }
      report.max_gap = std::max(report.max_gap, w);
      gaps.push_back(static_cast<std::uint64_t>(std::ceil(w)));
    }
    report.gap_histogram = power_of_two_histogram(gaps);
  }
  report.exceptional_fraction =
      static_cast<double>(report.exceptional) / static_cast<double>(report.sampled);
  return report;
}

GapStats gap_stats(std::uint64_t lo, std::uint64_t hi, const AlmostSquareParams& params,
                   unsigned workers) {
  const auto witnesses = enumerate(lo, hi, params, {1u << 20, workers});
  if (witnesses.size() < 2)
    throw Error(ErrorKind::infeasible, "insufficient data: fewer than 2 almost squares in range");
  std::vector<std::uint64_t> gaps;
  for (std::size_t i = 1; i < witnesses.size(); ++i) gaps.push_back(witnesses[i].n - witnesses[i - 1].n);
  GapStats out;
  out.max_gap = *std::max_element(gaps.begin(), gaps.end());
  out.histogram = power_of_two_histogram(gaps);
  return out;
}

std::vector<std::pair<double, double>> exceptional_trend(const std::vector<double>& xs,
                                                         const ScanConfig& templ) {
  std::vector<std::pair<double, double>> out;
  for (double x : xs) {
    ScanConfig cfg = templ;
    cfg.big_x = x;
    out.emplace_back(x, coverage_scan(cfg).exceptional_fraction);
  }
  return out;
}

}  // namespace almsq
