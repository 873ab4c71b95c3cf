#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "almsq/core.hpp"

namespace almsq {

enum class ScanMode { theorem, corollary };

std::string_view to_string(ScanMode mode);
std::optional<ScanMode> parse_scan_mode(std::string_view name);

/// Coverage experiment over x in [X, X + span]; span = 0 means span = X,
/// i.e. the range [X, 2X].
struct ScanConfig {
  double big_x = 1e6;
  double span = 0.0;
  AlmostSquareParams params;
  IntervalSpec spec;
  std::uint64_t samples = 1000;
  std::uint64_t seed = 0;  // 0 = evenly spaced samples, otherwise mt19937_64 seed
  ScanMode mode = ScanMode::theorem;
  std::uint64_t chunk_size = 1u << 20;
  unsigned workers = 0;
};

/// Gap histogram bucket [lo, hi] (inclusive) for gaps in [2^k, 2^(k+1)).
struct GapBucket {
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;
  std::uint64_t count = 0;

  friend bool operator==(const GapBucket&, const GapBucket&) = default;
};

/// Outcome of a coverage scan. In theorem mode max_gap / gap_histogram
/// describe consecutive almost squares in the scanned range. In corollary
/// mode they describe, per sample, the distance from x to the first
/// qualifying integer (exceptional samples contribute ceil(H(x)) + 1).
struct CoverageReport {
  std::uint64_t sampled = 0;
  std::uint64_t exceptional = 0;
  double exceptional_fraction = 0.0;
  double max_gap = 0.0;
  std::vector<GapBucket> gap_histogram;
};

struct GapStats {
  std::uint64_t max_gap = 0;
  std::vector<GapBucket> histogram;
};

/// Sample positions used by coverage_scan for cfg, in order.
std::vector<double> sample_points(const ScanConfig& cfg);

/// Fraction of sampled x whose interval [x, x + H(x)] contains no almost
/// square (theorem mode) or no n = ab with x^(1/2)/2 <= a, b <= 2 x^(1/2)
/// (corollary mode).
CoverageReport coverage_scan(const ScanConfig& cfg);

/// Gaps between consecutive almost squares in [lo, hi], bucketed by powers of two.
GapStats gap_stats(std::uint64_t lo, std::uint64_t hi, const AlmostSquareParams& params,
                   unsigned workers = 0);

/// Power-of-two histogram of positive gaps.
std::vector<GapBucket> power_of_two_histogram(const std::vector<std::uint64_t>& gaps);

/// coverage_scan for each X with every other setting taken from the template.
std::vector<std::pair<double, double>> exceptional_trend(const std::vector<double>& xs,
                                                         const ScanConfig& templ);

}  // namespace almsq
