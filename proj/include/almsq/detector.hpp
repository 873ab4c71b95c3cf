#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "almsq/core.hpp"

namespace almsq {

/// Certified factorization n = a * b with a <= b, both factors in the window of n.
struct Witness {
  std::uint64_t n = 0;
  std::uint64_t a = 0;
  std::uint64_t b = 0;

  friend bool operator==(const Witness&, const Witness&) = default;
};

/// n = a * b with x^(1/2)/2 <= a <= b <= 2 x^(1/2), bounds taken from the anchor x.
struct CorollaryWitness {
  std::uint64_t n = 0;
  std::uint64_t a = 0;
  std::uint64_t b = 0;
  double x = 0.0;

  friend bool operator==(const CorollaryWitness&, const CorollaryWitness&) = default;
};

struct EnumerateOptions {
  std::uint64_t chunk_size = 1u << 20;  // integers per segment
  unsigned workers = 0;                 // 0 = worker_count()
};

/// Witness with the smallest qualifying a, found by trial division over the
/// part of the window below sqrt(n).
std::optional<Witness> certify(std::uint64_t n, const AlmostSquareParams& params);

/// All almost squares in [lo, hi], one witness each (smallest a), sorted by n.
/// Generates products a * b from factor pairs near sqrt and keeps those whose
/// factors are both in the window of the product. Segmented over [lo, hi];
/// output does not depend on chunk size or worker count.
std::vector<Witness> enumerate(std::uint64_t lo, std::uint64_t hi,
                               const AlmostSquareParams& params,
                               const EnumerateOptions& options = {});

/// Same contract as enumerate, computed as certify(n) for every n in [lo, hi].
std::vector<Witness> enumerate_oracle(std::uint64_t lo, std::uint64_t hi,
                                      const AlmostSquareParams& params,
                                      const EnumerateOptions& options = {});

/// Most balanced factorization n = ab (largest a <= sqrt(n)) with both
/// factors in [x^(1/2)/2, 2 x^(1/2)].
std::optional<CorollaryWitness> corollary_certify(std::uint64_t n, double x);

}  // namespace almsq
