#include "almsq/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "almsq/error.hpp"
#include "almsq/parallel.hpp"
#include "almsq/special.hpp"
#include "exact_compare.hpp"

namespace almsq {

namespace {

using cplx = std::complex<double>;

constexpr double kTwoPi = 2.0 * std::numbers::pi;

using detail::ceil_div_real;
using detail::floor_div_real;

// n^(-sigma - i t), phase reduced in extended precision.
cplx inverse_power(std::uint64_t n, double sigma, double t) {
  const long double ln = std::log(static_cast<long double>(n));
  const long double mag = std::exp(-static_cast<long double>(sigma) * ln);
  const long double phase = -static_cast<long double>(t) * ln;
  return {static_cast<double>(mag * std::cos(phase)), static_cast<double>(mag * std::sin(phase))};
}

void require_em_args(ComplexPoint s, std::uint64_t terms, int corrections) {
  if (s.sigma == 1.0 && s.t == 0.0) throw Error(ErrorKind::invalid_input, "pole of zeta at s = 1");
  if (terms < 10) throw Error(ErrorKind::invalid_input, "Euler-Maclaurin needs terms >= 10");
  if (corrections < 0 || corrections > 12)
    throw Error(ErrorKind::invalid_input, "corrections must lie in [0, 12]");
}

// Multiples q * n (q >= 1) inside [lo, hi].
std::uint64_t multiples_in(double lo, double hi, std::uint64_t n) {
  const std::uint64_t first = std::max<std::uint64_t>(1, ceil_div_real(lo, n));
  const std::uint64_t last = floor_div_real(hi, n);
  return last >= first ? last - first + 1 : 0;
}

double pairwise_sum(const std::vector<double>& v, std::size_t lo, std::size_t hi) {
  if (hi - lo <= 32) {
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) s += v[i];
    return s;
  }
  const std::size_t mid = lo + (hi - lo) / 2;
  return pairwise_sum(v, lo, mid) + pairwise_sum(v, mid, hi);
}

double pairwise_sum(const std::vector<double>& v) { return pairwise_sum(v, 0, v.size()); }

IntegerRange nonempty_window(const AnalyticConfig& cfg) {
  if (!(cfg.big_l >= 0.0) || !(cfg.big_u - cfg.big_l >= 0.5))
    throw Error(ErrorKind::invalid_input, "window needs L >= 0 and U - L >= 1/2");
  IntegerRange r = window_integers(cfg.big_u, cfg.big_l);
  if (r.empty()) throw Error(ErrorKind::invalid_input, "empty window: no integer in [U-L, U+L]");
  return r;
}

}  // namespace

std::complex<double> zeta_em(ComplexPoint sp, std::uint64_t terms, int corrections) {
  require_em_args(sp, terms, corrections);
  const cplx s = sp.value();
  long double re = 0.0L, im = 0.0L;
  for (std::uint64_t n = 1; n < terms; ++n) {
    const cplx v = inverse_power(n, sp.sigma, sp.t);
    re += v.real();
    im += v.imag();
  }
  const double big_n = static_cast<double>(terms);
  const cplx n_pow = inverse_power(terms, sp.sigma, sp.t);  // N^-s
  cplx tail = big_n * n_pow / (s - 1.0) + 0.5 * n_pow;

  // B_2k / (2k)! * s (s+1) ... (s+2k-2) * N^(-s-2k+1)
  cplx rising = s;
  cplx power = n_pow / big_n;
  long double factorial = 2.0L;
  for (int k = 1; k <= corrections; ++k) {
    tail += static_cast<double>(bernoulli_even(k) / factorial) * rising * power;
    rising *= (s + static_cast<double>(2 * k - 1)) * (s + static_cast<double>(2 * k));
    power /= big_n * big_n;
    factorial *= static_cast<long double>(2 * k + 1) * static_cast<long double>(2 * k + 2);
  }
  return cplx(static_cast<double>(re), static_cast<double>(im)) + tail;
}

double zeta_em_error_bound(ComplexPoint sp, std::uint64_t terms, int corrections) {
  require_em_args(sp, terms, corrections);
  const cplx s = sp.value();
  const double denom = sp.sigma + 2.0 * corrections + 1.0;
  if (!(denom > 0.0)) throw Error(ErrorKind::invalid_input, "error bound needs sigma > -2K-1");
  long double rising = 1.0L;
  for (int j = 0; j <= 2 * corrections + 1; ++j) rising *= std::abs(s + static_cast<double>(j));
  long double factorial = 1.0L;
  for (int j = 2; j <= 2 * corrections + 2; ++j) factorial *= j;
  const long double b = std::fabs(bernoulli_even(corrections + 1));
  const long double n_pow =
      std::pow(static_cast<long double>(terms), -static_cast<long double>(denom));
  return static_cast<double>(rising * b / factorial * n_pow / denom);
}

std::uint64_t default_em_terms(ComplexPoint s) {
  return std::max<std::uint64_t>(16, static_cast<std::uint64_t>(std::ceil(std::abs(s.value()))) + 16);
}

std::complex<double> zeta_em(ComplexPoint s) { return zeta_em(s, default_em_terms(s)); }

std::complex<double> chi(ComplexPoint sp) {
  const cplx s = sp.value();
  if (sp.t == 0.0 && std::floor(sp.sigma) == sp.sigma) {
    const double k = sp.sigma;
    if (k > 0.0 && std::fmod(k, 2.0) == 1.0) throw Error(ErrorKind::invalid_input, "pole of chi");
    if (k <= 0.0 && std::fmod(k, 2.0) == 0.0) return 0.0;  // Gamma pole, cos finite
    if (k < 0.0) return 1.0 / chi({1.0 - k, 0.0});          // Gamma pole meets cos zero
  }
  const cplx log_chi = s * std::log(kTwoPi) - std::log(2.0) - log_gamma(s) -
                       log_cos(std::numbers::pi * s / 2.0);
  return std::exp(log_chi);
}

std::complex<double> zeta_afe(double t) {
  const double at = std::fabs(t);
  if (!(at >= 2.0)) throw Error(ErrorKind::invalid_input, "zeta_afe requires |t| >= 2");
  const double bound = at / kTwoPi;
  auto m = static_cast<std::uint64_t>(std::floor(std::sqrt(bound)));
  while (m > 0 && static_cast<double>(m) * static_cast<double>(m) > bound) --m;
  while (static_cast<double>(m + 1) * static_cast<double>(m + 1) <= bound) ++m;
  cplx first = 0.0, second = 0.0;
  for (std::uint64_t n = 1; n <= m; ++n) {
    first += inverse_power(n, 0.5, t);
    second += inverse_power(n, 0.5, -t);
  }
  return first + chi({0.5, t}) * second;
}

double convexity_ratio(double sigma, double t) {
  if (!(sigma >= 0.0 && sigma <= 1.0)) throw Error(ErrorKind::invalid_input, "sigma must lie in [0, 1]");
  if (!(std::fabs(t) >= 2.0)) throw Error(ErrorKind::invalid_input, "|t| must be >= 2");
  const double scale = std::pow(std::fabs(t) + 2.0, (1.0 - sigma) / 3.0) * std::log(std::fabs(t));
  return std::abs(zeta_em({sigma, t})) / scale;
}

IntegerRange window_integers(double big_u, double big_l) {
  const double lo = std::max(1.0, std::ceil(big_u - big_l));
  const double hi = std::floor(big_u + big_l);
  if (!(hi >= lo)) return {};
  if (hi >= 0x1p62) throw Error(ErrorKind::range, "window exceeds 64-bit integers");
  return {static_cast<std::uint64_t>(lo), static_cast<std::uint64_t>(hi)};
}

std::complex<double> dirichlet_N(ComplexPoint s, const AnalyticConfig& cfg) {
  const IntegerRange r = nonempty_window(cfg);
  long double re = 0.0L, im = 0.0L;
  for (std::uint64_t n = r.first; n <= r.last; ++n) {
    const cplx v = inverse_power(n, s.sigma, s.t);
    re += v.real();
    im += v.imag();
  }
  return {static_cast<double>(re), static_cast<double>(im)};
}

std::uint64_t phi_count(double y, const AnalyticConfig& cfg) {
  if (!(y > 0.0)) throw Error(ErrorKind::invalid_input, "phi_count requires y > 0");
  if (!(cfg.big_v > 0.0)) throw Error(ErrorKind::invalid_input, "V must be > 0");
  const IntegerRange r = window_integers(cfg.big_u, cfg.big_l);
  const double upper = y + y / cfg.big_v;
  std::uint64_t count = 0;
  for (std::uint64_t n = r.first; n <= r.last; ++n) count += multiples_in(y, upper, n);
  return count;
}

double main_term(double y, const AnalyticConfig& cfg) {
  if (!(y > 0.0)) throw Error(ErrorKind::invalid_input, "main_term requires y > 0");
  return y / cfg.big_v * dirichlet_N({1.0, 0.0}, cfg).real();
}

std::string_view to_string(QuadratureMode mode) {
  return mode == QuadratureMode::exact ? "exact" : "midpoint";
}

std::optional<QuadratureMode> parse_quadrature_mode(std::string_view name) {
  if (name == "exact") return QuadratureMode::exact;
  if (name == "midpoint") return QuadratureMode::midpoint;
  return std::nullopt;
}

DiscrepancyReport discrepancy(double big_x, double big_y, const AnalyticConfig& cfg,
                              std::uint64_t samples, QuadratureMode mode) {
  if (!(big_x > 0.0) || !(big_y > 0.0))
    throw Error(ErrorKind::invalid_input, "discrepancy requires X > 0 and Y > 0");
  if (!(cfg.big_v > 0.0)) throw Error(ErrorKind::invalid_input, "V must be > 0");
  const IntegerRange r = nonempty_window(cfg);
  const double n_at_one = dirichlet_N({1.0, 0.0}, cfg).real();
  const double slope = n_at_one / cfg.big_v;  // main term is slope * y
  const double stretch = 1.0 + 1.0 / cfg.big_v;

  DiscrepancyReport report;
  report.mode = mode;
  report.main_term_sq = (big_x * slope) * (big_x * slope);

  if (mode == QuadratureMode::midpoint) {
    if (samples < 2) throw Error(ErrorKind::invalid_input, "discrepancy requires samples >= 2");
    const double h = big_y / static_cast<double>(samples);
    std::vector<double> sq(samples), err(samples);
    parallel_for(samples, [&](std::size_t i) {
      const double a = big_x + static_cast<double>(i) * h;
      const double b = a + h;
      const double y = a + 0.5 * h;
      const double upper = y + y / cfg.big_v;
      std::uint64_t phi = 0, jumps = 0;
      for (std::uint64_t n = r.first; n <= r.last; ++n) {
        phi += multiples_in(y, upper, n);
        jumps += multiples_in(a, b, n) + multiples_in(a * stretch, b * stretch, n);
      }
      const double f = static_cast<double>(phi) - slope * y;
      // Within the cell the integrand moves by at most one per jump plus the
      // linear drift, which bounds |f^2 - f(mid)^2|.
      const double drift = static_cast<double>(jumps) + slope * h / 2.0;
      sq[i] = f * f;
      err[i] = drift * (2.0 * std::fabs(f) + drift);
    });
    report.samples = samples;
    report.i_xy = pairwise_sum(sq) / static_cast<double>(samples);
    report.tolerance = pairwise_sum(err) / static_cast<double>(samples);
    return report;
  }

  if (big_y > kExactDiscrepancyMaxY)
    throw Error(ErrorKind::infeasible, "exact discrepancy limited to Y <= 1e6");
  const double end = big_x + big_y;
  const double p_max = end + end / cfg.big_v;
  struct Event {
    double pos;
    int delta;
  };
  std::vector<Event> events;
  // Each product p = n n' counts for y in [p / (1 + 1/V), p].
  for (std::uint64_t n = r.first; n <= r.last; ++n) {
    const std::uint64_t q_lo = std::max<std::uint64_t>(1, ceil_div_real(big_x, n));
    const std::uint64_t q_hi = floor_div_real(p_max, n);
    for (std::uint64_t q = q_lo; q <= q_hi; ++q) {
      const double p = static_cast<double>(q * n);
      const double from = std::max(p / stretch, big_x);
      const double to = std::min(p, end);
      if (from > to) continue;
      events.push_back({from, +1});
      events.push_back({to, -1});
    }
  }
  std::sort(events.begin(), events.end(),
            [](const Event& l, const Event& r) { return l.pos < r.pos || (l.pos == r.pos && l.delta > r.delta); });

  std::vector<double> pieces;
  pieces.reserve(events.size() + 1);
  auto integrate = [&](double a, double b, long count) {
    if (b <= a) return;
    const double ga = static_cast<double>(count) - slope * a;
    const double gb = static_cast<double>(count) - slope * b;
    pieces.push_back((b - a) * (ga * ga + ga * gb + gb * gb) / 3.0);
  };
  double pos = big_x;
  long count = 0;
  for (const Event& e : events) {
    integrate(pos, e.pos, count);
    pos = std::max(pos, e.pos);
    count += e.delta;
  }
  integrate(pos, end, count);
  report.samples = events.size();
  report.i_xy = pairwise_sum(pieces) / big_y;
  report.tolerance = 0.0;
  return report;
}

}  // namespace almsq
