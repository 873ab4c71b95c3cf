#include "almsq/core.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "almsq/error.hpp"

namespace almsq {

namespace {

// Relative radius covering the rounding of sqrt, pow and the final +/- in
// double precision (about 6 ulps), with generous headroom.
constexpr double kFastRelRadius = 0x1p-44;
constexpr mpfr_prec_t kStartPrecision = 64;
constexpr mpfr_prec_t kMaxPrecision = 1 << 16;

class Mpfr {
 public:
  explicit Mpfr(mpfr_prec_t prec) { mpfr_init2(v_, prec); }
  ~Mpfr() { mpfr_clear(v_); }
  Mpfr(const Mpfr&) = delete;
  Mpfr& operator=(const Mpfr&) = delete;
  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }

 private:
  mpfr_t v_;
};

enum class Endpoint { lower, upper };

// Encloses the endpoint sqrt(n) -/+ C n^theta in [lo, hi] at the working
// precision, rounding every step outward.
void enclose_endpoint(std::uint64_t n, const AlmostSquareParams& params, Endpoint which,
                      mpfr_prec_t prec, Mpfr& lo, Mpfr& hi) {
  Mpfr nn(prec), s_lo(prec), s_hi(prec);
  mpfr_set_ui(nn.get(), n, MPFR_RNDN);  // exact: prec >= 64
  mpfr_sqrt(s_lo.get(), nn.get(), MPFR_RNDD);
  mpfr_sqrt(s_hi.get(), nn.get(), MPFR_RNDU);

  if (params.theta == 0.5) {
    // sqrt(n) -/+ C sqrt(n) = (1 -/+ C) sqrt(n); irrational parts cancel
    // symbolically instead of numerically.
    Mpfr c(prec), k_lo(prec), k_hi(prec);
    mpfr_set_d(c.get(), params.c_coef, MPFR_RNDN);
    if (which == Endpoint::lower) {
      mpfr_ui_sub(k_lo.get(), 1, c.get(), MPFR_RNDD);
      mpfr_ui_sub(k_hi.get(), 1, c.get(), MPFR_RNDU);
    } else {
      mpfr_add_ui(k_lo.get(), c.get(), 1, MPFR_RNDD);
      mpfr_add_ui(k_hi.get(), c.get(), 1, MPFR_RNDU);
    }
    if (mpfr_sgn(k_lo.get()) >= 0) {
      mpfr_mul(lo.get(), k_lo.get(), s_lo.get(), MPFR_RNDD);
      mpfr_mul(hi.get(), k_hi.get(), s_hi.get(), MPFR_RNDU);
    } else if (mpfr_sgn(k_hi.get()) <= 0) {
      mpfr_mul(lo.get(), k_lo.get(), s_hi.get(), MPFR_RNDD);
      mpfr_mul(hi.get(), k_hi.get(), s_lo.get(), MPFR_RNDU);
    } else {
      mpfr_mul(lo.get(), k_lo.get(), s_hi.get(), MPFR_RNDD);
      mpfr_mul(hi.get(), k_hi.get(), s_hi.get(), MPFR_RNDU);
    }
    return;
  }

  Mpfr theta(prec), c(prec), p_lo(prec), p_hi(prec), w_lo(prec), w_hi(prec);
  mpfr_set_d(theta.get(), params.theta, MPFR_RNDN);
  mpfr_set_d(c.get(), params.c_coef, MPFR_RNDN);
  mpfr_pow(p_lo.get(), nn.get(), theta.get(), MPFR_RNDD);
  mpfr_pow(p_hi.get(), nn.get(), theta.get(), MPFR_RNDU);
  mpfr_mul(w_lo.get(), p_lo.get(), c.get(), MPFR_RNDD);
  mpfr_mul(w_hi.get(), p_hi.get(), c.get(), MPFR_RNDU);
  if (which == Endpoint::lower) {
    mpfr_sub(lo.get(), s_lo.get(), w_hi.get(), MPFR_RNDD);
    mpfr_sub(hi.get(), s_hi.get(), w_lo.get(), MPFR_RNDU);
  } else {
    mpfr_add(lo.get(), s_lo.get(), w_lo.get(), MPFR_RNDD);
    mpfr_add(hi.get(), s_hi.get(), w_hi.get(), MPFR_RNDU);
  }
}

// Sign of a - endpoint, certified.
int compare_to_endpoint(std::uint64_t a, std::uint64_t n, const AlmostSquareParams& params,
                        Endpoint which) {
  for (mpfr_prec_t prec = kStartPrecision; prec <= kMaxPrecision; prec *= 2) {
    Mpfr lo(prec), hi(prec);
    enclose_endpoint(n, params, which, prec, lo, hi);
    if (mpfr_cmp_ui(lo.get(), a) > 0) return -1;
    if (mpfr_cmp_ui(hi.get(), a) < 0) return 1;
    if (mpfr_equal_p(lo.get(), hi.get())) return 0;  // exact endpoint equal to a
  }
  throw Error(ErrorKind::precision, "window comparison undecided for a=" + std::to_string(a) +
                                        ", n=" + std::to_string(n));
}

void require_positive(std::uint64_t v, const char* name) {
  if (v == 0) throw Error(ErrorKind::invalid_input, std::string(name) + " must be >= 1");
}

}  // namespace

void validate(const AlmostSquareParams& params) {
  if (!std::isfinite(params.theta) || params.theta < 0.0 || params.theta > 0.5)
    throw Error(ErrorKind::invalid_input, "theta must lie in [0, 1/2]");
  if (!std::isfinite(params.c_coef) || !(params.c_coef > 0.0))
    throw Error(ErrorKind::invalid_input, "C must be finite and > 0");
}

std::string_view to_string(IntervalPreset preset) {
  switch (preset) {
    case IntervalPreset::theorem: return "theorem";
    case IntervalPreset::corollary: return "corollary";
    case IntervalPreset::conjecture: return "conjecture";
    case IntervalPreset::custom: return "custom";
  }
  return "custom";
}

std::optional<IntervalPreset> parse_interval_preset(std::string_view name) {
  if (name == "theorem") return IntervalPreset::theorem;
  if (name == "corollary") return IntervalPreset::corollary;
  if (name == "conjecture") return IntervalPreset::conjecture;
  if (name == "custom") return IntervalPreset::custom;
  return std::nullopt;
}

IntervalSpec IntervalSpec::theorem(double theta, double eps) {
  return {1.0, 1.0 - 2.0 * theta, 5.0 + eps, IntervalPreset::theorem};
}

IntervalSpec IntervalSpec::corollary(double eps) {
  return {1.0, 0.0, 5.0 + eps, IntervalPreset::corollary};
}

IntervalSpec IntervalSpec::conjecture(double theta, double eps) {
  return {1.0, 0.5 - theta + eps, 0.0, IntervalPreset::conjecture};
}

IntervalSpec IntervalSpec::custom(double coef, double pow, double logpow) {
  return {coef, pow, logpow, IntervalPreset::custom};
}

std::uint64_t isqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(n)));
  using u128 = unsigned __int128;
  while (static_cast<u128>(r) * r > n) --r;
  while (static_cast<u128>(r + 1) * (r + 1) <= n) ++r;
  return r;
}

Window window_of(std::uint64_t n, const AlmostSquareParams& params) {
  require_positive(n, "n");
  validate(params);
  const double nd = static_cast<double>(n);
  const double s = std::sqrt(nd);
  const double w = params.c_coef * std::pow(nd, params.theta);
  if (!std::isfinite(w) || !std::isfinite(s + w))
    throw Error(ErrorKind::range, "C n^theta is not representable");
  Window out;
  out.lo = std::max(0.0, s - w);
  out.hi = s + w;
  out.radius = (s + w) * kFastRelRadius + 0x1p-1000;
  return out;
}

bool in_window_exact(std::uint64_t a, std::uint64_t n, const AlmostSquareParams& params) {
  require_positive(a, "a");
  require_positive(n, "n");
  validate(params);
  if (compare_to_endpoint(a, n, params, Endpoint::lower) < 0) return false;
  return compare_to_endpoint(a, n, params, Endpoint::upper) <= 0;
}

bool in_window(std::uint64_t a, std::uint64_t n, const Window& window,
               const AlmostSquareParams& params) {
  require_positive(a, "a");
  const long double av = static_cast<long double>(a);
  const long double r = window.radius;
  const long double lo = window.lo;
  const long double hi = window.hi;
  if (av < lo - r || av > hi + r) return false;
  if (av > lo + r && av < hi - r) return true;
  return in_window_exact(a, n, params);
}

bool in_window(std::uint64_t a, std::uint64_t n, const AlmostSquareParams& params) {
  return in_window(a, n, window_of(n, params), params);
}

double interval_length(double x, const IntervalSpec& spec) {
  if (!(x > std::numbers::e))
    throw Error(ErrorKind::invalid_input, "interval_length requires x > e");
  return spec.coef * std::pow(x, spec.pow) * std::pow(std::log(x), spec.logpow);
}

ParameterChoice parameter_formulas(double big_x, const AlmostSquareParams& params, double eps) {
  if (!(big_x > std::numbers::e)) throw Error(ErrorKind::invalid_input, "X must exceed e");
  const double log_x = std::log(big_x);
  const double c = params.c_coef;
  ParameterChoice out;
  AnalyticConfig& cfg = out.config;
  cfg.big_u = std::sqrt(big_x);
  cfg.big_l = c * std::pow(big_x, params.theta) / (2.0 * c + 3.0);
  cfg.big_t = std::pow(big_x, 2.0 * params.theta) / std::pow(log_x, 4.0 + eps / 2.0);
  cfg.big_v = std::pow(big_x, 2.0 * params.theta) / std::pow(log_x, 5.0 + eps);
  cfg.eta = 0.5;
  cfg.perron_c = 1.0 + 1.0 / log_x;
  out.big_y = cfg.big_u * cfg.big_l;
  return out;
}

ParameterChoice choose_parameters(double big_x, const AlmostSquareParams& params, double eps) {
  validate(params);
  if (!(params.theta > 0.25))
    throw Error(ErrorKind::invalid_input, "parameter choice needs 1/4 < theta <= 1/2");
  if (!(eps > 0.0)) throw Error(ErrorKind::invalid_input, "eps must be > 0");
  ParameterChoice out = parameter_formulas(big_x, params, eps);
  if (out.config.big_v < 2.0 || out.config.big_t < 2.0)
    throw Error(ErrorKind::infeasible, "X too small for these parameters (V = " +
                                           std::to_string(out.config.big_v) + ", T = " +
                                           std::to_string(out.config.big_t) + ")");
  return out;
}

}  // namespace almsq
