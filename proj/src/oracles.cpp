#include "almsq/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include "almsq/analytic.hpp"
#include "almsq/error.hpp"
#include "almsq/parallel.hpp"
#include "exact_compare.hpp"

namespace almsq {

namespace {

using detail::ceil_div_real;
using detail::floor_div_real;

struct ProductCount {
  std::uint64_t product;
  std::uint64_t count;
};

void require_lemma_window(double big_u, double big_l) {
  if (!(big_l > 0.0) || !(big_l <= big_u / 2.0))
    throw Error(ErrorKind::invalid_input, "need 0 < L <= U/2");
}

// Multiplicities of n * m for n in [block, 2 block) and m in the window, sorted by product.
std::vector<ProductCount> product_counts(std::uint64_t block, const IntegerRange& window) {
  std::vector<std::uint64_t> products;
  products.reserve((block) * window.size());
  for (std::uint64_t n = block; n < 2 * block; ++n)
    for (std::uint64_t m = window.first; m <= window.last; ++m) products.push_back(n * m);
  std::sort(products.begin(), products.end());
  std::vector<ProductCount> out;
  for (std::uint64_t p : products) {
    if (!out.empty() && out.back().product == p)
      ++out.back().count;
    else
      out.push_back({p, 1});
  }
  return out;
}

std::pair<std::vector<ProductCount>, std::vector<ProductCount>> both_sides(std::uint64_t n1,
                                                                          std::uint64_t n2,
                                                                          double big_u,
                                                                          double big_l) {
  require_lemma_window(big_u, big_l);
  if (n1 == 0 || n2 == 0) throw Error(ErrorKind::invalid_input, "N1, N2 must be >= 1");
  const IntegerRange window = window_integers(big_u, big_l);
  const double pairs =
      static_cast<double>(n1 + n2) * static_cast<double>(std::max<std::uint64_t>(window.size(), 1));
  if (pairs > kMaxCandidatePairs) throw Error(ErrorKind::infeasible, "grid too large");
  if (window.empty()) return {};
  return {product_counts(n1, window), product_counts(n2, window)};
}

// Composite Simpson over [a, b] with at most `step` spacing; integrand
// evaluated in parallel and summed in node order.
double simpson(const std::function<double(double)>& f, double a, double b, double step) {
  std::uint64_t intervals = static_cast<std::uint64_t>(std::ceil((b - a) / step));
  intervals = std::max<std::uint64_t>(intervals, 2);
  if (intervals % 2) ++intervals;
  const double h = (b - a) / static_cast<double>(intervals);
  std::vector<double> values(intervals + 1);
  parallel_for(values.size(), [&](std::size_t i) {
    const double x = i == intervals ? b : a + static_cast<double>(i) * h;
    values[i] = f(x);
  });
  long double sum = values.front() + values.back();
  for (std::uint64_t i = 1; i < intervals; ++i) sum += (i % 2 ? 4.0L : 2.0L) * values[i];
  return static_cast<double>(sum * h / 3.0L);
}

void check_step(double step, double max_step) {
  if (!(step > 0.0) || step > max_step)
    throw Error(ErrorKind::invalid_input,
                "resolution error: step must lie in (0, " + std::to_string(max_step) + "]");
}

AnalyticConfig window_config(double big_u, double big_l) {
  AnalyticConfig cfg;
  cfg.big_u = big_u;
  cfg.big_l = big_l;
  return cfg;
}

}  // namespace

std::string_view to_string(Lemma lemma) {
  switch (lemma) {
    case Lemma::diagonal: return "1";
    case Lemma::off_diagonal: return "2";
    case Lemma::second_moment: return "3";
    case Lemma::perron: return "4";
    case Lemma::mean_value: return "mv";
  }
  return "?";
}

std::optional<Lemma> parse_lemma(std::string_view name) {
  if (name == "1") return Lemma::diagonal;
  if (name == "2") return Lemma::off_diagonal;
  if (name == "3") return Lemma::second_moment;
  if (name == "4") return Lemma::perron;
  if (name == "mv") return Lemma::mean_value;
  return std::nullopt;
}

double s1_sum(std::uint64_t n1, std::uint64_t n2, double big_u, double big_l) {
  const auto [left, right] = both_sides(n1, n2, big_u, big_l);
  long double sum = 0.0L;
  std::size_t j = 0;
  for (const auto& p : left) {
    while (j < right.size() && right[j].product < p.product) ++j;
    if (j < right.size() && right[j].product == p.product)
      sum += static_cast<long double>(p.count * right[j].count) / p.product;
  }
  return static_cast<double>(sum);
}

std::uint64_t s1_solutions(std::uint64_t n1, std::uint64_t n2, double big_u, double big_l) {
  const auto [left, right] = both_sides(n1, n2, big_u, big_l);
  std::uint64_t total = 0;
  std::size_t j = 0;
  for (const auto& p : left) {
    while (j < right.size() && right[j].product < p.product) ++j;
    if (j < right.size() && right[j].product == p.product) total += p.count * right[j].count;
  }
  return total;
}

double s1_bound(std::uint64_t n1, std::uint64_t n2, double big_u, double big_l) {
  const double lg = std::log(static_cast<double>(n1) * static_cast<double>(n2) * big_u);
  return (big_l + std::sqrt(big_u)) / big_u * lg * lg;
}

double s2_sum(std::uint64_t n1, std::uint64_t n2, double big_u, double big_l) {
  const auto [left, right] = both_sides(n1, n2, big_u, big_l);
  if (static_cast<double>(left.size()) * static_cast<double>(right.size()) > kMaxCandidatePairs)
    throw Error(ErrorKind::infeasible, "grid too large");
  std::vector<double> right_inv_sqrt(right.size());
  for (std::size_t j = 0; j < right.size(); ++j)
    right_inv_sqrt[j] = static_cast<double>(right[j].count) / std::sqrt(static_cast<double>(right[j].product));
  long double total = 0.0L;
  for (const auto& p : left) {
    const double pd = static_cast<double>(p.product);
    long double row = 0.0L;
    for (std::size_t j = 0; j < right.size(); ++j) {
      if (right[j].product == p.product) continue;
      const double diff = static_cast<double>(static_cast<std::int64_t>(right[j].product) -
                                              static_cast<std::int64_t>(p.product));
      row += right_inv_sqrt[j] / std::fabs(std::log1p(diff / pd));
    }
    total += row * static_cast<long double>(p.count) / std::sqrt(pd);
  }
  return static_cast<double>(total);
}

std::array<double, 2> s2_bound_terms(std::uint64_t n1, std::uint64_t n2, double big_u,
                                     double big_l) {
  const double nn = static_cast<double>(n1) * static_cast<double>(n2);
  const double lg = std::log(nn * big_u);
  return {std::sqrt(nn) * big_l * big_l / big_u * lg, nn * big_l * big_l / (big_u * big_u) * lg};
}

double max_resolving_step(double big_t, double big_u, double big_l) {
  const double height = std::max(0.0, 0.5 * std::log(big_t / (2.0 * std::numbers::pi)));
  return std::numbers::pi / (std::log(big_u + big_l) + height);
}

double second_moment(double big_t, double big_u, double big_l, double step) {
  if (!(big_t >= 1.0)) throw Error(ErrorKind::invalid_input, "second_moment requires T >= 1");
  if (big_t == 1.0) return 0.0;
  check_step(step, max_resolving_step(big_t, big_u, big_l));
  const AnalyticConfig cfg = window_config(big_u, big_l);
  return simpson(
      [&](double t) {
        const auto z = zeta_em({0.5, t}) * dirichlet_N({0.5, t}, cfg);
        return std::norm(z);
      },
      1.0, big_t, step);
}

std::array<double, 3> second_moment_bound_terms(double big_t, double big_u, double big_l) {
  const double lg = std::log(big_t * big_u);
  return {big_t * big_l / big_u * lg * lg, std::sqrt(big_t) * big_l * big_l / big_u * lg,
          big_t * big_l * big_l / (big_u * big_u) * lg};
}

double mv_mean_value(double u, double big_u, double big_l, double step) {
  if (!(u >= 1.0)) throw Error(ErrorKind::invalid_input, "mv_mean_value requires u >= 1");
  if (u == 1.0) return 0.0;
  check_step(step, max_resolving_step(u, big_u, big_l));
  const AnalyticConfig cfg = window_config(big_u, big_l);
  return simpson([&](double t) { return std::norm(dirichlet_N({0.5, t}, cfg)); }, 1.0, u, step);
}

double mv_bound(double u, double big_u, double big_l) { return u * big_l / big_u + big_l; }

double perron_majorant(double x, double big_t, double big_u, double big_l, double perron_c) {
  if (!(x > 2.0) || !(big_t >= 2.0))
    throw Error(ErrorKind::invalid_input, "perron_majorant requires x > 2 and T >= 2");
  if (!(perron_c > 1.0)) throw Error(ErrorKind::invalid_input, "Perron abscissa must exceed 1");
  const IntegerRange window = window_integers(big_u, big_l);
  if (window.empty()) return 0.0;

  long double near = 0.0L;
  long double inv_powers = 0.0L;
  for (std::uint64_t m = window.first; m <= window.last; ++m) {
    inv_powers += std::pow(static_cast<long double>(m), -static_cast<long double>(perron_c));
    const std::uint64_t k_lo = floor_div_real(x / 2.0, m) + 1;  // m k > x/2
    const std::uint64_t k_hi = ceil_div_real(2.0 * x, m) - 1;   // m k < 2x
    for (std::uint64_t k = k_lo; k <= k_hi; ++k) {
      const double n = static_cast<double>(m * k);
      if (n == x) continue;
      near += std::min(1.0, x / (big_t * std::fabs(x - n)));
    }
  }
  const double zeta_c = zeta_em({perron_c, 0.0}).real();
  const double far = std::pow(4.0 * x, perron_c) / big_t * static_cast<double>(inv_powers) * zeta_c;
  return static_cast<double>(near) + far;
}

double perron_majorant(double x, double big_t, double big_u, double big_l) {
  return perron_majorant(x, big_t, big_u, big_l, 1.0 + 1.0 / std::log(x));
}

double perron_mean_square(double big_x, double big_y, double a, double big_t, double big_u,
                          double big_l, std::uint64_t samples) {
  if (!(a >= 1.0 && a <= 2.0)) throw Error(ErrorKind::invalid_input, "need 1 <= a <= 2");
  if (!(big_t >= 1.0 && big_y >= 1.0 && big_t <= big_x && big_y <= big_x))
    throw Error(ErrorKind::invalid_input, "need 1 <= T, Y <= X");
  if (samples == 0) throw Error(ErrorKind::invalid_input, "samples must be >= 1");
  const double c = 1.0 + 1.0 / std::log(big_x);
  const double h = big_y / static_cast<double>(samples);
  std::vector<double> sq(samples);
  parallel_for(samples, [&](std::size_t i) {
    const double y = big_x + (static_cast<double>(i) + 0.5) * h;
    const double r = perron_majorant(a * y, std::max(big_t, 2.0), big_u, big_l, c);
    sq[i] = r * r;
  });
  long double sum = 0.0L;
  for (double v : sq) sum += v;
  return static_cast<double>(sum / static_cast<long double>(samples));
}

std::array<double, 2> perron_bound_terms(double big_x, double big_y, double big_t, double big_u,
                                         double big_l) {
  const double lg2 = std::log(big_x) * std::log(big_x);
  return {big_l * big_l * big_x * big_x / (big_u * big_u * big_t * big_t) * lg2,
          big_x * big_l * big_l / (big_t * big_y) * lg2};
}

MeasureBound measure_bound(double big_x, const AlmostSquareParams& params, double eps) {
  MeasureBound out;
  out.choice = choose_parameters(big_x, params, eps);
  const AnalyticConfig& c = out.choice.config;
  const double lg = std::log(big_x);
  const double big_y = out.choice.big_y;
  out.terms = {c.big_t * (c.big_u / c.big_l) * lg * lg * lg,
               std::sqrt(c.big_t) * c.big_u * lg * lg,
               big_y * c.big_v * c.big_v / (c.big_t * c.big_t) * lg * lg,
               c.big_v * c.big_v * c.big_u * c.big_u / (big_x * c.big_t) * lg * lg};
  out.predicted_fraction = (out.terms[0] + out.terms[1] + out.terms[2] + out.terms[3]) / big_y;
  out.vacuous = out.predicted_fraction >= 1.0;
  return out;
}

LemmaGrid default_grid(Lemma lemma) {
  LemmaGrid g;
  switch (lemma) {
    case Lemma::diagonal:
    case Lemma::off_diagonal:
      g.n1_ranges = {4, 16, 32};
      g.n2_ranges = {4, 16, 32};
      g.u_values = {32, 64, 128};
      g.l_values = {8, 16, 32};
      g.beta = 0.4;
      break;
    case Lemma::second_moment:
      g.u_values = {16, 36, 64};
      g.l_values = {8, 12, 16};
      g.t_values = {50, 100, 200};
      g.beta = 0.5;
      break;
    case Lemma::perron:
      g.u_values = {300, 100};
      g.l_values = {30, 20};
      g.t_values = {100, 1000};
      g.x_values = {1e5};
      g.y_values = {1e3};
      g.a_values = {1, 2};
      g.samples = 200;
      break;
    case Lemma::mean_value:
      g.u_values = {10, 50, 100, 500, 1000};
      g.l_values = {2, 10, 25, 100, 500};
      g.t_values = {100, 1000};
      break;
  }
  return g;
}

void validate_grid(Lemma lemma, const LemmaGrid& g) {
  auto fail = [](const std::string& what) { throw Error(ErrorKind::invalid_input, "grid: " + what); };
  if (g.u_values.size() != g.l_values.size()) fail("u_values and l_values must pair up");
  if (g.u_values.empty()) fail("no (U, L) pairs");
  for (std::size_t i = 0; i < g.u_values.size(); ++i) {
    const double u = g.u_values[i], l = g.l_values[i];
    const std::string at = " at U=" + std::to_string(u) + ", L=" + std::to_string(l);
    switch (lemma) {
      case Lemma::diagonal:
        if (!(l > 0.0 && l <= u / 2.0)) fail("lemma 1 needs 0 < L <= U/2" + at);
        break;
      case Lemma::off_diagonal:
        if (!(g.beta > 0.0 && g.beta < 0.5)) fail("lemma 2 needs 0 < beta < 1/2");
        if (!(std::pow(u, g.beta) < l && l <= u / 2.0)) fail("lemma 2 needs U^beta < L <= U/2" + at);
        break;
      case Lemma::second_moment:
        if (!(g.beta >= 0.5 && g.beta <= 1.0)) fail("lemma 3 needs 1/2 <= beta <= 1");
        if (!(std::pow(u, g.beta) < l && l <= u / 2.0)) fail("lemma 3 needs U^beta < L <= U/2" + at);
        break;
      case Lemma::perron:
      case Lemma::mean_value:
        if (!(l >= 0.0 && l <= u / 2.0 && u - l >= 0.5)) fail("needs 0 <= L <= U/2" + at);
        break;
    }
  }
  if ((lemma == Lemma::diagonal || lemma == Lemma::off_diagonal) &&
      (g.n1_ranges.empty() || g.n2_ranges.empty()))
    fail("n1_ranges and n2_ranges must be non-empty");
  if (lemma == Lemma::second_moment || lemma == Lemma::mean_value || lemma == Lemma::perron) {
    if (g.t_values.empty()) fail("t_values must be non-empty");
    for (double t : g.t_values)
      if (!(t >= 1.0)) fail("t_values must be >= 1");
  }
  if (lemma == Lemma::perron) {
    if (g.x_values.empty() || g.y_values.empty() || g.a_values.empty()) fail("lemma 4 needs X, Y, a values");
    for (double x : g.x_values) {
      for (double a : g.a_values)
        if (!(a >= 1.0 && a <= 2.0)) fail("lemma 4 needs 1 <= a <= 2");
      for (double y : g.y_values)
        if (!(y >= 1.0 && y <= x)) fail("lemma 4 needs 1 <= Y <= X");
      for (double t : g.t_values)
        if (!(t >= 2.0 && t <= x)) fail("lemma 4 needs 2 <= T <= X");
    }
    if (g.samples == 0) fail("samples must be >= 1");
  }
}

std::vector<BoundReport> verify_lemma(Lemma lemma, const LemmaGrid& g, unsigned workers) {
  validate_grid(lemma, g);
  using Point = std::function<BoundReport()>;
  std::vector<Point> points;
  auto step_for = [&](double t, double u, double l) {
    return g.step > 0.0 ? g.step : max_resolving_step(t, u, l) / 8.0;
  };
  auto finish = [lemma](BoundReport r) {
    r.lemma = lemma;
    r.ratio = r.lhs / r.bound;
    return r;
  };

  for (std::size_t i = 0; i < g.u_values.size(); ++i) {
    const double u = g.u_values[i], l = g.l_values[i];
    switch (lemma) {
      case Lemma::diagonal:
      case Lemma::off_diagonal:
        for (auto n1 : g.n1_ranges)
          for (auto n2 : g.n2_ranges)
            points.push_back([=] {
              BoundReport r;
              r.grid_point = {{"N1", double(n1)}, {"N2", double(n2)}, {"U", u}, {"L", l}};
              if (lemma == Lemma::diagonal) {
                r.lhs = s1_sum(n1, n2, u, l);
                r.bound = s1_bound(n1, n2, u, l);
                r.bound_terms = {r.bound};
              } else {
                r.lhs = s2_sum(n1, n2, u, l);
                const auto terms = s2_bound_terms(n1, n2, u, l);
                r.bound_terms = {terms[0], terms[1]};
                r.bound = terms[0] + terms[1];
              }
              return finish(r);
            });
        break;
      case Lemma::second_moment:
        for (double t : g.t_values)
          points.push_back([=] {
            BoundReport r;
            r.grid_point = {{"T", t}, {"U", u}, {"L", l}};
            r.lhs = second_moment(t, u, l, step_for(t, u, l));
            const auto terms = second_moment_bound_terms(t, u, l);
            r.bound_terms = {terms[0], terms[1], terms[2]};
            r.bound = terms[0] + terms[1];
            return finish(r);
          });
        break;
      case Lemma::mean_value:
        for (double t : g.t_values)
          points.push_back([=] {
            BoundReport r;
            r.grid_point = {{"u", t}, {"U", u}, {"L", l}};
            r.lhs = mv_mean_value(t, u, l, step_for(t, u, l));
            r.bound = mv_bound(t, u, l);
            r.bound_terms = {t * l / u, l};
            return finish(r);
          });
        break;
      case Lemma::perron:
        for (double x : g.x_values)
          for (double y : g.y_values)
            for (double a : g.a_values)
              for (double t : g.t_values)
                points.push_back([=, samples = g.samples] {
                  BoundReport r;
                  r.grid_point = {{"X", x}, {"Y", y}, {"a", a}, {"T", t}, {"U", u}, {"L", l}};
                  r.lhs = perron_mean_square(x, y, a, t, u, l, samples);
                  const auto terms = perron_bound_terms(x, y, t, u, l);
                  r.bound_terms = {terms[0], terms[1]};
                  r.bound = terms[0] + terms[1];
                  return finish(r);
                });
        break;
    }
  }

  std::vector<BoundReport> out(points.size());
  parallel_for(points.size(), [&](std::size_t i) { out[i] = points[i](); }, workers);
  return out;
}

}  // namespace almsq
