#include "almsq/special.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "almsq/error.hpp"

namespace almsq {

namespace {

using cplx = std::complex<double>;

constexpr double kPi = std::numbers::pi;
constexpr int kLanczosG = 7;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

bool is_nonpositive_integer(cplx z) {
  return z.imag() == 0.0 && z.real() <= 0.0 && std::floor(z.real()) == z.real();
}

}  // namespace

cplx log_sin(cplx z) {
  const cplx i{0.0, 1.0};
  if (z.imag() > 1.0) {
    // sin z = e^{-iz} (e^{2iz} - 1) / (2i), |e^{2iz}| < 1
    return -i * z + std::log((std::exp(2.0 * i * z) - 1.0) / (2.0 * i));
  }
  if (z.imag() < -1.0) {
    return i * z + std::log((1.0 - std::exp(-2.0 * i * z)) / (2.0 * i));
  }
  return std::log(std::sin(z));
}

cplx log_cos(cplx z) {
  const cplx i{0.0, 1.0};
  if (z.imag() > 1.0) return -i * z + std::log((std::exp(2.0 * i * z) + 1.0) / 2.0);
  if (z.imag() < -1.0) return i * z + std::log((1.0 + std::exp(-2.0 * i * z)) / 2.0);
  return std::log(std::cos(z));
}

cplx log_gamma(cplx z) {
  if (is_nonpositive_integer(z)) throw Error(ErrorKind::invalid_input, "pole of Gamma");
  if (z.real() < 0.5) {
    // Gamma(z) Gamma(1 - z) = pi / sin(pi z)
    return std::log(kPi) - log_sin(kPi * z) - log_gamma(1.0 - z);
  }
  z -= 1.0;
  cplx x = kLanczos[0];
  for (int k = 1; k < kLanczosG + 2; ++k) x += kLanczos[k] / (z + static_cast<double>(k));
  const cplx t = z + (kLanczosG + 0.5);
  return 0.5 * std::log(2.0 * kPi) + (z + 0.5) * std::log(t) - t + std::log(x);
}

cplx gamma(cplx z) { return std::exp(log_gamma(z)); }

long double bernoulli_even(int k) {
  static constexpr std::array<long double, 14> kB = {
      1.0L,
      1.0L / 6.0L,
      -1.0L / 30.0L,
      1.0L / 42.0L,
      -1.0L / 30.0L,
      5.0L / 66.0L,
      -691.0L / 2730.0L,
      7.0L / 6.0L,
      -3617.0L / 510.0L,
      43867.0L / 798.0L,
      -174611.0L / 330.0L,
      854513.0L / 138.0L,
      -236364091.0L / 2730.0L,
      8553103.0L / 6.0L};
  if (k < 1 || k > 13) throw Error(ErrorKind::invalid_input, "Bernoulli index out of table");
  return kB[k];
}

}  // namespace almsq
