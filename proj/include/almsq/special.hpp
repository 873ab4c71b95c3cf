#pragma once

#include <complex>

namespace almsq {

/// Principal-ish branch of log Gamma(z): real part exact to ~1e-15 relative,
/// imaginary part correct modulo 2 pi (callers exponentiate). Lanczos
/// approximation (g = 7, 9 coefficients) on Re z >= 1/2, reflection below.
/// Throws Error(invalid_input) at the poles z = 0, -1, -2, ...
std::complex<double> log_gamma(std::complex<double> z);

std::complex<double> gamma(std::complex<double> z);

// log sin z and log cos z without overflow for large |Im z| (mod 2 pi i).
std::complex<double> log_sin(std::complex<double> z);
std::complex<double> log_cos(std::complex<double> z);

/// Bernoulli number B_{2k} for 1 <= k <= 13.
long double bernoulli_even(int k);

}  // namespace almsq
