#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "vgr/errors.hpp"
#include "vgr/specfun.hpp"

namespace vgr::specfun {

namespace {

[[noreturn]] void throw_pole(const char* fn, double x) {
  throw PoleError(std::string(fn) + ": pole at x = " + std::to_string(x));
}

double lgamma_checked(double x) {
#if defined(__GLIBC__)
  int s = 0;
  return ::lgamma_r(x, &s);
#else
  return std::lgamma(x);
#endif
}

}  // namespace

bool is_nonpositive_integer(double x, double tol) noexcept {
  if (x > tol) return false;
  return std::abs(x - std::round(x)) <= tol;
}

int gamma_sign(double x) {
  if (is_nonpositive_integer(x)) throw_pole("gamma_sign", x);
  if (x > 0.0) return 1;
  // Gamma alternates sign between consecutive negative integers and is
  // negative on (-1, 0).
  const auto fl = static_cast<long long>(std::floor(x));
  return (fl % 2 == 0) ? 1 : -1;
}

double log_gamma(double x) {
  if (is_nonpositive_integer(x)) throw_pole("log_gamma", x);
  return lgamma_checked(x);
}

LogGamma log_gamma_signed(double x) { return {log_gamma(x), gamma_sign(x)}; }

double rgamma(double x) {
  if (is_nonpositive_integer(x)) return 0.0;
  if (x > 0.0 && x < 170.0) return 1.0 / std::tgamma(x);
  const auto lg = log_gamma_signed(x);
  return lg.sign * std::exp(-lg.log_abs);
}

double digamma(double x) {
  if (is_nonpositive_integer(x)) throw_pole("digamma", x);
  double result = 0.0;
  if (x < 0.0) {
    // psi(x) = psi(1 - x) - pi cot(pi x)
    const double pix = std::numbers::pi * x;
    result -= std::numbers::pi / std::tan(pix);
    x = 1.0 - x;
  }
  while (x < 10.0) {
    result -= 1.0 / x;
    x += 1.0;
  }
  // Asymptotic expansion with Bernoulli numbers B_2k / (2k).
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  const double tail =
      inv2 * (1.0 / 12 -
              inv2 * (1.0 / 120 -
                      inv2 * (1.0 / 252 -
                              inv2 * (1.0 / 240 - inv2 * (1.0 / 132 - inv2 * (691.0 / 32760))))));
  result += std::log(x) - 0.5 * inv - tail;
  return result;
}

std::complex<double> log_gamma_complex(std::complex<double> z) {
  using C = std::complex<double>;
  constexpr double kPi = std::numbers::pi;
  if (z.imag() == 0.0 && is_nonpositive_integer(z.real())) throw_pole("log_gamma_complex", z.real());
  if (z.real() < 0.5) {
    // Gamma(z) Gamma(1 - z) = pi / sin(pi z)
    return C(std::log(kPi), 0.0) - std::log(std::sin(kPi * z)) - log_gamma_complex(1.0 - z);
  }
  C shift(0.0, 0.0);
  while (std::abs(z) < 12.0) {
    shift += std::log(z);
    z += 1.0;
  }
  // Stirling series with Bernoulli coefficients B_2k / (2k (2k-1)).
  static constexpr double kB[] = {1.0 / 12,         -1.0 / 360,       1.0 / 1260,    -1.0 / 1680,
                                  1.0 / 1188,       -691.0 / 360360,  1.0 / 156,     -3617.0 / 122400};
  const C inv = 1.0 / z;
  const C inv2 = inv * inv;
  C corr(0.0, 0.0);
  C p = inv;
  for (double b : kB) {
    corr += b * p;
    p *= inv2;
  }
  return (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * kPi) + corr - shift;
}

}  // namespace vgr::specfun
