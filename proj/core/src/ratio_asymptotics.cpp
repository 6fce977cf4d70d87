#include <cmath>
#include <numbers>
#include <string>

#include "vgr/errors.hpp"
#include "vgr/specfun.hpp"
#include "vgr/vg_ratio.hpp"

namespace vgr {

namespace sf = specfun;

namespace {

constexpr double kPi = std::numbers::pi;

// Shared skeleton of the origin and tail constants. At the origin the shape
// is m with alpha1 and the skew ratio beta2/alpha2; in the tails the shape is
// n with alpha2 and the skew ratio beta1/alpha1.
struct Side {
  double shape;
  double other;
  double gamma2_shape;
  double gamma2_other;
  double alpha_shape;
  double alpha_other;
  double skew_ratio2;
};

RegimeConstant regime_constant(const Side& s) {
  const double a = s.shape;
  const double b = s.other;
  const TailRegime regime = classify_regime(a);
  const double lg_other_half = sf::log_gamma(b + 0.5);
  switch (regime) {
    case TailRegime::kPositive: {
      const double log_c = (a + 0.5) * std::log(s.gamma2_shape) + (b + 0.5) * std::log(s.gamma2_other) -
                           std::log(kPi) - 2 * a * std::log(s.alpha_shape) -
                           (2 * b + 2) * std::log(s.alpha_other) + sf::log_gamma(a) + sf::log_gamma(b + 1) -
                           sf::log_gamma(a + 0.5) - lg_other_half;
      return {regime, std::exp(log_c) * sf::gauss_2f1(1.0, b + 1, 0.5, s.skew_ratio2).value};
    }
    case TailRegime::kZero: {
      const double log_c = std::log(2.0) + 0.5 * std::log(s.gamma2_shape) + (b + 0.5) * std::log(s.gamma2_other) -
                           1.5 * std::log(kPi) - (2 * b + 2) * std::log(s.alpha_other) +
                           sf::log_gamma(b + 1) - lg_other_half;
      return {regime, std::exp(log_c) * sf::gauss_2f1(1.0, b + 1, 0.5, s.skew_ratio2).value};
    }
    case TailRegime::kNegative: {
      const double log_c = (a + 0.5) * std::log(s.gamma2_shape) + (b + 0.5) * std::log(s.gamma2_other) -
                           (2 * a + 2 * b + 2) * std::log(s.alpha_other) - std::log(std::sin(-a * kPi)) +
                           sf::log_gamma(a + b + 1) - sf::log_gamma(a + 0.5) - lg_other_half;
      return {regime, std::exp(log_c) * sf::gauss_2f1(a + 1, a + b + 1, 0.5, s.skew_ratio2).value};
    }
  }
  throw DomainError("unknown regime");
}

}  // namespace

RegimeConstant origin_behavior(const RatioParams& rp) {
  const double r2 = rp.beta2() / rp.alpha2();
  return regime_constant({rp.m(), rp.n(), rp.num().gamma2(), rp.den().gamma2(), rp.alpha1(), rp.alpha2(),
                          r2 * r2});
}

RegimeConstant tail_behavior(const RatioParams& rp) {
  const double r1 = rp.beta1() / rp.alpha1();
  return regime_constant({rp.n(), rp.m(), rp.den().gamma2(), rp.num().gamma2(), rp.alpha2(), rp.alpha1(),
                          r1 * r1});
}

double tail_pdf_asymptotic(const RatioParams& rp, double z) {
  if (!(z != 0.0) || !std::isfinite(z)) throw DomainError("tail approximation requires finite z != 0");
  const auto t = tail_behavior(rp);
  const double az = std::abs(z);
  switch (t.regime) {
    case TailRegime::kPositive: return t.coefficient / (az * az);
    case TailRegime::kZero: return t.coefficient * std::log(az) / (az * az);
    case TailRegime::kNegative: return t.coefficient * std::pow(az, -2.0 - 2.0 * rp.n());
  }
  return 0.0;
}

double tail_probability_asymptotic(const RatioParams& rp, double z) {
  if (!(z > 0.0) || !std::isfinite(z)) throw DomainError("tail probability approximation requires finite z > 0");
  const auto t = tail_behavior(rp);
  switch (t.regime) {
    case TailRegime::kPositive: return t.coefficient / z;
    case TailRegime::kZero: return t.coefficient * std::log(z) / z;
    case TailRegime::kNegative: {
      const double e = 1.0 + 2.0 * rp.n();
      return t.coefficient * std::pow(z, -e) / e;
    }
  }
  return 0.0;
}

double fractional_moment(const RatioParams& rp, double k) {
  if (!std::isfinite(k)) throw RangeError("moment order k must be finite");
  const double m = rp.m();
  const double n = rp.n();
  if (k == 1.0) throw UndefinedMeanError();
  const double lower = std::max(-1.0, -2.0 * m - 1.0);
  const double upper = std::min(1.0, 2.0 * n + 1.0);
  if (!(k > lower && k < upper)) {
    throw RangeError("moment order k must satisfy " + std::to_string(lower) + " < k < " +
                     std::to_string(upper));
  }
  if (k == 0.0) return 1.0;
  const double b1 = rp.beta1() / rp.alpha1();
  const double b2 = rp.beta2() / rp.alpha2();
  const double hp = 0.5 * (k + 1.0);
  const double hm = 0.5 * (1.0 - k);
  const double log_v = k * std::log(rp.alpha2() / rp.alpha1()) + (m + 0.5) * std::log1p(-b1 * b1) +
                       (n + 0.5) * std::log1p(-b2 * b2) - sf::log_gamma(m + 0.5) - sf::log_gamma(n + 0.5) +
                       sf::log_gamma(m + hp) + sf::log_gamma(n + hm);
  const double f1 = sf::gauss_2f1(hp, m + hp, 0.5, b1 * b1).value;
  const double f2 = sf::gauss_2f1(hm, n + hm, 0.5, b2 * b2).value;
  return std::exp(log_v) / std::cos(0.5 * k * kPi) * f1 * f2;
}

}  // namespace vgr
