#include "vgr/vg_dist.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "vgr/errors.hpp"
#include "vgr/ratio_params.hpp"
#include "vgr/specfun.hpp"

namespace vgr {

VGParams::VGParams(double m, double alpha, double beta, const ParamNames& names)
    : m_(m), alpha_(alpha), beta_(beta), gamma2_(alpha * alpha - beta * beta) {
  if (!std::isfinite(m) || !std::isfinite(alpha) || !std::isfinite(beta)) {
    throw DomainError("VG parameters must be finite");
  }
  if (!(m > -0.5)) throw DomainError(std::string(names.shape) + " must be > -1/2");
  if (!(alpha > 0.0)) throw DomainError(std::string(names.alpha) + " must be > 0");
  if (!(std::abs(beta) < alpha)) {
    throw DomainError("|" + std::string(names.beta) + "| must be < " + std::string(names.alpha));
  }
  if (!(gamma2_ > 0.0)) {
    throw DomainError(std::string(names.alpha) + "^2 - " + std::string(names.beta) +
                      "^2 must be > 0");
  }
}

double VGParams::gamma() const noexcept { return std::sqrt(gamma2_); }

double log_normalizing_constant(const VGParams& p) {
  const double m = p.m();
  return (m + 0.5) * std::log(p.gamma2()) - 0.5 * std::log(std::numbers::pi) -
         m * std::log(2.0 * p.alpha()) - specfun::log_gamma(m + 0.5);
}

double normalizing_constant(const VGParams& p) { return std::exp(log_normalizing_constant(p)); }

double vg_log_pdf(const VGParams& p, double x, OriginPolicy policy) {
  const double m = p.m();
  const double log_m = log_normalizing_constant(p);
  if (x == 0.0) {
    if (m <= 0.0) {
      if (policy == OriginPolicy::kInfinity) return std::numeric_limits<double>::infinity();
      throw SingularityError("VG density is infinite at x = 0 when m <= 0");
    }
    // |x|^m K_m(alpha |x|) -> Gamma(m) 2^(m-1) alpha^(-m)
    return log_m + specfun::log_gamma(m) + (m - 1.0) * std::numbers::ln2 - m * std::log(p.alpha());
  }
  const double ax = std::abs(x);
  return log_m + p.beta() * x + m * std::log(ax) + specfun::log_bessel_k(m, p.alpha() * ax);
}

double vg_pdf(const VGParams& p, double x, OriginPolicy policy) {
  return std::exp(vg_log_pdf(p, x, policy));
}

double vg_abs_moment(const VGParams& p, double k) {
  const double m = p.m();
  const double lower = std::max(-1.0, -2.0 * m - 1.0);
  if (!(k > lower)) {
    throw RangeError("absolute moment order k must be > " + std::to_string(lower));
  }
  const double h = 0.5 * (k + 1.0);
  const double ratio = p.beta() * p.beta() / (p.alpha() * p.alpha());
  const double log_pref = k * std::numbers::ln2 + (m + 0.5) * std::log(p.gamma2() / (p.alpha() * p.alpha())) -
                          0.5 * std::log(std::numbers::pi) - k * std::log(p.alpha()) -
                          specfun::log_gamma(m + 0.5) + specfun::log_gamma(m + h) +
                          specfun::log_gamma(h);
  const auto f = specfun::gauss_2f1(h, m + h, 0.5, ratio);
  return std::exp(log_pref) * f.value;
}

VGSampler::VGSampler(const VGParams& p)
    : beta_(p.beta()), mixing_(p.m() + 0.5, 2.0 / p.gamma2()), normal_(0.0, 1.0) {}

double VGSampler::operator()(std::mt19937_64& rng) {
  const double g = mixing_(rng);
  return beta_ * g + std::sqrt(g) * normal_(rng);
}

std::vector<double> vg_sample(const VGParams& p, std::mt19937_64& rng, std::size_t count) {
  std::vector<double> out;
  out.reserve(count);
  VGSampler draw(p);
  for (std::size_t i = 0; i < count; ++i) out.push_back(draw(rng));
  return out;
}

RatioParams RatioParams::make(double m, double alpha1, double beta1, double n, double alpha2,
                              double beta2) {
  return RatioParams(VGParams(m, alpha1, beta1, {"m", "alpha1", "beta1"}),
                     VGParams(n, alpha2, beta2, {"n", "alpha2", "beta2"}));
}

bool RatioParams::symmetric_skew() const noexcept {
  return std::abs(beta1()) < kExactZero && std::abs(beta2()) < kExactZero;
}

}  // namespace vgr
