#pragma once

#include <cstddef>
#include <random>
#include <string_view>
#include <vector>

namespace vgr {

/// Names used in validation messages, so that callers can report the
/// violated constraint in their own vocabulary ("|beta1| must be < alpha1").
struct ParamNames {
  std::string_view shape = "m";
  std::string_view alpha = "alpha";
  std::string_view beta = "beta";
};

/// Variance-gamma law VG(m, alpha, beta, 0): shape m > -1/2, scale alpha > 0,
/// skew |beta| < alpha. Location is fixed at zero.
class VGParams {
 public:
  VGParams(double m, double alpha, double beta, const ParamNames& names = {});

  double m() const noexcept { return m_; }
  double alpha() const noexcept { return alpha_; }
  double beta() const noexcept { return beta_; }
  /// gamma^2 = alpha^2 - beta^2
  double gamma2() const noexcept { return gamma2_; }
  double gamma() const noexcept;

 private:
  double m_;
  double alpha_;
  double beta_;
  double gamma2_;
};

/// What vg_pdf does at x = 0 when m <= 0 and the density is infinite.
enum class OriginPolicy { kThrow, kInfinity };

/// ln M with M = gamma^(2m+1) / (sqrt(pi) (2 alpha)^m Gamma(m + 1/2)).
double log_normalizing_constant(const VGParams& p);
double normalizing_constant(const VGParams& p);

/// M e^(beta x) |x|^m K_m(alpha |x|), evaluated in log space.
double vg_pdf(const VGParams& p, double x, OriginPolicy policy = OriginPolicy::kThrow);
double vg_log_pdf(const VGParams& p, double x, OriginPolicy policy = OriginPolicy::kThrow);

/// E|X|^k for k > max(-1, -2m-1); RangeError otherwise.
double vg_abs_moment(const VGParams& p, double k);

/// One-at-a-time sampler holding the mixing and normal distributions.
class VGSampler {
 public:
  explicit VGSampler(const VGParams& p);
  double operator()(std::mt19937_64& rng);

 private:
  double beta_;
  std::gamma_distribution<double> mixing_;
  std::normal_distribution<double> normal_;
};

/// Draws from the normal variance-mean mixture X = beta G + sqrt(G) N with
/// G ~ Gamma(shape m + 1/2, rate gamma^2 / 2) and N standard normal.
/// Mutates only the caller-owned engine.
std::vector<double> vg_sample(const VGParams& p, std::mt19937_64& rng, std::size_t count);

}  // namespace vgr
