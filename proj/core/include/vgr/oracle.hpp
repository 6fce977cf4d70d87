#pragma once

#include <cstddef>
#include <functional>
#include <random>
#include <span>
#include <vector>

#include "vgr/quadrature.hpp"
#include "vgr/ratio_params.hpp"
#include "vgr/vg_dist.hpp"

// Ground truth that depends only on the marginal densities and samplers,
// never on the ratio series.
namespace vgr::oracle {

struct OracleOptions {
  double abs_tol = 1e-14;
  double rel_tol = 1e-11;
  std::size_t max_subdivisions = 4000;
};

/// f_Z(z) = int |y| f_X(y z) f_Y(y) dy by adaptive quadrature, split at y = 0
/// and truncated where the exponential envelope is negligible. Throws
/// SingularityError at z = 0 when m <= 0. When the tolerance is not met the
/// best value is returned with converged = false.
quad::QuadratureResult convolution_pdf_oracle(const RatioParams& rp, double z,
                                              const OracleOptions& opts = {});

/// Element-wise X/Y from independent VG draws. Exact zero denominators are
/// redrawn; their number is added to *redraws when supplied.
std::vector<double> mc_ratio_sample(const RatioParams& rp, std::mt19937_64& rng, std::size_t count,
                                    std::size_t* redraws = nullptr);

/// Products W = U V of zero-mean bivariate normals with sigma_U = sigma_V = sqrt(s).
std::vector<double> mc_normal_product(double s, double rho, std::mt19937_64& rng, std::size_t count);

/// T = W1 / W2 for independent normal products.
std::vector<double> mc_normal_product_ratio(double s1, double s2, double rho1, double rho2,
                                            std::mt19937_64& rng, std::size_t count);

/// Two-sided Kolmogorov-Smirnov statistic sup |F_n - F|, evaluating cdf at
/// every sample. Throws DomainError for an empty sample.
double ks_statistic(std::span<const double> samples, const std::function<double(double)>& cdf);

/// A continuous law described by its density, the probability of intervals
/// (lo may be -inf) and nothing else.
struct DensityModel {
  std::function<double(double)> pdf;
  std::function<double(double, double)> probability;
};

/// KS statistic for large samples of a law whose distribution function is
/// expensive. The distribution function is integrated exactly between knots
/// every `stride` order statistics and interpolated by cubic Hermite
/// polynomials (values and densities) in between. Each interval is checked
/// at its middle order statistic and bisected until the interpolant agrees
/// with the integral to 1e-10; intervals where the density is not finite at
/// a knot or that straddle zero are integrated sample by sample instead.
double ks_statistic_density(std::vector<double> samples, const DensityModel& model,
                            std::size_t stride = 500);

/// P(lo < X < hi) for a VG marginal by quadrature of vg_pdf.
double vg_probability(const VGParams& p, double lo, double hi);

/// Kernel density estimate at x with a Gaussian kernel of the given bandwidth.
double kernel_density(std::span<const double> samples, double x, double bandwidth);

}  // namespace vgr::oracle
