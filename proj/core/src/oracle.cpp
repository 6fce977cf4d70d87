#include "vgr/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "vgr/errors.hpp"

namespace vgr::oracle {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Largest accepted gap between the interpolated and the integrated F at a check point.
constexpr double kHermiteTolerance = 1e-10;

// Geometric breakpoints resolve the power or logarithmic behaviour of the
// integrand near y = 0 without relying on bisection alone.
std::vector<double> geometric_cuts(double hi) {
  std::vector<double> cuts{0.0};
  for (int k = 10; k >= 1; --k) cuts.push_back(hi * std::pow(10.0, -k));
  cuts.push_back(hi);
  return cuts;
}

// Distance beyond which a VG density with shape m and envelope rate r is
// negligible relative to its bulk.
double truncation(double rate, double shape_sum) {
  return (60.0 + 3.0 * (std::max(shape_sum, 0.0) + 2.0)) / rate;
}

// U = sqrt(s) A, V = sqrt(s) (rho A + sqrt(1 - rho^2) B) with A, B standard normal.
class NormalProduct {
 public:
  NormalProduct(double s, double rho, const char* s_name = "s", const char* rho_name = "|rho|")
      : s_(s), rho_(rho), c_(std::sqrt(1.0 - rho * rho)) {
    if (!(s > 0.0) || !std::isfinite(s)) throw DomainError(std::string(s_name) + " must be > 0");
    if (!(std::abs(rho) < 1.0)) throw DomainError(std::string(rho_name) + " must be < 1");
  }

  double operator()(std::mt19937_64& rng) {
    const double a = normal_(rng);
    const double b = normal_(rng);
    return s_ * a * (rho_ * a + c_ * b);
  }

 private:
  double s_;
  double rho_;
  double c_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

quad::QuadOptions quad_options(const OracleOptions& o) {
  quad::QuadOptions q;
  q.abs_tol = o.abs_tol;
  q.rel_tol = o.rel_tol;
  q.max_subdivisions = o.max_subdivisions;
  return q;
}

}  // namespace

quad::QuadratureResult convolution_pdf_oracle(const RatioParams& rp, double z, const OracleOptions& opts) {
  if (!std::isfinite(z)) throw DomainError("z must be finite");
  const VGParams& x = rp.num();
  const VGParams& y = rp.den();
  if (z == 0.0 && x.m() <= 0.0) throw SingularityError("density of Z is infinite at z = 0 when m <= 0");
  const double rate = (y.alpha() - std::abs(y.beta())) + (x.alpha() - std::abs(x.beta())) * std::abs(z);
  const double hi = truncation(rate, x.m() + y.m());
  const auto qo = quad_options(opts);
  quad::QuadratureResult total{0.0, 0.0, 0, true};
  for (double sign : {1.0, -1.0}) {
    const auto integrand = [&](double t) {
      const double v = sign * t;
      return std::exp(std::log(t) + vg_log_pdf(x, v * z) + vg_log_pdf(y, v));
    };
    const auto cuts = geometric_cuts(hi);
    const auto r = quad::integrate(integrand, cuts, qo);
    total.value += r.value;
    total.abs_err_estimate += r.abs_err_estimate;
    total.evaluations += r.evaluations;
    total.converged = total.converged && r.converged;
  }
  return total;
}

std::vector<double> mc_ratio_sample(const RatioParams& rp, std::mt19937_64& rng, std::size_t count,
                                    std::size_t* redraws) {
  std::vector<double> out;
  out.reserve(count);
  VGSampler num(rp.num());
  VGSampler den(rp.den());
  std::size_t rejected = 0;
  for (std::size_t i = 0; i < count; ++i) {
    const double x = num(rng);
    double y = den(rng);
    while (y == 0.0) {
      ++rejected;
      y = den(rng);
    }
    out.push_back(x / y);
  }
  if (redraws != nullptr) *redraws += rejected;
  return out;
}

std::vector<double> mc_normal_product(double s, double rho, std::mt19937_64& rng, std::size_t count) {
  NormalProduct draw(s, rho);
  std::vector<double> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(draw(rng));
  return out;
}

std::vector<double> mc_normal_product_ratio(double s1, double s2, double rho1, double rho2,
                                            std::mt19937_64& rng, std::size_t count) {
  NormalProduct num(s1, rho1, "s1", "|rho1|");
  NormalProduct den(s2, rho2, "s2", "|rho2|");
  std::vector<double> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double w1 = num(rng);
    const double w2 = den(rng);
    out.push_back(w1 / w2);
  }
  return out;
}

double ks_statistic(std::span<const double> samples, const std::function<double(double)>& cdf) {
  if (samples.empty()) throw DomainError("ks_statistic: empty sample");
  std::vector<double> x(samples.begin(), samples.end());
  std::sort(x.begin(), x.end());
  const double n = static_cast<double>(x.size());
  double d = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double f = cdf(x[i]);
    d = std::max({d, (static_cast<double>(i) + 1.0) / n - f, f - static_cast<double>(i) / n});
  }
  return d;
}

double ks_statistic_density(std::vector<double> samples, const DensityModel& model, std::size_t stride) {
  if (samples.empty()) throw DomainError("ks_statistic_density: empty sample");
  if (stride < 2) stride = 2;
  std::sort(samples.begin(), samples.end());
  const std::size_t count = samples.size();
  const double n = static_cast<double>(count);
  double d = 0.0;
  const auto update = [&](std::size_t i, double f) {
    d = std::max({d, (static_cast<double>(i) + 1.0) / n - f, f - static_cast<double>(i) / n});
  };
  const auto density = [&](double x) { return (x == 0.0) ? kInf : model.pdf(x); };

  // Fills F at the order statistics strictly between ia and ib, given F there.
  const auto fill = [&](auto& self, std::size_t ia, std::size_t ib, double fa, double fb) -> void {
    if (ib - ia < 2) return;
    const double xa = samples[ia];
    const double xb = samples[ib];
    const double da = density(xa);
    const double db = density(xb);
    if (!(std::isfinite(da) && std::isfinite(db)) || (xa <= 0.0 && xb >= 0.0) || ib - ia <= 4) {
      double f = fa;
      for (std::size_t i = ia + 1; i < ib; ++i) {
        f += model.probability(samples[i - 1], samples[i]);
        update(i, f);
      }
      return;
    }
    const double h = xb - xa;
    const auto hermite = [&](double x) {
      const double t = (h > 0.0) ? (x - xa) / h : 0.0;
      const double t2 = t * t;
      const double t3 = t2 * t;
      const double f = (2 * t3 - 3 * t2 + 1) * fa + (t3 - 2 * t2 + t) * h * da + (-2 * t3 + 3 * t2) * fb +
                       (t3 - t2) * h * db;
      return std::clamp(f, fa, fb);
    };
    const std::size_t im = ia + (ib - ia) / 2;
    const double fm = fa + model.probability(xa, samples[im]);
    update(im, fm);
    if (std::abs(hermite(samples[im]) - fm) > kHermiteTolerance) {
      self(self, ia, im, fa, fm);
      self(self, im, ib, fm, fb);
      return;
    }
    for (std::size_t i = ia + 1; i < ib; ++i) {
      if (i != im) update(i, hermite(samples[i]));
    }
  };

  double f_prev = model.probability(-kInf, samples[0]);
  update(0, f_prev);
  for (std::size_t ia = 0; ia + 1 < count;) {
    const std::size_t ib = std::min(ia + stride, count - 1);
    const double fb = f_prev + model.probability(samples[ia], samples[ib]);
    fill(fill, ia, ib, f_prev, fb);
    update(ib, fb);
    f_prev = fb;
    ia = ib;
  }
  return d;
}

double vg_probability(const VGParams& p, double lo, double hi) {
  if (!(lo < hi)) return 0.0;
  quad::QuadOptions q;
  q.abs_tol = 1e-15;
  q.rel_tol = 1e-11;
  const double reach = truncation(p.alpha() - std::abs(p.beta()), p.m());
  const auto f = [&](double x) { return vg_pdf(p, x, OriginPolicy::kInfinity); };
  double total = 0.0;
  const double a = std::max(lo, -reach);
  const double b = std::min(hi, reach);
  if (!(a < b)) return 0.0;
  // Split at the origin, where the density may be singular or kinked.
  if (a < 0.0 && b > 0.0) {
    total += quad::integrate(f, a, 0.0, q).value;
    total += quad::integrate(f, 0.0, b, q).value;
  } else {
    total += quad::integrate(f, a, b, q).value;
  }
  return total;
}

double kernel_density(std::span<const double> samples, double x, double bandwidth) {
  if (samples.empty()) throw DomainError("kernel_density: empty sample");
  if (!(bandwidth > 0.0)) throw DomainError("bandwidth must be > 0");
  const double norm = 1.0 / (std::sqrt(2.0 * std::numbers::pi) * bandwidth * static_cast<double>(samples.size()));
  double s = 0.0;
  for (double v : samples) {
    const double u = (v - x) / bandwidth;
    if (std::abs(u) < 9.0) s += std::exp(-0.5 * u * u);
  }
  return s * norm;
}

}  // namespace vgr::oracle
