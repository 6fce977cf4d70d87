#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "vgr/errors.hpp"
#include "vgr/oracle.hpp"
#include "vgr/quadrature.hpp"

// Links vgr_oracle alone: every expectation here holds without the ratio series.

namespace o = vgr::oracle;
using vgr::RatioParams;

namespace {

constexpr double kPi = std::numbers::pi;

double lomax_cdf(double z) { return z < 0.0 ? 0.5 / (1.0 - z) : 1.0 - 0.5 / (1.0 + z); }

// sup |F_n - F| straight from the definition: compare F at each sample with
// the empirical distribution just before and at the sample.
double ks_by_enumeration(std::vector<double> xs, double (*cdf)(double)) {
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double d = 0.0;
  for (double x : xs) {
    const double below = std::count_if(xs.begin(), xs.end(), [x](double v) { return v < x; }) / n;
    const double upto = std::count_if(xs.begin(), xs.end(), [x](double v) { return v <= x; }) / n;
    d = std::max({d, std::abs(cdf(x) - below), std::abs(upto - cdf(x))});
  }
  return d;
}

}  // namespace

TEST(Oracle, ClosedFormAnchors) {
  const auto log_case = RatioParams::make(0, 1, 0, 0, 1, 0);
  const auto r = o::convolution_pdf_oracle(log_case, 2.0);
  EXPECT_TRUE(r.converged);
  EXPECT_GE(r.evaluations, 1u);
  EXPECT_NEAR(r.value, 2.0 / (kPi * kPi) * std::log(2.0) / 3.0, 1e-10);
  const auto lomax = RatioParams::make(0.5, 1, 0, 0.5, 1, 0);
  EXPECT_NEAR(o::convolution_pdf_oracle(lomax, 1.0).value, 0.125, 1e-11);
}

TEST(Oracle, EvenWhenDenominatorUnskewed) {
  const auto rp = RatioParams::make(0.3, 1.4, 0.6, 1.2, 0.9, 0.0);
  for (double z : {0.2, 1.0, 7.0}) {
    EXPECT_NEAR(o::convolution_pdf_oracle(rp, z).value, o::convolution_pdf_oracle(rp, -z).value,
                1e-12 * o::convolution_pdf_oracle(rp, z).value);
  }
}

TEST(Oracle, OriginSingularity) {
  EXPECT_THROW(o::convolution_pdf_oracle(RatioParams::make(0, 1, 0, 1, 1, 0), 0.0), vgr::SingularityError);
  EXPECT_NEAR(o::convolution_pdf_oracle(RatioParams::make(1, 1, 0, 1, 1, 0), 0.0).value, 4.0 / (kPi * kPi), 1e-10);
}

TEST(Oracle, DensityIntegratesToOne) {
  const auto rp = RatioParams::make(1.0, 2.0, 0.8, 0.5, 1.0, -0.4);
  const auto f = [&](double z) { return o::convolution_pdf_oracle(rp, z).value; };
  // The tails decay like z^-2; substitute z = tan(u) to map the line onto (-pi/2, pi/2).
  const auto g = [&](double u) {
    const double c = std::cos(u);
    return c == 0.0 ? 0.0 : f(std::tan(u)) / (c * c);
  };
  vgr::quad::QuadOptions opts;
  opts.rel_tol = 1e-9;
  const double mass = vgr::quad::integrate(g, -kPi / 2, 0.0, opts).value + vgr::quad::integrate(g, 0.0, kPi / 2, opts).value;
  EXPECT_NEAR(mass, 1.0, 1e-6);
}

TEST(KsStatistic, EnumeratedCases) {
  const auto uniform = [](double x) { return std::clamp(x, 0.0, 1.0); };
  const std::vector<double> two{0.75, 0.25};
  EXPECT_DOUBLE_EQ(o::ks_statistic(two, uniform), 0.25);
  const std::vector<double> zero{0.0};
  EXPECT_DOUBLE_EQ(o::ks_statistic(zero, uniform), 1.0);
  EXPECT_THROW(o::ks_statistic(std::vector<double>{}, uniform), vgr::DomainError);
}

TEST(KsStatistic, AgreesWithEnumerationOnSmallSamples) {
  std::mt19937_64 rng(7);
  std::cauchy_distribution<double> draw;
  for (std::size_t size = 1; size <= 10; ++size) {
    std::vector<double> xs(size);
    for (auto& x : xs) x = draw(rng);
    EXPECT_NEAR(o::ks_statistic(xs, lomax_cdf), ks_by_enumeration(xs, lomax_cdf), 1e-15);
  }
}

TEST(KsStatistic, DensityInterpolationMatchesExact) {
  const auto rp = RatioParams::make(0.5, 1, 0, 0.5, 1, 0);
  std::mt19937_64 rng(11);
  const auto xs = o::mc_ratio_sample(rp, rng, 20000);
  const o::DensityModel lomax{
      [](double z) { return 0.5 / ((1 + std::abs(z)) * (1 + std::abs(z))); },
      [](double lo, double hi) { return lomax_cdf(hi) - lomax_cdf(lo); }};
  EXPECT_NEAR(o::ks_statistic_density(xs, lomax, 200), o::ks_statistic(xs, lomax_cdf), 1e-8);
}

TEST(MonteCarlo, EmptyRequests) {
  std::mt19937_64 rng(1);
  EXPECT_TRUE(o::mc_ratio_sample(RatioParams::make(0.5, 1, 0, 0.5, 1, 0), rng, 0).empty());
  EXPECT_TRUE(o::mc_normal_product_ratio(1, 1, 0, 0, rng, 0).empty());
}

TEST(MonteCarlo, LomaxMedianOfAbsoluteValue) {
  std::mt19937_64 rng(2024);
  std::size_t redraws = 0;
  const auto xs = o::mc_ratio_sample(RatioParams::make(0.5, 1, 0, 0.5, 1, 0), rng, 1000000, &redraws);
  const double inside = std::count_if(xs.begin(), xs.end(), [](double z) { return std::abs(z) <= 1.0; }) / 1e6;
  EXPECT_NEAR(inside, 0.5, 3.0 * std::sqrt(0.25 / 1e6));
  EXPECT_EQ(redraws, 0u);
}

TEST(MonteCarlo, UnitShapeTailWeight) {
  std::mt19937_64 rng(99);
  const auto xs = o::mc_ratio_sample(RatioParams::make(1, 1, 0, 1, 1, 0), rng, 1000000);
  const double above = std::count_if(xs.begin(), xs.end(), [](double z) { return z > 100.0; }) / 1e6;
  EXPECT_NEAR(above * 100.0, 4.0 / (kPi * kPi), 0.3 * 4.0 / (kPi * kPi));
}

TEST(MonteCarlo, NormalProductIsVarianceGamma) {
  const double s = 1.5, rho = 0.5;
  std::mt19937_64 rng(5);
  const auto w = o::mc_normal_product(s, rho, rng, 100000);
  const vgr::VGParams law(0.0, 1.0 / (s * (1 - rho * rho)), rho / (s * (1 - rho * rho)));
  const o::DensityModel model{[&](double x) { return vgr::vg_pdf(law, x, vgr::OriginPolicy::kInfinity); },
                              [&](double lo, double hi) { return o::vg_probability(law, lo, hi); }};
  EXPECT_LT(o::ks_statistic_density(w, model), 1.63 / std::sqrt(1e5));
}

TEST(MonteCarlo, SeedDeterminesStream) {
  std::mt19937_64 a(31), b(31);
  const auto rp = RatioParams::make(-0.25, 1, 0.3, 1.5, 2, -1);
  EXPECT_EQ(o::mc_ratio_sample(rp, a, 100), o::mc_ratio_sample(rp, b, 100));
}

TEST(KernelDensity, RecoversNormalDensity) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> n;
  std::vector<double> xs(200000);
  for (auto& x : xs) x = n(rng);
  EXPECT_NEAR(o::kernel_density(xs, 0.0, 0.05), 1.0 / std::sqrt(2 * kPi), 0.01);
}
