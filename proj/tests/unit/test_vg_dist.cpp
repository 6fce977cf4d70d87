#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "vgr/errors.hpp"
#include "vgr/quadrature.hpp"
#include "vgr/vg_dist.hpp"

namespace {

double mass(const vgr::VGParams& p) {
  const auto f = [&](double x) { return vgr::vg_pdf(p, x, vgr::OriginPolicy::kInfinity); };
  const double lo = vgr::quad::integrate(f, -3000.0, 0.0).value;
  const double hi = vgr::quad::integrate(f, 0.0, 3000.0).value;
  return lo + hi;
}

}  // namespace

TEST(VGParams, NamesViolatedConstraint) {
  try {
    vgr::VGParams(0.5, 1.0, 1.5, {"m", "alpha1", "beta1"});
    FAIL();
  } catch (const vgr::DomainError& e) {
    EXPECT_STREQ(e.what(), "|beta1| must be < alpha1");
  }
  EXPECT_THROW(vgr::VGParams(-0.5, 1.0, 0.0), vgr::DomainError);
  EXPECT_THROW(vgr::VGParams(0.5, 0.0, 0.0), vgr::DomainError);
}

TEST(VGPdf, LaplaceSpecialCase) {
  // m = 1/2, beta = 0 is Laplace with rate alpha.
  const vgr::VGParams p(0.5, 2.0, 0.0);
  for (double x : {-3.0, -0.1, 0.0, 0.4, 2.0}) {
    EXPECT_NEAR(vgr::vg_pdf(p, x), std::exp(-2.0 * std::abs(x)), 1e-14);
  }
}

TEST(VGPdf, IntegratesToOne) {
  for (double m : {-0.3, 0.0, 0.7, 2.5}) {
    for (double beta : {0.0, 0.6, -0.9}) {
      EXPECT_NEAR(mass(vgr::VGParams(m, 1.0, beta)), 1.0, 1e-8) << m << " " << beta;
    }
  }
}

TEST(VGPdf, OriginPolicy) {
  const vgr::VGParams p(-0.2, 1.0, 0.0);
  EXPECT_THROW(vgr::vg_pdf(p, 0.0), vgr::SingularityError);
  EXPECT_TRUE(std::isinf(vgr::vg_pdf(p, 0.0, vgr::OriginPolicy::kInfinity)));
  const vgr::VGParams q(1.3, 1.0, 0.4);
  EXPECT_NEAR(vgr::vg_pdf(q, 0.0), vgr::vg_pdf(q, 1e-9), 1e-7);
}

TEST(VGAbsMoment, MatchesQuadrature) {
  const vgr::VGParams p(0.3, 1.5, 0.5);
  for (double k : {-0.4, 0.5, 1.0, 2.0}) {
    const auto f = [&](double x) {
      return std::pow(std::abs(x), k) * vgr::vg_pdf(p, x, vgr::OriginPolicy::kInfinity);
    };
    const double want = vgr::quad::integrate(f, -300.0, 0.0).value + vgr::quad::integrate(f, 0.0, 300.0).value;
    EXPECT_NEAR(vgr::vg_abs_moment(p, k), want, 1e-7 * want) << k;
  }
  EXPECT_THROW(vgr::vg_abs_moment(vgr::VGParams(-0.3, 1.0, 0.0), -0.5), vgr::RangeError);
}

TEST(VGSample, DeterministicAndMomentsMatch) {
  const vgr::VGParams p(1.0, 2.0, 0.8);
  std::mt19937_64 a(7), b(7);
  const auto xa = vgr::vg_sample(p, a, 200000);
  const auto xb = vgr::vg_sample(p, b, 200000);
  EXPECT_EQ(xa, xb);
  double mean = 0.0;
  for (double x : xa) mean += x;
  mean /= static_cast<double>(xa.size());
  // E[X] = beta E[G] = beta (m + 1/2) 2 / gamma^2
  const double want = 0.8 * 1.5 * 2.0 / p.gamma2();
  EXPECT_NEAR(mean, want, 0.02);
}
