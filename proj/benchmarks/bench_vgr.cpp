#include <random>

#include <benchmark/benchmark.h>

#include "vgr/oracle.hpp"
#include "vgr/specfun.hpp"
#include "vgr/vg_dist.hpp"
#include "vgr/vg_ratio.hpp"

namespace {

using vgr::RatioParams;

void BM_LogGamma(benchmark::State& state) {
  double x = 0.37;
  for (auto _ : state) {
    benchmark::DoNotOptimize(vgr::specfun::log_gamma(x));
    x = x < 50.0 ? x + 1.13 : 0.37;
  }
}
BENCHMARK(BM_LogGamma);

void BM_BesselK(benchmark::State& state) {
  const double x = static_cast<double>(state.range(0)) / 10.0;
  for (auto _ : state) benchmark::DoNotOptimize(vgr::specfun::bessel_k(1.25, x));
}
BENCHMARK(BM_BesselK)->Arg(1)->Arg(20)->Arg(300);

// x in hundredths: inside the disc, near one, and on the negative axis.
void BM_Gauss2F1(benchmark::State& state) {
  const double x = static_cast<double>(state.range(0)) / 100.0;
  for (auto _ : state) benchmark::DoNotOptimize(vgr::specfun::gauss_2f1(1.75, 2.25, 3.5, x).value);
}
BENCHMARK(BM_Gauss2F1)->Arg(30)->Arg(95)->Arg(-300);

void BM_MeijerG(benchmark::State& state) {
  const auto spec = vgr::specfun::ratio_cdf_meijer_spec(0.75, 1.25, 0.5);
  for (auto _ : state) benchmark::DoNotOptimize(vgr::specfun::meijer_g_2_3_3_3(spec).report);
}
BENCHMARK(BM_MeijerG);

void BM_VgPdf(benchmark::State& state) {
  const vgr::VGParams p(0.8, 1.5, 0.4);
  for (auto _ : state) benchmark::DoNotOptimize(vgr::vg_pdf(p, 0.9));
}
BENCHMARK(BM_VgPdf);

void BM_VgSample(benchmark::State& state) {
  const vgr::VGParams p(0.8, 1.5, 0.4);
  std::mt19937_64 rng(1);
  for (auto _ : state) benchmark::DoNotOptimize(vgr::vg_sample(p, rng, 1000));
  state.SetItemsProcessed(state.iterations() * 1000);
}
BENCHMARK(BM_VgSample);

// z chosen on both sides of the switch point alpha2 / alpha1 = 0.5.
void BM_RatioPdfSkewed(benchmark::State& state) {
  const auto rp = RatioParams::make(0.7, 2.0, 0.8, 1.2, 1.0, -0.3);
  const double z = static_cast<double>(state.range(0)) / 100.0;
  for (auto _ : state) benchmark::DoNotOptimize(vgr::ratio_pdf(rp, z).value);
}
BENCHMARK(BM_RatioPdfSkewed)->Arg(10)->Arg(45)->Arg(55)->Arg(500);

void BM_RatioPdfElementary(benchmark::State& state) {
  const auto rp = RatioParams::make(0.5, 1.0, 0.4, 1.5, 2.0, -0.5);
  for (auto _ : state) benchmark::DoNotOptimize(vgr::ratio_pdf_elementary(rp, 1.3).value);
}
BENCHMARK(BM_RatioPdfElementary);

void BM_RatioCdfMeijer(benchmark::State& state) {
  const auto rp = RatioParams::make(0.75, 1.0, 0.0, 1.25, 2.0, 0.0);
  for (auto _ : state) benchmark::DoNotOptimize(vgr::ratio_cdf_meijer(rp, 1.0).value);
}
BENCHMARK(BM_RatioCdfMeijer);

void BM_RatioCdfQuadrature(benchmark::State& state) {
  const auto rp = RatioParams::make(0.75, 1.0, 0.0, 1.25, 2.0, 0.0);
  for (auto _ : state) benchmark::DoNotOptimize(vgr::ratio_cdf_quadrature(rp, 1.0).value);
}
BENCHMARK(BM_RatioCdfQuadrature);

void BM_ConvolutionOracle(benchmark::State& state) {
  const auto rp = RatioParams::make(0.7, 2.0, 0.8, 1.2, 1.0, -0.3);
  for (auto _ : state) benchmark::DoNotOptimize(vgr::oracle::convolution_pdf_oracle(rp, 0.45).value);
}
BENCHMARK(BM_ConvolutionOracle);

void BM_NormalProductRatio(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(vgr::normal_product_ratio_pdf(1.0, 2.0, 0.3, -0.2, 0.8).value);
}
BENCHMARK(BM_NormalProductRatio);

}  // namespace

BENCHMARK_MAIN();
