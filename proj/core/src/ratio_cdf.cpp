#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "vgr/errors.hpp"
#include "vgr/quadrature.hpp"
#include "vgr/specfun.hpp"
#include "vgr/vg_ratio.hpp"

namespace vgr {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Piece {
  double value = 0.0;
  double err = 0.0;
  Piece& operator+=(const Piece& o) {
    value += o.value;
    err += o.err;
    return *this;
  }
};

// Powers of the substitutions that flatten the density's local behaviour:
// t = c u^p near the origin (f ~ |t|^(2m) or log|t|) and t = L / v^q in the
// tails (f ~ |t|^(-2-2n) or t^-2 log t).
double flattening_power(double shape) {
  switch (classify_regime(shape)) {
    case TailRegime::kPositive: return 1.0;
    case TailRegime::kZero: return 2.0;
    case TailRegime::kNegative: return 1.0 / (1.0 + 2.0 * shape);
  }
  return 1.0;
}

class HalfLine {
 public:
  HalfLine(const RatioParams& rp, double sign, const SeriesControl& ctrl)
      : rp_(rp), sign_(sign), ctrl_(ctrl), scale_(rp.switch_point()),
        p_(flattening_power(rp.m())), q_(flattening_power(rp.n())) {
    opts_.abs_tol = 1e-14;
    opts_.rel_tol = std::max(1e-11, 10.0 * ctrl.rel_tol);
    opts_.max_subdivisions = 2000;
  }

  // Integral of f(sign * t) over 0 <= a < t < b <= inf.
  Piece integrate(double a, double b) const {
    Piece total;
    if (!(a < b)) return total;
    if (a < scale_) {
      const double c = std::min(b, scale_);
      total += (a == 0.0) ? origin(c) : plain(a, c);
    }
    if (b > scale_) total += tail(std::max(a, scale_), b);
    return total;
  }

 private:
  double g(double t) const { return ratio_pdf(rp_, sign_ * t, ctrl_).value; }

  Piece run(const quad::Integrand& f, double lo, double hi) const {
    const auto r = quad::integrate(f, lo, hi, opts_);
    return {r.value, r.abs_err_estimate};
  }

  Piece plain(double a, double b) const {
    return run([this](double t) { return g(t); }, a, b);
  }

  Piece origin(double c) const {
    if (p_ == 1.0) return plain(0.0, c);
    const double p = p_;
    return run(
        [this, c, p](double u) {
          const double t = c * std::pow(u, p);
          if (t == 0.0) return 0.0;
          return g(t) * c * p * std::pow(u, p - 1.0);
        },
        0.0, 1.0);
  }

  Piece tail(double lo, double hi) const {
    const double q = q_;
    const double v0 = std::isinf(hi) ? 0.0 : std::pow(lo / hi, 1.0 / q);
    return run(
        [this, lo, q](double v) {
          const double vq = std::pow(v, q);
          const double t = lo / vq;
          if (!std::isfinite(t) || vq == 0.0) return 0.0;
          return g(t) * lo * q / (vq * v);
        },
        v0, 1.0);
  }

  const RatioParams& rp_;
  double sign_;
  SeriesControl ctrl_;
  double scale_;
  double p_;
  double q_;
  quad::QuadOptions opts_;
};

Piece mass_between(const RatioParams& rp, double lo, double hi, const SeriesControl& ctrl) {
  Piece total;
  if (!(lo < hi)) return total;
  if (hi > 0.0) total += HalfLine(rp, 1.0, ctrl).integrate(std::max(lo, 0.0), hi);
  if (lo < 0.0) total += HalfLine(rp, -1.0, ctrl).integrate(std::max(-hi, 0.0), -lo);
  return total;
}

void check_argument(double z) {
  if (std::isnan(z)) throw DomainError("z must not be NaN");
}

}  // namespace

EvalReport ratio_probability(const RatioParams& rp, double lo, double hi, const SeriesControl& ctrl) {
  ctrl.validate();
  check_argument(lo);
  check_argument(hi);
  const Piece p = mass_between(rp, lo, hi, ctrl);
  return {p.value, p.err, Method::kQuadrature};
}

EvalReport ratio_total_mass(const RatioParams& rp, const SeriesControl& ctrl) {
  return ratio_probability(rp, -kInf, kInf, ctrl);
}

EvalReport ratio_cdf_quadrature(const RatioParams& rp, double z, const SeriesControl& ctrl) {
  ctrl.validate();
  check_argument(z);
  if (rp.symmetric_skew()) {
    // F(0) = 1/2 exactly; only the mass between 0 and z is integrated.
    const Piece p = mass_between(rp, 0.0, std::abs(z), ctrl);
    const double value = (z >= 0.0) ? 0.5 + p.value : 0.5 - p.value;
    return {value, p.err, Method::kQuadratureCdf};
  }
  const Piece p = mass_between(rp, -kInf, z, ctrl);
  return {p.value, p.err, Method::kQuadratureCdf};
}

EvalReport ratio_sf(const RatioParams& rp, double z, const SeriesControl& ctrl) {
  ctrl.validate();
  check_argument(z);
  if (rp.symmetric_skew() && z < 0.0) {
    const Piece p = mass_between(rp, 0.0, -z, ctrl);
    return {0.5 + p.value, p.err, Method::kQuadratureCdf};
  }
  const Piece p = mass_between(rp, z, kInf, ctrl);
  return {p.value, p.err, Method::kQuadratureCdf};
}

EvalReport ratio_cdf_meijer(const RatioParams& rp, double z, const SeriesControl& ctrl) {
  ctrl.validate();
  check_argument(z);
  if (!rp.symmetric_skew()) throw DomainError("Meijer-G distribution function requires beta1 = beta2 = 0");
  if (z == 0.0) return {0.5, 0.0, Method::kMeijerCdf};
  if (std::isinf(z)) return {z > 0.0 ? 1.0 : 0.0, 0.0, Method::kMeijerCdf};
  const double r = rp.alpha1() * z / rp.alpha2();
  const auto g = specfun::meijer_g_2_3_3_3(specfun::ratio_cdf_meijer_spec(rp.m(), rp.n(), r * r), ctrl);
  if (g.fallback_required()) {
    throw DomainError("Meijer-G distribution function unavailable: " + std::string(g.fallback_reason));
  }
  const double log_k = std::log(2.0 * std::numbers::pi) + specfun::log_gamma(rp.m() + 0.5) +
                       specfun::log_gamma(rp.n() + 0.5);
  const double factor = r * std::exp(-log_k);
  return {0.5 + factor * g.report->value, std::abs(factor) * g.report->err_estimate, Method::kMeijerCdf};
}

EvalReport ratio_cdf(const RatioParams& rp, double z, const SeriesControl& ctrl) {
  ctrl.validate();
  check_argument(z);
  if (std::isinf(z)) return {z > 0.0 ? 1.0 : 0.0, 0.0, Method::kClosedForm};
  if (rp.symmetric_skew()) {
    try {
      const auto r = ratio_cdf_meijer(rp, z, ctrl);
      if (r.err_estimate <= 1e-9 && r.value >= -1e-12 && r.value <= 1.0 + 1e-12) return r;
    } catch (const Error&) {
      // fall through to quadrature
    }
  }
  return ratio_cdf_quadrature(rp, z, ctrl);
}

}  // namespace vgr
