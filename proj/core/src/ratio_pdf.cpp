#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "vgr/errors.hpp"
#include "vgr/specfun.hpp"
#include "vgr/vg_ratio.hpp"

namespace vgr {

namespace sf = specfun;

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kHalfIntegerTol = 1e-12;

bool is_zero(double v) { return std::abs(v) < kExactZero; }

bool half_integer(double v, int& k) {
  const double shifted = v - 0.5;
  const double r = std::round(shifted);
  if (r < 0.0 || std::abs(shifted - r) > kHalfIntegerTol || r > 1000.0) return false;
  k = static_cast<int>(r);
  return true;
}

// ln(gamma1^(2m+1) gamma2^(2n+1) / (pi Gamma(m+1/2) Gamma(n+1/2)))
double log_common_prefactor(const RatioParams& rp) {
  return (rp.m() + 0.5) * std::log(rp.num().gamma2()) + (rp.n() + 0.5) * std::log(rp.den().gamma2()) -
         std::log(std::numbers::pi) - sf::log_gamma(rp.m() + 0.5) - sf::log_gamma(rp.n() + 0.5);
}

// One series representation after collapsing the inner sum over i + j = s:
//   f = exp(log_prefactor) * sum_{s even} B_s 2F1(a0 + s/2, b0 + s/2; c0 + s; 1 - y)
// with
//   B_s = (2u/scale)^s Gamma(s/2+1)/s! * Gamma(m+n+1+s/2) Gamma(m+1+s/2)
//         Gamma(n+1+s/2) / Gamma(m+n+2+s).
// Every B_s and every 2F1 factor is positive for even s.
struct Layout {
  Method method;
  double log_prefactor;
  double u;
  double scale;
  double y;
  double a0;
  double b0;
};

Layout layout_for(const RatioParams& rp, double z, SeriesForm form) {
  const double m = rp.m();
  const double n = rp.n();
  const double a1 = rp.alpha1();
  const double a2 = rp.alpha2();
  const double az = std::abs(z);
  const double g0 = log_common_prefactor(rp);
  const double small_y = (a1 * z / a2) * (a1 * z / a2);
  switch (form) {
    case SeriesForm::kDirect:
      return {Method::kSeriesDirect,
              g0 - (2 * n + 2) * std::log(az) - (2 * m + 2 * n + 2) * std::log(a1),
              rp.beta1() + rp.beta2() / z, a1, 1.0 / small_y, m + n + 1, n + 1};
    case SeriesForm::kSmallZShape:
      return {Method::kSeriesSmallZShape, g0 + 2 * m * std::log(az) - (2 * m + 2 * n + 2) * std::log(a2),
              rp.beta1() * z + rp.beta2(), a2, small_y, m + n + 1, m + 1};
    case SeriesForm::kSmallZ:
      return {Method::kSeriesSmallZ, g0 - 2 * m * std::log(a1) - (2 * n + 2) * std::log(a2),
              rp.beta1() * z + rp.beta2(), a2, small_y, n + 1, 1.0};
    case SeriesForm::kLargeZ:
      return {Method::kSeriesLargeZ,
              g0 - 2 * std::log(az) - (2 * m + 2) * std::log(a1) - 2 * n * std::log(a2),
              rp.beta1() + rp.beta2() / z, a1, 1.0 / small_y, 1.0, m + 1};
  }
  throw DomainError("unknown series form");
}

EvalReport sum_layout(const RatioParams& rp, const Layout& L, const SeriesControl& ctrl) {
  const double m = rp.m();
  const double n = rp.n();
  const double c0 = m + n + 2;
  const bool single = (L.u == 0.0);
  const double log_step = single ? 0.0 : std::log(2.0 * std::abs(L.u) / L.scale);

  double sum = 0.0;
  double err = 0.0;
  double prev_block = 0.0;
  double last_block = 0.0;
  int small_run = 0;
  std::size_t blocks = 0;
  for (int s = 0;; s += 2) {
    if (blocks >= ctrl.max_terms) {
      const double value = std::exp(L.log_prefactor) * sum;
      throw BudgetExceeded("ratio density series: term budget exhausted", value,
                           std::exp(L.log_prefactor) * (err + 3.0 * last_block));
    }
    ++blocks;
    const double h = 0.5 * s;
    const double log_coef = (s == 0 ? 0.0 : s * log_step) + sf::log_gamma(h + 1) - sf::log_gamma(s + 1.0) +
                            sf::log_gamma(m + n + 1 + h) + sf::log_gamma(m + 1 + h) +
                            sf::log_gamma(n + 1 + h) - sf::log_gamma(c0 + s);
    const auto hyp = sf::gauss_2f1_complement(L.a0 + h, L.b0 + h, c0 + s, L.y, ctrl);
    const double coef = std::exp(log_coef);
    const double block = coef * hyp.value;
    sum += block;
    err += coef * hyp.err_estimate;
    prev_block = last_block;
    last_block = block;
    if (single) break;
    if (block <= ctrl.rel_tol * sum || block <= ctrl.abs_tol) {
      if (++small_run >= 3) break;
    } else {
      small_run = 0;
    }
  }
  double tail = 0.0;
  if (!single) {
    const double r = (prev_block > 0.0) ? last_block / prev_block : 1.0;
    tail = (r < 1.0) ? last_block * r / (1.0 - r) : 3.0 * last_block;
  }
  const double scale = std::exp(L.log_prefactor);
  const double value = scale * sum;
  const double e = scale * (err + tail) + 8.0 * kEps * std::sqrt(static_cast<double>(blocks) + 1.0) * value;
  return {value, e, L.method};
}

// log r / (r^2 - 1) for r = a / b, with the removable point r = 1 and the
// cancellation in r - 1 handled through d = (a - b) / b.
double log_kernel(double a, double b) {
  const double d = (a - b) / b;
  if (d == 0.0) return 0.5;
  if (std::abs(d) < 0.5) return std::log1p(d) / (d * (2.0 + d));
  const double r = a / b;
  return std::log(r) / ((r - 1.0) * (r + 1.0));
}

EvalReport log_form(const RatioParams& rp, double z) {
  // f = 2 alpha1 / (pi^2 alpha2) * log r / (r^2 - 1), r = alpha1 |z| / alpha2
  const double g = log_kernel(rp.alpha1() * std::abs(z), rp.alpha2());
  const double value = 2.0 * rp.alpha1() / (std::numbers::pi * std::numbers::pi * rp.alpha2()) * g;
  return {value, 4.0 * kEps * value, Method::kLogForm};
}

void require_finite(double z) {
  if (!std::isfinite(z)) throw DomainError("z must be finite");
}

}  // namespace

TailRegime classify_regime(double shape) noexcept {
  if (std::abs(shape) < kExactZero) return TailRegime::kZero;
  return shape > 0.0 ? TailRegime::kPositive : TailRegime::kNegative;
}

const char* to_string(TailRegime r) noexcept {
  switch (r) {
    case TailRegime::kPositive: return "positive";
    case TailRegime::kZero: return "zero";
    case TailRegime::kNegative: return "negative";
  }
  return "unknown";
}

bool series_form_valid(const RatioParams& rp, double z, SeriesForm form) noexcept {
  if (!std::isfinite(z)) return false;
  const double az = std::abs(z);
  const double band = std::numbers::sqrt2 * rp.switch_point();
  switch (form) {
    case SeriesForm::kDirect: return z != 0.0;
    case SeriesForm::kSmallZShape: return z != 0.0 && az < band;
    case SeriesForm::kSmallZ:
      return az < band && (z != 0.0 || classify_regime(rp.m()) == TailRegime::kPositive);
    case SeriesForm::kLargeZ: return az > rp.switch_point() / std::numbers::sqrt2;
  }
  return false;
}

EvalReport ratio_pdf_series(const RatioParams& rp, double z, SeriesForm form, const SeriesControl& ctrl) {
  ctrl.validate();
  require_finite(z);
  if (!series_form_valid(rp, z, form)) {
    throw DomainError("z = " + std::to_string(z) + " is outside the validity band of the requested series form");
  }
  return sum_layout(rp, layout_for(rp, z, form), ctrl);
}

EvalReport ratio_pdf_elementary(const RatioParams& rp, double z) {
  require_finite(z);
  int big_m = 0;
  int big_n = 0;
  if (!half_integer(rp.m(), big_m) || !half_integer(rp.n(), big_n)) {
    throw DomainError("elementary form requires m - 1/2 and n - 1/2 to be non-negative integers");
  }
  const double m = rp.m();
  const double n = rp.n();
  const double a1 = rp.alpha1();
  const double a2 = rp.alpha2();
  const double az = std::abs(z);
  const double u1 = a1 * az + a2 + rp.beta1() * z + rp.beta2();
  const double u2 = a1 * az + a2 - rp.beta1() * z - rp.beta2();
  const double log_pref = (m + 0.5) * std::log(rp.num().gamma2()) + (n + 0.5) * std::log(rp.den().gamma2()) -
                          (m + 0.5) * std::log(2 * a1) - (n + 0.5) * std::log(2 * a2);
  const auto log_fact = [](int k) { return sf::log_gamma(k + 1.0); };
  double sum = 0.0;
  for (int i = 0; i <= big_m; ++i) {
    for (int j = 0; j <= big_n; ++j) {
      const int p = big_m + big_n + 2 - i - j;
      const double log_c = log_fact(p - 1) - log_fact(big_m - i) - log_fact(big_n - j) +
                           log_fact(big_m + i) - log_fact(big_m) - log_fact(i) + log_fact(big_n + j) -
                           log_fact(big_n) - log_fact(j) - i * std::log(2 * a1) - j * std::log(2 * a2);
      const double zpow = (big_m - i == 0) ? 1.0 : std::pow(az, big_m - i);
      sum += std::exp(log_c + log_pref) * zpow * (std::pow(u1, -p) + std::pow(u2, -p));
    }
  }
  const double terms = static_cast<double>((big_m + 1) * (big_n + 1));
  return {sum, 16.0 * kEps * std::sqrt(terms) * sum, Method::kElementary};
}

EvalReport ratio_pdf(const RatioParams& rp, double z, const SeriesControl& ctrl) {
  ctrl.validate();
  require_finite(z);
  const TailRegime origin = classify_regime(rp.m());
  if (z == 0.0 && origin != TailRegime::kPositive) {
    throw SingularityError("density of Z is infinite at z = 0 when m <= 0");
  }
  const bool small = std::abs(z) < rp.switch_point();
  if (rp.symmetric_skew()) {
    if (origin == TailRegime::kZero && classify_regime(rp.n()) == TailRegime::kZero) {
      return log_form(rp, z);
    }
    // Zero skew leaves a single hypergeometric term; it is evaluated on
    // whichever side of the switch point keeps its argument in [0, 1).
    const Layout L = layout_for(rp, z, small ? SeriesForm::kSmallZ : SeriesForm::kDirect);
    auto r = sum_layout(rp, Layout{L.method, L.log_prefactor, 0.0, L.scale, L.y, L.a0, L.b0}, ctrl);
    r.method = Method::kSymmetricClosed;
    return r;
  }
  int k = 0;
  if (half_integer(rp.m(), k) && half_integer(rp.n(), k)) return ratio_pdf_elementary(rp, z);
  return sum_layout(rp, layout_for(rp, z, small ? SeriesForm::kSmallZ : SeriesForm::kLargeZ), ctrl);
}

VGParams normal_product_params(double s, double rho) {
  if (!(s > 0.0) || !std::isfinite(s)) throw DomainError("s must be > 0");
  if (!(std::abs(rho) < 1.0)) throw DomainError("|rho| must be < 1");
  const double alpha = 1.0 / (s * (1.0 - rho * rho));
  return VGParams(0.0, alpha, rho * alpha);
}

RatioParams normal_product_ratio_params(double s1, double s2, double rho1, double rho2) {
  if (!(s1 > 0.0) || !std::isfinite(s1)) throw DomainError("s1 must be > 0");
  if (!(s2 > 0.0) || !std::isfinite(s2)) throw DomainError("s2 must be > 0");
  if (!(std::abs(rho1) < 1.0)) throw DomainError("|rho1| must be < 1");
  if (!(std::abs(rho2) < 1.0)) throw DomainError("|rho2| must be < 1");
  return RatioParams(normal_product_params(s1, rho1), normal_product_params(s2, rho2));
}

EvalReport normal_product_ratio_pdf(double s1, double s2, double rho1, double rho2, double t,
                                    const SeriesControl& ctrl) {
  const RatioParams rp = normal_product_ratio_params(s1, s2, rho1, rho2);
  require_finite(t);
  if (t == 0.0) throw SingularityError("density of W1/W2 is infinite at t = 0");
  if (is_zero(rho1) && is_zero(rho2)) {
    // f = 2 s2 / (pi^2 s1) * log r / (r^2 - 1), r = s2 |t| / s1
    const double g = log_kernel(s2 * std::abs(t), s1);
    const double value = 2.0 * s2 / (std::numbers::pi * std::numbers::pi * s1) * g;
    return {value, 4.0 * kEps * value, Method::kLogForm};
  }
  return ratio_pdf(rp, t, ctrl);
}

EvalReport normal_product_ratio_double_sum(double s1, double s2, double rho1, double rho2, double t,
                                           const SeriesControl& ctrl) {
  normal_product_ratio_params(s1, s2, rho1, rho2);
  ctrl.validate();
  require_finite(t);
  if (t == 0.0) throw DomainError("the double-sum form requires t != 0");
  const double c1 = 1.0 - rho1 * rho1;
  const double c2 = 1.0 - rho2 * rho2;
  const double pref = (s1 / s2) * std::pow(c1, 1.5) / (t * t * std::numbers::pi * std::numbers::pi * std::sqrt(c2));
  const double q = s1 * c1 / (s2 * c2 * t);
  const double y = q * q;
  const double x_i = 2.0 * rho1;
  const double x_j = (c1 / c2) * (2.0 * s1 * rho2 / (s2 * t));
  const auto log_fact = [](int k) { return sf::log_gamma(k + 1.0); };
  const auto signed_pow = [](double base, int e, double& log_abs) {
    if (e == 0) {
      log_abs = 0.0;
      return 1;
    }
    if (base == 0.0) return 0;
    log_abs = e * std::log(std::abs(base));
    return (base < 0.0 && (e % 2 != 0)) ? -1 : 1;
  };

  double sum = 0.0;
  double magnitude = 0.0;
  double err = 0.0;
  int small_run = 0;
  std::size_t blocks = 0;
  for (int s = 0;; s += 2) {
    if (blocks >= ctrl.max_terms) {
      throw BudgetExceeded("normal-product double sum: term budget exhausted", pref * sum, pref * err);
    }
    ++blocks;
    const double h = 0.5 * s;
    const auto hyp = sf::gauss_2f1_complement(1 + h, 1 + h, 2.0 + s, y, ctrl);
    const double log_common = 4.0 * log_fact(s / 2) - log_fact(s + 1);
    double block = 0.0;
    double block_abs = 0.0;
    for (int i = 0; i <= s; ++i) {
      const int j = s - i;
      double li = 0.0;
      double lj = 0.0;
      const int si = signed_pow(x_i, i, li);
      const int sj = signed_pow(x_j, j, lj);
      if (si == 0 || sj == 0) continue;
      const double term = si * sj * std::exp(log_common - log_fact(i) - log_fact(j) + li + lj);
      block += term;
      block_abs += std::abs(term);
    }
    sum += block * hyp.value;
    magnitude += block_abs * hyp.value;
    err += block_abs * hyp.err_estimate;
    const double contrib = block_abs * hyp.value;
    if (x_i == 0.0 && x_j == 0.0) break;
    if (contrib <= ctrl.rel_tol * std::abs(sum) || contrib <= ctrl.abs_tol) {
      if (++small_run >= 3) break;
    } else {
      small_run = 0;
    }
  }
  const double value = pref * sum;
  const double e = pref * (err + 16.0 * kEps * magnitude);
  return {value, e, Method::kSeriesDirect};
}

}  // namespace vgr
