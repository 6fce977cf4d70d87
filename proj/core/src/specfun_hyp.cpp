#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <limits>
#include <numbers>
#include <string>

#include "vgr/errors.hpp"
#include "vgr/specfun.hpp"

namespace vgr::specfun {

namespace {

constexpr double kMachEps = std::numeric_limits<double>::epsilon();
// c - a - b closer than this to an integer is treated as exactly integral.
constexpr double kIntegerSnap = 1e-10;
// Band around an integer c - a - b served by interpolation in c.
constexpr double kInterpBand = 1e-4;
// Largest x summed directly when all terms are positive.
constexpr double kDirectReach = 0.9;
// Connection results looser than this multiple of rel_tol are re-tried directly.
constexpr double kConnectionSlack = 10.0;

std::string fmt_params(double a, double b, double c, double x) {
  return "(a=" + std::to_string(a) + ", b=" + std::to_string(b) + ", c=" + std::to_string(c) +
         ", x=" + std::to_string(x) + ")";
}

/// prod Gamma(num) / prod Gamma(den), signed and evaluated in log space.
/// A pole in the denominator gives exactly zero.
double gamma_ratio(std::initializer_list<double> num, std::initializer_list<double> den) {
  double log_mag = 0.0;
  int sign = 1;
  for (double d : den) {
    if (is_nonpositive_integer(d)) return 0.0;
    const auto lg = log_gamma_signed(d);
    log_mag -= lg.log_abs;
    sign *= lg.sign;
  }
  for (double n : num) {
    const auto lg = log_gamma_signed(n);
    log_mag += lg.log_abs;
    sign *= lg.sign;
  }
  return sign * std::exp(log_mag);
}

/// Running sum that rescales itself once terms pass 1e250 so that the
/// magnitude is tracked in log space.
struct ScaledSum {
  double sum = 0.0;
  double max_abs = 0.0;
  double log_scale = 0.0;

  void add(double& term) {
    if (std::abs(term) > 1e250) {
      sum *= 1e-250;
      max_abs *= 1e-250;
      term *= 1e-250;
      log_scale += 250.0 * std::numbers::ln10;
    }
    sum += term;
    max_abs = std::max(max_abs, std::abs(term));
  }
  double value() const { return log_scale == 0.0 ? sum : sum * std::exp(log_scale); }
  double scale() const { return log_scale == 0.0 ? 1.0 : std::exp(log_scale); }
};

void check_c(double a, double b, double c) {
  if (!is_nonpositive_integer(c)) return;
  // A terminating numerator ends the series before the pole is reached.
  const bool a_stops = is_nonpositive_integer(a) && a > c;
  const bool b_stops = is_nonpositive_integer(b) && b > c;
  if (!a_stops && !b_stops) {
    throw PoleError("gauss_2f1: c is a non-positive integer " + fmt_params(a, b, c, 0.0));
  }
}

EvalReport series_2f1(double a, double b, double c, double x, const SeriesControl& ctrl) {
  ScaledSum acc;
  double term = 1.0;
  acc.add(term);
  const bool terminating = is_nonpositive_integer(a) || is_nonpositive_integer(b);
  std::size_t k = 0;
  double tail = 0.0;
  for (;; ++k) {
    if (k >= ctrl.max_terms) {
      throw BudgetExceeded("gauss_2f1: series budget exhausted " + fmt_params(a, b, c, x),
                           acc.value(), std::abs(term) * acc.scale());
    }
    const double dk = static_cast<double>(k);
    term *= (a + dk) * (b + dk) / ((c + dk) * (dk + 1.0)) * x;
    acc.add(term);
    if (term == 0.0) break;
    const double dn = dk + 1.0;
    const double r_next = std::abs((a + dn) * (b + dn) / ((c + dn) * (dn + 1.0)) * x);
    const double r = std::max(r_next, std::abs(x));
    if (r < 1.0) {
      tail = std::abs(term) * r / (1.0 - r);
      if (tail <= ctrl.rel_tol * std::abs(acc.sum) || tail * acc.scale() <= ctrl.abs_tol) break;
    }
  }
  if (terminating) tail = 0.0;
  const double round_off = kMachEps * acc.max_abs * std::sqrt(static_cast<double>(k + 1));
  return {acc.value(), (tail + round_off) * acc.scale(), terminating ? Method::kHypPolynomial
                                                                     : Method::kHypSeries};
}

// 2F1(a,b;c;1-y) for 0 < y < 1/2 via the connection formula in y, with
// c - a - b = delta away from the integers.
EvalReport connection_generic(double a, double b, double c, double y, const SeriesControl& ctrl) {
  const double delta = c - a - b;
  const double coef1 = gamma_ratio({c, delta}, {c - a, c - b});
  const double coef2 = gamma_ratio({c, -delta}, {a, b});
  double v1 = 0.0, e1 = 0.0, v2 = 0.0, e2 = 0.0;
  if (coef1 != 0.0) {
    const auto f1 = series_2f1(a, b, 1.0 - delta, y, ctrl);
    v1 = coef1 * f1.value;
    e1 = std::abs(coef1) * f1.err_estimate;
  }
  if (coef2 != 0.0) {
    const double p = std::pow(y, delta);
    const auto f2 = series_2f1(c - a, c - b, 1.0 + delta, y, ctrl);
    v2 = coef2 * p * f2.value;
    e2 = std::abs(coef2 * p) * f2.err_estimate;
  }
  const double value = v1 + v2;
  const double err = e1 + e2 + 8.0 * kMachEps * (std::abs(v1) + std::abs(v2));
  return {value, err, Method::kHypConnection};
}

// Logarithmic connection formulas for c = a + b + m, m an integer.
EvalReport connection_log(double a, double b, int m, double y, const SeriesControl& ctrl) {
  const double c = a + b + m;
  const double log_y = std::log(y);
  double finite_part = 0.0;
  double log_part = 0.0;
  double log_err = 0.0;
  double log_max = 0.0;
  std::size_t k = 0;

  auto run_log_series = [&](double pa, double pb, int shift, double psi_a0, double psi_b0,
                            double lead) {
    // sum_k (pa)_k (pb)_k / (k! (k+shift)!) y^k [log y - psi(k+1) - psi(k+shift+1)
    //                                              + psi(pa+k) + psi(pb+k)]
    double poch = 1.0;
    for (int i = 1; i <= shift; ++i) poch /= i;
    double psi1 = -std::numbers::egamma;  // psi(1)
    double psi_s = psi1;
    for (int i = 1; i <= shift; ++i) psi_s += 1.0 / i;  // psi(shift+1)
    double psi_a = psi_a0;
    double psi_b = psi_b0;
    double yk = 1.0;
    double sum = 0.0;
    int small_run = 0;
    for (k = 0;; ++k) {
      if (k >= ctrl.max_terms) {
        throw BudgetExceeded("gauss_2f1: log-case budget exhausted", lead * sum,
                             std::abs(lead * sum));
      }
      const double term = poch * yk * (log_y - psi1 - psi_s + psi_a + psi_b);
      sum += term;
      log_max = std::max(log_max, std::abs(lead * term));
      if (std::abs(term) <= ctrl.rel_tol * std::abs(sum) * (1.0 - y)) {
        if (++small_run >= 2) break;
      } else {
        small_run = 0;
      }
      const double dk = static_cast<double>(k);
      poch *= (pa + dk) * (pb + dk) / ((dk + 1.0) * (dk + 1.0 + shift));
      yk *= y;
      psi1 += 1.0 / (dk + 1.0);
      psi_s += 1.0 / (dk + 1.0 + shift);
      psi_a += 1.0 / (pa + dk);
      psi_b += 1.0 / (pb + dk);
    }
    log_part = lead * sum;
    log_err = std::abs(lead) * ctrl.rel_tol * std::abs(sum);
  };

  if (m == 0) {
    // 2F1(a,b;a+b;1-y) = Gamma(a+b)/(Gamma(a)Gamma(b)) sum (a)_k(b)_k/k!^2
    //                    [2 psi(k+1) - psi(a+k) - psi(b+k) - log y] y^k
    const double lead = -gamma_ratio({c}, {a, b});
    run_log_series(a, b, 0, digamma(a), digamma(b), lead);
  } else if (m > 0) {
    const double coef = gamma_ratio({static_cast<double>(m), c}, {a + m, b + m});
    double t = 1.0;
    double s = 0.0;
    for (int i = 0; i < m; ++i) {
      s += t;
      if (i + 1 < m) t *= (a + i) * (b + i) / ((i + 1.0) * (1.0 - m + i)) * y;
    }
    finite_part = coef * s;
    const double sgn = (m % 2 == 0) ? 1.0 : -1.0;
    const double lead = -sgn * gamma_ratio({c}, {a, b}) * std::pow(y, m);
    if (lead != 0.0) run_log_series(a + m, b + m, m, digamma(a + m), digamma(b + m), lead);
  } else {
    const int l = -m;
    const double coef = gamma_ratio({static_cast<double>(l), c}, {a, b}) * std::pow(y, -l);
    double t = 1.0;
    double s = 0.0;
    for (int i = 0; i < l; ++i) {
      s += t;
      if (i + 1 < l) t *= (a - l + i) * (b - l + i) / ((i + 1.0) * (1.0 - l + i)) * y;
    }
    finite_part = coef * s;
    const double sgn = (l % 2 == 0) ? 1.0 : -1.0;
    const double lead = -sgn * gamma_ratio({c}, {a - l, b - l});
    if (lead != 0.0) run_log_series(a, b, l, digamma(a), digamma(b), lead);
  }
  const double value = finite_part + log_part;
  const double err =
      log_err + 16.0 * kMachEps * (std::abs(finite_part) + log_max) * std::sqrt(k + 1.0);
  return {value, err, Method::kHypLogConnection};
}

EvalReport near_one(double a, double b, double c, double y, const SeriesControl& ctrl) {
  const double delta = c - a - b;
  const double nearest = std::round(delta);
  const double d = delta - nearest;
  const int m = static_cast<int>(nearest);
  if (std::abs(d) < kIntegerSnap) return connection_log(a, b, m, y, ctrl);
  if (std::abs(d) < kInterpBand) {
    // Quadratic interpolation in c between the exact logarithmic case and two
    // generic evaluations one band-width either side of it.
    const double h = kInterpBand;
    const double c0 = c - d;
    const auto g0 = connection_log(a, b, m, y, ctrl);
    const auto gp = connection_generic(a, b, c0 + h, y, ctrl);
    const auto gm = connection_generic(a, b, c0 - h, y, ctrl);
    const double slope = (gp.value - gm.value) / (2.0 * h);
    const double curv = (gp.value - 2.0 * g0.value + gm.value) / (2.0 * h * h);
    const double value = g0.value + d * slope + d * d * curv;
    const double err = g0.err_estimate + gp.err_estimate + gm.err_estimate +
                       std::abs(d) * h * std::abs(curv);
    return {value, err, Method::kHypConnection};
  }
  return connection_generic(a, b, c, y, ctrl);
}

// Dispatch on x with the complement y = 1 - x supplied separately.
EvalReport dispatch(double a, double b, double c, double x, double y, const SeriesControl& ctrl) {
  if (std::isnan(a) || std::isnan(b) || std::isnan(c) || std::isnan(x) || std::isnan(y)) {
    throw DomainError("gauss_2f1: NaN argument");
  }
  check_c(a, b, c);
  if (x == 0.0) return {1.0, 0.0, Method::kHypSeries};
  if (is_nonpositive_integer(a) || is_nonpositive_integer(b)) return series_2f1(a, b, c, x, ctrl);
  if (y < 0.0) {
    throw DomainError("gauss_2f1: x > 1 is outside the supported range " + fmt_params(a, b, c, x));
  }
  if (y == 0.0) {
    const double delta = c - a - b;
    if (delta <= 0.0) {
      throw DivergenceError("gauss_2f1: series diverges at x = 1 when c - a - b <= 0 " +
                            fmt_params(a, b, c, x));
    }
    const double v = gamma_ratio({c, delta}, {c - a, c - b});
    return {v, 16.0 * kMachEps * std::abs(v), Method::kHypGaussSum};
  }
  if (std::abs(x) <= 0.5) {
    auto r = series_2f1(a, b, c, x, ctrl);
    // Alternating series with large intermediate terms: re-evaluate through
    // the Pfaff map, which yields a positive-argument series.
    if (x < 0.0 && r.err_estimate > 1e3 * ctrl.rel_tol * std::abs(r.value)) {
      auto p = dispatch(a, c - b, c, x / (x - 1.0), 1.0 / y, ctrl);
      const double scale = std::pow(y, -a);
      EvalReport alt{scale * p.value, std::abs(scale) * p.err_estimate, Method::kHypPfaff};
      if (alt.err_estimate < r.err_estimate) return alt;
    }
    return r;
  }
  if (x < -0.5) {
    // Pfaff: (1-x)^(-a) 2F1(a, c-b; c; x/(x-1)); the new complement is 1/(1-x).
    auto p = dispatch(a, c - b, c, x / (x - 1.0), 1.0 / y, ctrl);
    const double log_scale = -a * std::log(y);
    const double scale = std::exp(log_scale);
    return {scale * p.value, scale * p.err_estimate, Method::kHypPfaff};
  }
  // With a, b, c > 0 every term of the direct series is positive, so it is
  // exact up to rounding; the connection formulas cancel once a b y grows.
  const bool positive_terms = a > 0.0 && b > 0.0 && c > 0.0 && x > 0.0;
  if (positive_terms && x <= kDirectReach) return series_2f1(a, b, c, x, ctrl);
  auto r = near_one(a, b, c, y, ctrl);
  if (positive_terms && !(r.err_estimate <= kConnectionSlack * ctrl.rel_tol * std::abs(r.value))) {
    try {
      auto d = series_2f1(a, b, c, x, ctrl);
      if (d.err_estimate < r.err_estimate) return d;
    } catch (const BudgetExceeded&) {
      // keep the connection value and its error bound
    }
  }
  return r;
}

}  // namespace

EvalReport gauss_2f1(double a, double b, double c, double x, const SeriesControl& ctrl) {
  ctrl.validate();
  return dispatch(a, b, c, x, 1.0 - x, ctrl);
}

EvalReport gauss_2f1_complement(double a, double b, double c, double y, const SeriesControl& ctrl) {
  ctrl.validate();
  return dispatch(a, b, c, 1.0 - y, y, ctrl);
}

EvalReport gauss_2f1_series(double a, double b, double c, double x, const SeriesControl& ctrl) {
  ctrl.validate();
  check_c(a, b, c);
  if (!(std::abs(x) < 1.0)) throw DomainError("gauss_2f1_series: requires |x| < 1");
  return series_2f1(a, b, c, x, ctrl);
}

EvalReport gauss_2f1_pfaff(double a, double b, double c, double x, const SeriesControl& ctrl) {
  ctrl.validate();
  check_c(a, b, c);
  if (!(x < 1.0)) throw DomainError("gauss_2f1_pfaff: requires x < 1");
  const double y = 1.0 - x;
  auto p = dispatch(a, c - b, c, x / (x - 1.0), 1.0 / y, ctrl);
  const double scale = std::pow(y, -a);
  return {scale * p.value, scale * p.err_estimate, Method::kHypPfaff};
}

EvalReport hyp_3f2_unit(double a1, double a2, double a3, double b1, double b2, double x,
                        const SeriesControl& ctrl) {
  ctrl.validate();
  if (is_nonpositive_integer(b1) || is_nonpositive_integer(b2)) {
    throw PoleError("hyp_3f2_unit: lower parameter is a non-positive integer");
  }
  if (!(std::abs(x) < 1.0)) throw DomainError("hyp_3f2_unit: requires |x| < 1");
  ScaledSum acc;
  double term = 1.0;
  acc.add(term);
  const bool terminating =
      is_nonpositive_integer(a1) || is_nonpositive_integer(a2) || is_nonpositive_integer(a3);
  double tail = 0.0;
  std::size_t k = 0;
  if (x != 0.0) {
    for (;; ++k) {
      if (k >= ctrl.max_terms) {
        throw BudgetExceeded("hyp_3f2_unit: series budget exhausted", acc.value(),
                             std::abs(term) * acc.scale());
      }
      const double dk = static_cast<double>(k);
      term *= (a1 + dk) * (a2 + dk) * (a3 + dk) / ((b1 + dk) * (b2 + dk) * (dk + 1.0)) * x;
      acc.add(term);
      if (term == 0.0) break;
      const double dn = dk + 1.0;
      const double r_next =
          std::abs((a1 + dn) * (a2 + dn) * (a3 + dn) / ((b1 + dn) * (b2 + dn) * (dn + 1.0)) * x);
      const double r = std::max(r_next, std::abs(x));
      if (r < 1.0) {
        tail = std::abs(term) * r / (1.0 - r);
        if (tail <= ctrl.rel_tol * std::abs(acc.sum) || tail * acc.scale() <= ctrl.abs_tol) break;
      }
    }
  }
  if (terminating) tail = 0.0;
  const double round_off = kMachEps * acc.max_abs * std::sqrt(static_cast<double>(k + 1));
  return {acc.value(), (tail + round_off) * acc.scale(), Method::kHyp3F2Series};
}

}  // namespace vgr::specfun
