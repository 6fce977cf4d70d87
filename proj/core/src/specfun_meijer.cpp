#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include "vgr/errors.hpp"
#include "vgr/quadrature.hpp"
#include "vgr/specfun.hpp"

namespace vgr::specfun {

namespace {

constexpr double kCoincidenceTol = 1e-6;
// Inside exp(-kContourBand) < x < exp(kContourBand) the residue series of
// both sides cancel heavily; the contour integral is used there instead.
constexpr double kContourBand = 0.35;
constexpr double kContourLength = 40.0;
constexpr double kMachEps = std::numeric_limits<double>::epsilon();

bool near_integer(double v) { return std::abs(v - std::round(v)) < kCoincidenceTol; }

struct SlaterOutcome {
  bool ok = false;
  std::string_view reason;
  double value = 0.0;
  double err = 0.0;
};

// Residue sum over the poles of Gamma(b_h - s), h < m_count, for
// G_{3,3}^{m_count, n_count}(x | a; b) with 0 < x < 1. p == q, so every
// residue family is a 3F2 with argument (-1)^(p - m - n) x.
SlaterOutcome slater_3_3(int m_count, int n_count, const std::array<double, 3>& a,
                         const std::array<double, 3>& b, double x, const SeriesControl& ctrl) {
  SlaterOutcome out;
  for (int h = 0; h < m_count; ++h) {
    for (int j = h + 1; j < m_count; ++j) {
      if (near_integer(b[h] - b[j])) {
        out.reason = "coincident residue families (logarithmic case)";
        return out;
      }
    }
  }
  const double sign_x = ((3 - m_count - n_count) % 2 == 0) ? 1.0 : -1.0;
  double total = 0.0;
  double err = 0.0;
  double magnitude = 0.0;
  for (int h = 0; h < m_count; ++h) {
    const double bh = b[h];
    double log_coef = 0.0;
    int sign = 1;
    bool pole = false;
    auto mul_gamma = [&](double v, bool numerator) {
      if (is_nonpositive_integer(v, 1e-12)) {
        if (numerator) pole = true;
        return false;
      }
      const auto lg = log_gamma_signed(v);
      log_coef += numerator ? lg.log_abs : -lg.log_abs;
      sign *= lg.sign;
      return true;
    };
    bool zero = false;
    for (int j = 0; j < m_count; ++j) {
      if (j != h) mul_gamma(b[j] - bh, true);
    }
    for (int j = 0; j < n_count; ++j) mul_gamma(1.0 + bh - a[j], true);
    for (int j = m_count; j < 3; ++j) {
      if (!mul_gamma(1.0 + bh - b[j], false)) zero = true;
    }
    for (int j = n_count; j < 3; ++j) {
      if (!mul_gamma(a[j] - bh, false)) zero = true;
    }
    if (pole) {
      out.reason = "residue coefficient on a gamma pole";
      return out;
    }
    if (zero) continue;

    std::array<double, 2> lower{};
    int li = 0;
    for (int j = 0; j < 3; ++j) {
      if (j != h) lower[li++] = 1.0 + bh - b[j];
    }
    EvalReport series;
    try {
      series = hyp_3f2_unit(1.0 + bh - a[0], 1.0 + bh - a[1], 1.0 + bh - a[2], lower[0], lower[1],
                            sign_x * x, ctrl);
    } catch (const BudgetExceeded&) {
      out.reason = "residue series budget exhausted";
      return out;
    } catch (const PoleError&) {
      out.reason = "residue series lower parameter on a pole";
      return out;
    }
    const double coef = sign * std::exp(log_coef + bh * std::log(x));
    const double contrib = coef * series.value;
    total += contrib;
    magnitude += std::abs(contrib);
    err += std::abs(coef) * series.err_estimate;
  }
  out.ok = true;
  out.value = total;
  out.err = err + 16.0 * kMachEps * magnitude;
  return out;
}

// G = (1/2 pi i) int Gamma(b1-s) Gamma(b2-s) prod_k Gamma(1-a_k+s) / Gamma(1-b3+s) x^s ds
// on Re s = c, with c separating the poles of Gamma(b_j - s) from those of
// Gamma(1 - a_k + s). The integrand decays like exp(-2 pi |Im s|).
MeijerGEval contour(const MeijerGSpec& spec) {
  MeijerGEval result;
  const double lo = std::max({spec.a[0], spec.a[1], spec.a[2]}) - 1.0;
  const double hi = std::min(spec.b[0], spec.b[1]);
  if (!(lo < hi)) {
    result.fallback_reason = "no contour separates the pole families";
    return result;
  }
  const double c = 0.5 * (lo + hi);
  const double log_x = std::log(spec.x);
  using C = std::complex<double>;
  const auto integrand = [&](double t) {
    const C s(c, t);
    C l = log_gamma_complex(spec.b[0] - s) + log_gamma_complex(spec.b[1] - s) -
          log_gamma_complex(1.0 - spec.b[2] + s) + s * log_x;
    for (double a : spec.a) l += log_gamma_complex(1.0 - a + s);
    return std::exp(l).real();
  };
  quad::QuadOptions opts;
  opts.abs_tol = 1e-15;
  opts.rel_tol = 1e-13;
  const std::array<double, 4> cuts{0.0, 2.0, 8.0, kContourLength};
  const auto q = quad::integrate(integrand, cuts, opts);
  if (!q.converged) {
    result.fallback_reason = "contour quadrature did not converge";
    return result;
  }
  const double value = q.value / std::numbers::pi;
  const double err = q.abs_err_estimate / std::numbers::pi + 64.0 * kMachEps * std::abs(value);
  result.report = EvalReport{value, err, Method::kMeijerContour};
  return result;
}

}  // namespace

MeijerGSpec ratio_cdf_meijer_spec(double m, double n, double x) {
  return MeijerGSpec{{-n, 0.5, 0.0}, {m, 0.0, -0.5}, x};
}

MeijerGEval meijer_g_2_3_3_3(const MeijerGSpec& spec, const SeriesControl& ctrl) {
  ctrl.validate();
  const double x = spec.x;
  if (!(x > 0.0) || std::isinf(x)) throw DomainError("meijer_g_2_3_3_3: x must be finite and > 0");
  MeijerGEval result;
  if (std::abs(std::log(x)) < kContourBand) return contour(spec);
  if (x < 1.0) {
    const auto s = slater_3_3(2, 3, spec.a, spec.b, x, ctrl);
    if (!s.ok) return contour(spec);
    result.report = EvalReport{s.value, s.err, Method::kMeijerResidue};
    return result;
  }
  // G_{3,3}^{2,3}(x | a; b) = G_{3,3}^{3,2}(1/x | 1 - b; 1 - a)
  std::array<double, 3> a_inv{};
  std::array<double, 3> b_inv{};
  for (int j = 0; j < 3; ++j) {
    a_inv[j] = 1.0 - spec.b[j];
    b_inv[j] = 1.0 - spec.a[j];
  }
  const auto s = slater_3_3(3, 2, a_inv, b_inv, 1.0 / x, ctrl);
  if (!s.ok) return contour(spec);
  result.report = EvalReport{s.value, s.err, Method::kMeijerInverted};
  return result;
}

MeijerGEval meijer_g_2_3_3_3_contour(const MeijerGSpec& spec) {
  if (!(spec.x > 0.0) || std::isinf(spec.x)) {
    throw DomainError("meijer_g_2_3_3_3: x must be finite and > 0");
  }
  return contour(spec);
}

}  // namespace vgr::specfun
