#pragma once

#include <array>
#include <complex>
#include <optional>
#include <string_view>

#include "vgr/eval_report.hpp"
#include "vgr/series_control.hpp"

namespace vgr::specfun {

// ---------------------------------------------------------------------------
// Gamma family
// ---------------------------------------------------------------------------

/// ln|Gamma(x)| together with the sign of Gamma(x).
struct LogGamma {
  double log_abs;
  int sign;
};

/// ln|Gamma(x)|. Throws PoleError at x in {0, -1, -2, ...}.
double log_gamma(double x);
/// Sign of Gamma(x) (+1 or -1). Throws PoleError at the poles.
int gamma_sign(double x);
LogGamma log_gamma_signed(double x);

/// 1/Gamma(x); exactly zero at the poles.
double rgamma(double x);

/// Digamma psi(x) = Gamma'(x)/Gamma(x). Throws PoleError at the poles.
double digamma(double x);

/// ln Gamma(z) for complex z away from the poles (principal branch is not
/// guaranteed; exp of the result is exact up to rounding).
std::complex<double> log_gamma_complex(std::complex<double> z);

/// True when x is within tol of a non-positive integer.
bool is_nonpositive_integer(double x, double tol = 0.0) noexcept;

// ---------------------------------------------------------------------------
// Modified Bessel function of the second kind
// ---------------------------------------------------------------------------

/// K_nu(x) for real order and x > 0. Returns +inf when the value overflows.
/// Half-integer orders use the terminating elementary sum.
double bessel_k(double order, double x);

/// exp(x) * K_nu(x).
double bessel_k_scaled(double order, double x);

/// ln K_nu(x); finite wherever K_nu(x) is positive, including ranges where
/// K_nu itself under- or overflows a double.
double log_bessel_k(double order, double x);

/// K_{j+1/2}(x) via the terminating sum. Exposed for cross-checks.
double bessel_k_half_integer(int j, double x);

// ---------------------------------------------------------------------------
// Hypergeometric functions
// ---------------------------------------------------------------------------

/// 2F1(a,b;c;x) for x <= 1 with region dispatch:
///   |x| <= 1/2          direct power series
///   x < -1/2            Pfaff transformation onto (0,1)
///   1/2 < x < 1         connection formula in 1 - x (logarithmic form when
///                       c - a - b is an integer)
///   x == 1              Gauss summation (requires c - a - b > 0)
EvalReport gauss_2f1(double a, double b, double c, double x, const SeriesControl& ctrl = {});

/// 2F1(a,b;c;1-y) with the complement y = 1 - x supplied directly, so that
/// arguments extremely close to 1 (or far below 0) keep full precision.
EvalReport gauss_2f1_complement(double a, double b, double c, double y,
                                const SeriesControl& ctrl = {});

/// Direct Maclaurin series of 2F1, |x| < 1. No transformation is applied.
EvalReport gauss_2f1_series(double a, double b, double c, double x, const SeriesControl& ctrl = {});

/// Pfaff-transformed evaluation (1-x)^(-a) 2F1(a, c-b; c; x/(x-1)), x < 1.
EvalReport gauss_2f1_pfaff(double a, double b, double c, double x, const SeriesControl& ctrl = {});

/// 3F2(a1,a2,a3; b1,b2; x) by its power series, |x| < 1.
EvalReport hyp_3f2_unit(double a1, double a2, double a3, double b1, double b2, double x,
                        const SeriesControl& ctrl = {});

// ---------------------------------------------------------------------------
// Meijer G_{3,3}^{2,3}
// ---------------------------------------------------------------------------

struct MeijerGSpec {
  std::array<double, 3> a{};
  std::array<double, 3> b{};
  double x = 0.0;
};

/// The parameters used by the symmetric-ratio CDF:
///   a = (-n, 1/2, 0), b = (m, 0, -1/2).
MeijerGSpec ratio_cdf_meijer_spec(double m, double n, double x);

struct MeijerGEval {
  /// Empty when the residue expansion does not apply; the caller must fall
  /// back to another method.
  std::optional<EvalReport> report;
  std::string_view fallback_reason;

  bool fallback_required() const noexcept { return !report.has_value(); }
};

/// G_{3,3}^{2,3}(x | a; b) by residue (Slater) expansion for x < 1, and by the
/// inversion x -> 1/x onto G_{3,3}^{3,2} for x > 1. Near x = 1, where the
/// residue series cancel, and when two residue families coincide
/// (logarithmic case) or the series budget runs out, the Mellin-Barnes
/// integral is evaluated on a vertical contour instead. A fallback is
/// requested only if no separating contour exists or that quadrature fails.
MeijerGEval meijer_g_2_3_3_3(const MeijerGSpec& spec, const SeriesControl& ctrl = {});

/// The Mellin-Barnes contour integral alone.
MeijerGEval meijer_g_2_3_3_3_contour(const MeijerGSpec& spec);

}  // namespace vgr::specfun
