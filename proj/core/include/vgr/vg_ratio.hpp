#pragma once

#include "vgr/eval_report.hpp"
#include "vgr/ratio_params.hpp"
#include "vgr/series_control.hpp"
#include "vgr/vg_dist.hpp"

namespace vgr {

enum class TailRegime { kPositive, kZero, kNegative };

TailRegime classify_regime(double shape) noexcept;
const char* to_string(TailRegime r) noexcept;

// ---------------------------------------------------------------------------
// Density
// ---------------------------------------------------------------------------

/// Density of Z with automatic form selection:
///   beta = 0, m = n = 0     closed logarithmic form
///   beta = 0                single 2F1 form
///   m, n half-integers      finite elementary sum
///   otherwise               hypergeometric series in powers of
///                           (beta1 z + beta2) for |z| < alpha2/alpha1 and of
///                           (beta1 + beta2/z) beyond
/// Throws SingularityError at z = 0 when m <= 0.
EvalReport ratio_pdf(const RatioParams& rp, double z, const SeriesControl& ctrl = {});

/// The four equivalent series representations.
enum class SeriesForm {
  kDirect,        // powers of 1/z, argument 1 - alpha2^2/(alpha1 z)^2, valid for z != 0
  kSmallZShape,   // powers of z, |z|^(2m) prefactor, |z| < sqrt(2) alpha2/alpha1
  kSmallZ,        // powers of z, |z| < sqrt(2) alpha2/alpha1 (and z = 0 when m > 0)
  kLargeZ,        // powers of 1/z, |z| > alpha2/(sqrt(2) alpha1)
};

/// True when z lies inside the validity band of the given representation.
bool series_form_valid(const RatioParams& rp, double z, SeriesForm form) noexcept;

/// Evaluates one specific series representation. Throws DomainError outside
/// its validity band and BudgetExceeded when the term budget runs out.
EvalReport ratio_pdf_series(const RatioParams& rp, double z, SeriesForm form,
                            const SeriesControl& ctrl = {});

/// Finite double sum for half-integer m and n. Throws DomainError otherwise.
EvalReport ratio_pdf_elementary(const RatioParams& rp, double z);

// ---------------------------------------------------------------------------
// Distribution function
// ---------------------------------------------------------------------------

/// P(Z <= z). For beta1 = beta2 = 0 uses the Meijer-G closed form when its
/// residue expansion applies; otherwise adaptive quadrature of the density.
EvalReport ratio_cdf(const RatioParams& rp, double z, const SeriesControl& ctrl = {});

/// The Meijer-G route only. Throws DomainError when beta != 0 or when the
/// residue expansion cannot be used (integer m, unit argument, coincident
/// residue families); the message carries the reason.
EvalReport ratio_cdf_meijer(const RatioParams& rp, double z, const SeriesControl& ctrl = {});

/// The quadrature route only.
EvalReport ratio_cdf_quadrature(const RatioParams& rp, double z, const SeriesControl& ctrl = {});

/// P(Z > z), integrated directly over (z, inf) rather than as 1 - F.
EvalReport ratio_sf(const RatioParams& rp, double z, const SeriesControl& ctrl = {});

/// P(lo < Z < hi); lo may be -inf and hi may be +inf.
EvalReport ratio_probability(const RatioParams& rp, double lo, double hi,
                             const SeriesControl& ctrl = {});

/// Integral of the density over the whole line.
EvalReport ratio_total_mass(const RatioParams& rp, const SeriesControl& ctrl = {});

// ---------------------------------------------------------------------------
// Asymptotics and moments
// ---------------------------------------------------------------------------

struct RegimeConstant {
  TailRegime regime;
  double coefficient;
};

/// Behaviour at the origin, by the regime of m:
///   positive  f(0) = c
///   zero      f(z) ~ -c log|z|
///   negative  f(z) ~ c |z|^(2m)
RegimeConstant origin_behavior(const RatioParams& rp);

/// Tail constant, by the regime of n:
///   positive  f(z) ~ c z^-2
///   zero      f(z) ~ c z^-2 log|z|
///   negative  f(z) ~ c |z|^(-2-2n)
RegimeConstant tail_behavior(const RatioParams& rp);

/// Leading-order tail approximation of the density; |z| > 0.
double tail_pdf_asymptotic(const RatioParams& rp, double z);

/// Leading-order approximation of P(Z > z); z > 0.
double tail_probability_asymptotic(const RatioParams& rp, double z);

/// E|Z|^k for max(-1, -2m-1) < k < min(1, 2n+1). Throws UndefinedMeanError
/// for k = 1 and RangeError elsewhere outside the interval.
double fractional_moment(const RatioParams& rp, double k);

// ---------------------------------------------------------------------------
// Ratio of products of correlated normals
// ---------------------------------------------------------------------------

/// Law of W = U V for a zero-mean bivariate normal (U, V) with
/// sigma_U sigma_V = s and correlation rho: VG(0, 1/(s(1-rho^2)), rho/(s(1-rho^2))).
VGParams normal_product_params(double s, double rho);
RatioParams normal_product_ratio_params(double s1, double s2, double rho1, double rho2);

/// Density of T = W1 / W2. Uses the closed logarithmic form when
/// rho1 = rho2 = 0 and ratio_pdf otherwise. Throws SingularityError at t = 0.
EvalReport normal_product_ratio_pdf(double s1, double s2, double rho1, double rho2, double t,
                                    const SeriesControl& ctrl = {});

/// The same density summed term by term over (i, j) in the correlation
/// parametrisation, without collapsing the inner sum. Independent cross-check
/// of the mapping and of the collapsed series; requires t != 0.
EvalReport normal_product_ratio_double_sum(double s1, double s2, double rho1, double rho2,
                                           double t, const SeriesControl& ctrl = {});

}  // namespace vgr
