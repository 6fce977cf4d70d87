#include "vgr/errors.hpp"
#include "vgr/eval_report.hpp"
#include "vgr/series_control.hpp"

namespace vgr {

void SeriesControl::validate() const {
  if (!(rel_tol > 0.0)) throw DomainError("rel_tol must be > 0");
  if (!(abs_tol > 0.0)) throw DomainError("abs_tol must be > 0");
  if (max_terms < 1) throw DomainError("max_terms must be >= 1");
}

std::string_view to_string(Method m) noexcept {
  switch (m) {
    case Method::kHypSeries: return "hyp-series";
    case Method::kHypPolynomial: return "hyp-polynomial";
    case Method::kHypPfaff: return "hyp-pfaff";
    case Method::kHypConnection: return "hyp-connection";
    case Method::kHypLogConnection: return "hyp-log-connection";
    case Method::kHypGaussSum: return "hyp-gauss-sum";
    case Method::kHyp3F2Series: return "hyp3f2-series";
    case Method::kMeijerResidue: return "meijer-residue";
    case Method::kMeijerInverted: return "meijer-inverted";
    case Method::kMeijerContour: return "meijer-contour";
    case Method::kSeriesDirect: return "series-eq3";
    case Method::kSeriesSmallZShape: return "series-eq6";
    case Method::kSeriesSmallZ: return "series-eq7";
    case Method::kSeriesLargeZ: return "series-eq8";
    case Method::kElementary: return "elementary";
    case Method::kSymmetricClosed: return "symmetric-closed";
    case Method::kLogForm: return "log-form";
    case Method::kMeijerCdf: return "meijer-cdf";
    case Method::kQuadratureCdf: return "quadrature-cdf";
    case Method::kQuadrature: return "quadrature";
    case Method::kClosedForm: return "closed-form";
  }
  return "unknown";
}

}  // namespace vgr
