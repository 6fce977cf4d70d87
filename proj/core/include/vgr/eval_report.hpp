#pragma once

#include <string_view>

namespace vgr {

/// Which evaluation route produced a value.
enum class Method {
  // Gaussian / generalized hypergeometric evaluators
  kHypSeries,
  kHypPolynomial,
  kHypPfaff,
  kHypConnection,
  kHypLogConnection,
  kHypGaussSum,
  kHyp3F2Series,
  kMeijerResidue,
  kMeijerInverted,
  kMeijerContour,
  // Ratio density / distribution
  kSeriesDirect,
  kSeriesSmallZShape,
  kSeriesSmallZ,
  kSeriesLargeZ,
  kElementary,
  kSymmetricClosed,
  kLogForm,
  kMeijerCdf,
  kQuadratureCdf,
  kQuadrature,
  kClosedForm,
};

std::string_view to_string(Method m) noexcept;

/// Value with an error estimate and the route that produced it.
struct EvalReport {
  double value = 0.0;
  double err_estimate = 0.0;
  Method method = Method::kHypSeries;
};

}  // namespace vgr
