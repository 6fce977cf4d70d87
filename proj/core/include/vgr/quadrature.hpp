#pragma once

#include <cstddef>
#include <functional>
#include <span>

namespace vgr::quad {

struct QuadratureResult {
  double value = 0.0;
  double abs_err_estimate = 0.0;
  std::size_t evaluations = 0;
  /// False when the subdivision budget ran out before the tolerance was met;
  /// value and error estimate are then the best available.
  bool converged = true;
};

struct QuadOptions {
  double abs_tol = 1e-13;
  double rel_tol = 1e-11;
  std::size_t max_subdivisions = 4000;
};

using Integrand = std::function<double(double)>;

/// Globally adaptive Gauss-Kronrod (7/15) integration over [lo, hi]. Panels
/// are bisected in order of their error estimate. The rule never samples the
/// interval endpoints, so integrable endpoint singularities are allowed.
QuadratureResult integrate(const Integrand& f, double lo, double hi, const QuadOptions& opts = {});

/// Same as above with an initial partition given by sorted breakpoints
/// (first and last entries are the integration limits).
QuadratureResult integrate(const Integrand& f, std::span<const double> breakpoints,
                           const QuadOptions& opts = {});

}  // namespace vgr::quad
