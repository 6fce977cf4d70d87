#pragma once

#include <cstddef>

namespace vgr {

/// Truncation policy shared by every infinite-series evaluator.
struct SeriesControl {
  double rel_tol = 1e-12;
  double abs_tol = 1e-300;
  std::size_t max_terms = 10000;

  /// Throws DomainError unless all fields are strictly positive.
  void validate() const;
};

}  // namespace vgr
