#pragma once

#include "vgr/vg_dist.hpp"

namespace vgr {

/// Z = X / Y with X ~ VG(m, alpha1, beta1, 0) and Y ~ VG(n, alpha2, beta2, 0)
/// independent.
class RatioParams {
 public:
  RatioParams(VGParams num, VGParams den) : num_(num), den_(den) {}

  /// Builds both marginals, naming violated constraints with the
  /// numerator/denominator suffixes (m, alpha1, beta1 / n, alpha2, beta2).
  static RatioParams make(double m, double alpha1, double beta1, double n, double alpha2,
                          double beta2);

  const VGParams& num() const noexcept { return num_; }
  const VGParams& den() const noexcept { return den_; }

  double m() const noexcept { return num_.m(); }
  double n() const noexcept { return den_.m(); }
  double alpha1() const noexcept { return num_.alpha(); }
  double alpha2() const noexcept { return den_.alpha(); }
  double beta1() const noexcept { return num_.beta(); }
  double beta2() const noexcept { return den_.beta(); }

  /// beta1 == beta2 == 0 up to the exact-zero threshold.
  bool symmetric_skew() const noexcept;
  /// |z| = alpha2 / alpha1, where the hypergeometric argument changes sign.
  double switch_point() const noexcept { return alpha2() / alpha1(); }

 private:
  VGParams num_;
  VGParams den_;
};

/// Parameters with |value| below this are treated as exactly zero when
/// routing to special-case formulas.
inline constexpr double kExactZero = 1e-14;

}  // namespace vgr
