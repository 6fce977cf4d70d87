#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "vgr/ratio_params.hpp"

namespace vgr::verify {

/// One point of the acceptance parameter grid.
struct GridPoint {
  double m, n, alpha1, alpha2, beta1, beta2;
  RatioParams params() const { return RatioParams::make(m, alpha1, beta1, n, alpha2, beta2); }
  std::string label() const;
};

/// m, n in {-0.25, 0, 0.5, 1, 1.5}, alpha1, alpha2 in {0.5, 1, 2} and four
/// skew patterns; 900 points in a fixed order.
const std::vector<GridPoint>& acceptance_grid();

/// z in {+-0.1, +-0.5, +-1, +-2, +-5}.
const std::vector<double>& acceptance_z();

/// A density curve plotted in one of the two reference figures.
struct FigureCurve {
  std::string figure;
  std::string label;
  GridPoint point;
};

const std::vector<FigureCurve>& figure_curves();

/// Abscissae at which every figure curve is tabulated (no exact zero).
std::vector<double> figure_grid();

/// Runs CLI arguments in-process; returns the exit code and captures both streams.
using CliRunner =
    std::function<int(const std::vector<std::string>& args, std::string& out, std::string& err)>;

struct Options {
  std::uint64_t seed = 20240917;
  std::size_t mc_samples = 1000000;
  /// Checks the CLI side of criteria 9 and 10 when set.
  CliRunner cli;
};

/// Worst deviation seen by one family of checks and the bound it must meet.
struct CheckGroup {
  std::string name;
  double max_deviation = 0.0;
  double tolerance = 0.0;
  std::size_t checks = 0;
  std::size_t failures = 0;
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::vector<CheckGroup> groups;
  double seconds = 0.0;
  /// First failing checks and any exception text.
  std::vector<std::string> notes;
};

inline constexpr int kCriterionCount = 10;

/// Runs one acceptance criterion (1-based id). Never throws; an exception
/// inside a check fails the criterion and lands in `notes`.
CriterionResult run_criterion(int id, const Options& opts);

/// All criteria in order; `on_result` sees each one as soon as it finishes.
std::vector<CriterionResult> run_all(const Options& opts,
                                     const std::function<void(const CriterionResult&)>& on_result = {});

/// "PASS C2 oracle-equivalence | rel-error 1.3e-12 <= 1e-06 (9000) | 5.1 s"
std::string format_line(const CriterionResult& r);

}  // namespace vgr::verify
