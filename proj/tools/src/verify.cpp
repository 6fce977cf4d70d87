#include "vgr_tools/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <map>
#include <numbers>
#include <random>
#include <sstream>

#include "vgr/errors.hpp"
#include "vgr/oracle.hpp"
#include "vgr/vg_ratio.hpp"

namespace vgr::verify {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::size_t kMaxNotes = 8;

std::string fmt(const char* pattern, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, v);
  return buf;
}

// Collects deviations per named group; a NaN deviation counts as a failure.
class Recorder {
 public:
  explicit Recorder(CriterionResult& r) : r_(r) {}

  void check(const std::string& group, double deviation, double tolerance, const std::string& where) {
    CheckGroup& g = find(group, tolerance);
    ++g.checks;
    const double d = std::isnan(deviation) ? INFINITY : deviation;
    g.max_deviation = std::max(g.max_deviation, d);
    if (!(d <= tolerance)) {
      ++g.failures;
      note(group + " " + where + ": deviation " + fmt("%.3g", d));
    }
  }

  void expect(const std::string& group, bool ok, const std::string& where) {
    check(group, ok ? 0.0 : 1.0, 0.0, where);
  }

  void note(const std::string& text) {
    if (r_.notes.size() < kMaxNotes) r_.notes.push_back(text);
  }

  // Context that is reported but not asserted; listed ahead of failures.
  void info(const std::string& text) { r_.notes.insert(r_.notes.begin(), text); }

 private:
  CheckGroup& find(const std::string& name, double tolerance) {
    for (auto& g : r_.groups) {
      if (g.name == name) return g;
    }
    r_.groups.push_back({name, 0.0, tolerance, 0, 0});
    return r_.groups.back();
  }

  CriterionResult& r_;
};

double rel(double got, double want) { return std::abs(got - want) / std::abs(want); }

std::string at(const GridPoint& p, double z) { return p.label() + " z=" + fmt("%g", z); }

std::string join(const std::vector<std::string>& args) {
  std::string s;
  for (const auto& a : args) s += (s.empty() ? "" : " ") + a;
  return s;
}

// ---------------------------------------------------------------------------

void anchors(Recorder& rec, const Options&) {
  const auto start = std::chrono::steady_clock::now();
  const auto log_case = RatioParams::make(0, 1, 0, 0, 1, 0);
  rec.check("rel-error", rel(ratio_pdf(log_case, 2.0).value, 2.0 / (kPi * kPi) * std::log(2.0) / 3.0), 1e-9,
            "log form z=2");
  rec.check("rel-error", rel(ratio_pdf(log_case, 1.0).value, 1.0 / (kPi * kPi)), 1e-9, "log form z=1");
  const auto lomax = RatioParams::make(0.5, 1, 0, 0.5, 1, 0);
  for (double z : {0.0, 0.5, -0.5, 1.0, 3.0, -10.0}) {
    const double a = 1.0 + std::abs(z);
    rec.check("rel-error", rel(ratio_pdf(lomax, z).value, 0.5 / (a * a)), 1e-9, "Lomax z=" + fmt("%g", z));
  }
  rec.check("rel-error", rel(fractional_moment(lomax, 0.5), kPi / 2), 1e-9, "Lomax E|Z|^0.5");
  rec.check("rel-error", rel(ratio_pdf(RatioParams::make(1, 1, 0, 1, 1, 0), 0.0).value, 4.0 / (kPi * kPi)), 1e-9,
            "m=n=1 f(0)");
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  rec.check("runtime-s", seconds, 1.0, "all anchors");
}

void oracle_equivalence(Recorder& rec, const Options&) {
  for (const auto& p : acceptance_grid()) {
    const auto rp = p.params();
    for (double z : acceptance_z()) {
      const double want = oracle::convolution_pdf_oracle(rp, z).value;
      rec.check("rel-error", rel(ratio_pdf(rp, z).value, want), 1e-6, at(p, z));
    }
  }
}

void form_equivalence(Recorder& rec, const Options&) {
  using F = SeriesForm;
  const F forms[] = {F::kDirect, F::kSmallZShape, F::kSmallZ, F::kLargeZ};
  const char* names[] = {"direct", "small-z-shape", "small-z", "large-z"};
  for (const auto& p : acceptance_grid()) {
    const auto rp = p.params();
    for (double z : acceptance_z()) {
      double v[4];
      bool ok[4];
      for (int i = 0; i < 4; ++i) {
        ok[i] = series_form_valid(rp, z, forms[i]);
        if (ok[i]) v[i] = ratio_pdf_series(rp, z, forms[i]).value;
      }
      for (int i = 0; i < 4; ++i) {
        for (int j = i + 1; j < 4; ++j) {
          if (ok[i] && ok[j]) {
            rec.check("pairwise-rel", rel(v[i], v[j]), 1e-8,
                      at(p, z) + " " + names[i] + " vs " + names[j]);
          }
        }
      }
    }
  }
}

void normalization(Recorder& rec, const Options&) {
  for (const auto& p : acceptance_grid()) {
    rec.check("abs-mass-error", std::abs(ratio_total_mass(p.params()).value - 1.0), 1e-6, p.label());
  }
}

void cdf_dual_path(Recorder& rec, const Options&) {
  const double shapes[] = {0.25, 0.75, 1.25};
  const std::pair<double, double> scales[] = {{1.0, 1.0}, {0.5, 2.0}};
  for (double m : shapes) {
    for (double n : shapes) {
      for (const auto& [a1, a2] : scales) {
        const GridPoint p{m, n, a1, a2, 0.0, 0.0};
        const auto rp = p.params();
        for (double z : {0.25, 0.5, 1.0, 2.0, 4.0, -0.25, -0.5, -1.0, -2.0, -4.0}) {
          const double g = ratio_cdf_meijer(rp, z).value;
          const double q = ratio_cdf_quadrature(rp, z).value;
          rec.check("meijer-vs-quadrature", std::abs(g - q), 1e-8, at(p, z));
        }
      }
    }
  }
  // Every symmetric grid point, whichever route ratio_cdf picks.
  for (const auto& p : acceptance_grid()) {
    if (p.beta1 != 0.0 || p.beta2 != 0.0) continue;
    const auto rp = p.params();
    rec.check("F(0)-half", std::abs(ratio_cdf(rp, 0.0).value - 0.5), 1e-12, p.label());
    // P(|X| <= |Y|) = 1/2 needs X and Y identically distributed.
    if (p.alpha1 == p.alpha2 && p.m == p.n) {
      const double mass = ratio_cdf(rp, 1.0).value - ratio_cdf(rp, -1.0).value;
      rec.check("F(1)-F(-1)-half", std::abs(mass - 0.5), 1e-7, p.label());
    }
  }
}

void asymptotics(Recorder& rec, const Options&) {
  // The same checks with z measured in units of alpha2 / alpha1, the scale
  // of Z; reported for context only.
  std::size_t scaled_tail = 0, scaled_origin = 0;
  for (const auto& p : acceptance_grid()) {
    const auto rp = p.params();
    const double unit = rp.switch_point();
    if (p.n > 0.0) {
      for (double z : {200.0, -200.0}) {
        const double ratio = ratio_pdf(rp, z).value / tail_pdf_asymptotic(rp, z);
        rec.check("tail-ratio-minus-1", std::abs(ratio - 1.0), 0.05, at(p, z));
        const double scaled = ratio_pdf(rp, z * unit).value / tail_pdf_asymptotic(rp, z * unit);
        if (!(std::abs(scaled - 1.0) <= 0.05)) ++scaled_tail;
      }
    }
    if (p.n == -0.25) {
      const double z1 = 1e4, z2 = 1e5;
      const double want = -(1.0 + 2.0 * p.n);
      const double right = std::log(ratio_sf(rp, z2).value / ratio_sf(rp, z1).value) / std::log(z2 / z1);
      const double left = std::log(ratio_cdf(rp, -z2).value / ratio_cdf(rp, -z1).value) / std::log(z2 / z1);
      rec.check("tail-slope", std::abs(right - want), 0.02, p.label() + " right tail");
      rec.check("tail-slope", std::abs(left - want), 0.02, p.label() + " left tail");
    }
    if (p.m == -0.25) {
      const double c = origin_behavior(rp).coefficient;
      const auto scaled_density = [&](double z) { return ratio_pdf(rp, z).value * std::pow(std::abs(z), -2.0 * p.m); };
      for (double z : {1e-4, -1e-4}) {
        rec.check("origin-constant-rel", rel(scaled_density(z), c), 0.02, at(p, z));
        if (!(rel(scaled_density(z * unit), c) <= 0.02)) ++scaled_origin;
      }
    }
  }
  rec.info("not asserted: with z in units of alpha2/alpha1, " + std::to_string(scaled_tail) + " tail-ratio and " +
           std::to_string(scaled_origin) + " origin-constant checks exceed their bounds");
}

std::vector<GridPoint> monte_carlo_points() {
  return {{-0.25, 0.0, 1.0, 1.0, 0.0, 0.0},  {0.0, 1.5, 0.5, 2.0, 0.2, 0.0},
          {0.5, -0.25, 2.0, 1.0, 0.0, -0.4}, {1.0, 0.5, 1.0, 0.5, 0.4, 0.2},
          {1.5, 1.0, 2.0, 2.0, 0.8, 0.8},    {0.0, 0.0, 1.0, 1.0, 0.4, 0.4}};
}

void monte_carlo(Recorder& rec, const Options& opts) {
  const std::size_t n = opts.mc_samples;
  const double critical = 1.95 / std::sqrt(static_cast<double>(n));  // 0.1% level
  std::size_t index = 0;
  for (const auto& p : monte_carlo_points()) {
    const auto rp = p.params();
    std::mt19937_64 rng(opts.seed + 7919 * ++index);
    auto xs = oracle::mc_ratio_sample(rp, rng, n);
    const double k = 0.5;
    if (2.0 * p.n + 1.0 > k) {
      double sum = 0.0, sum2 = 0.0;
      for (double x : xs) {
        const double v = std::sqrt(std::abs(x));
        sum += v;
        sum2 += v * v;
      }
      const double mean = sum / static_cast<double>(n);
      const double var = (sum2 / static_cast<double>(n) - mean * mean) * n / (n - 1.0);
      const double se = std::sqrt(var / static_cast<double>(n));
      rec.check("moment-standard-errors", std::abs(mean - fractional_moment(rp, k)) / se, 3.0, p.label());
    }
    const oracle::DensityModel model{
        [&](double z) { return z == 0.0 && p.m <= 0.0 ? INFINITY : ratio_pdf(rp, z).value; },
        [&](double lo, double hi) { return ratio_probability(rp, lo, hi).value; }};
    rec.check("ks-statistic", oracle::ks_statistic_density(std::move(xs), model), critical, p.label());
  }
}

void normal_product(Recorder& rec, const Options& opts) {
  const std::size_t n = opts.mc_samples;
  rec.check("anchor-rel", rel(normal_product_ratio_pdf(1, 1, 0, 0, 2.0).value, 2.0 / (kPi * kPi) * std::log(2.0) / 3.0),
            1e-9, "t=2");
  rec.check("anchor-rel", rel(normal_product_ratio_pdf(1, 1, 0, 0, 1.0).value, 1.0 / (kPi * kPi)), 1e-9, "t=1");

  const double critical = 1.63 / std::sqrt(static_cast<double>(n));  // 1% level
  {
    const double s = 1.0, rho = 0.5;
    std::mt19937_64 rng(opts.seed + 101);
    auto w = oracle::mc_normal_product(s, rho, rng, n);
    const VGParams law = normal_product_params(s, rho);
    const oracle::DensityModel model{[&](double x) { return vg_pdf(law, x, OriginPolicy::kInfinity); },
                                     [&](double lo, double hi) { return oracle::vg_probability(law, lo, hi); }};
    rec.check("ks-statistic", oracle::ks_statistic_density(std::move(w), model), critical, "W1 rho=0.5 vs VG law");
  }
  {
    std::mt19937_64 rng(opts.seed + 202);
    auto t = oracle::mc_normal_product_ratio(1, 1, 0, 0, rng, n);
    const auto rp = normal_product_ratio_params(1, 1, 0, 0);
    const oracle::DensityModel model{
        [](double x) { return x == 0.0 ? INFINITY : normal_product_ratio_pdf(1, 1, 0, 0, x).value; },
        [&](double lo, double hi) { return ratio_probability(rp, lo, hi).value; }};
    rec.check("ks-statistic", oracle::ks_statistic_density(std::move(t), model), critical, "T rho=0 vs log form");
  }
  {
    const double s1 = 1.0, s2 = 2.0, r1 = 0.3, r2 = -0.2;
    const double bandwidth = 0.04;
    const double xs[] = {0.5, 0.8, 1.5};
    // Pooled over batches so sampling noise (about 1.2% per million draws at
    // t=1.5) stays well inside the bound while memory stays at one batch.
    constexpr int kBatches = 16;
    double kde[3] = {0.0, 0.0, 0.0};
    std::mt19937_64 rng(opts.seed + 303);
    for (int b = 0; b < kBatches; ++b) {
      const auto t = oracle::mc_normal_product_ratio(s1, s2, r1, r2, rng, n);
      for (int i = 0; i < 3; ++i) kde[i] += oracle::kernel_density(t, xs[i], bandwidth) / kBatches;
    }
    for (int i = 0; i < 3; ++i) {
      const double x = xs[i];
      rec.check("kde-rel", rel(normal_product_ratio_pdf(s1, s2, r1, r2, x).value, kde[i]), 0.02,
                "rho=(0.3,-0.2) t=" + fmt("%g", x));
    }
  }
}

template <class E>
bool throws(const std::function<void()>& f) {
  try {
    f();
  } catch (const E&) {
    return true;
  } catch (...) {
    return false;
  }
  return false;
}

void defined_failures(Recorder& rec, const Options& opts) {
  rec.expect("library-error", throws<UndefinedMeanError>([] {
               fractional_moment(RatioParams::make(1, 1, 0, 1, 1, 0), 1.0);
             }),
             "k=1 moment raises undefined-mean");
  for (double m : {0.0, -0.25}) {
    rec.expect("library-error", throws<SingularityError>([m] {
                 ratio_pdf(RatioParams::make(m, 1, 0, 1, 1, 0), 0.0);
               }),
               "z=0 with m=" + fmt("%g", m) + " raises singularity");
  }
  const auto beta_message = [](double b1, double b2, const std::string& want) {
    try {
      RatioParams::make(0.5, 1, b1, 0.5, 1, b2);
    } catch (const DomainError& e) {
      return std::string(e.what()).find(want) != std::string::npos;
    }
    return false;
  };
  rec.expect("library-error", beta_message(1.0, 0.0, "|beta1| must be < alpha1"), "|beta1| = alpha1");
  rec.expect("library-error", beta_message(0.0, -1.5, "|beta2| must be < alpha2"), "|beta2| > alpha2");

  if (!opts.cli) {
    rec.note("CLI exit codes not checked (no runner supplied)");
    return;
  }
  const std::vector<std::string> common{"--alpha1", "1", "--alpha2", "1", "--beta2", "0"};
  const auto run = [&](std::vector<std::string> args, const std::string& want) {
    args.insert(args.end(), common.begin(), common.end());
    std::string out, err;
    const int code = opts.cli(args, out, err);
    rec.expect("cli-exit-2", code == 2 && err.find(want) != std::string::npos,
               "`" + join(args) + "` exit " + std::to_string(code));
  };
  run({"moment", "--m", "0.5", "--n", "0.5", "--beta1", "0", "--k", "1"}, "mean undefined");
  run({"pdf", "--m", "-0.25", "--n", "0.5", "--beta1", "0", "--z", "0"}, "singular");
  run({"pdf", "--m", "0.5", "--n", "0.5", "--beta1", "1", "--z", "1"}, "|beta1| must be < alpha1");
}

void figures(Recorder& rec, const Options& opts) {
  const auto grid = figure_grid();
  for (const auto& c : figure_curves()) {
    const auto rp = c.point.params();
    const std::string name = c.figure + " " + c.label;
    for (double z : grid) {
      rec.check("oracle-rel", rel(ratio_pdf(rp, z).value, oracle::convolution_pdf_oracle(rp, z).value), 1e-6,
                name + " z=" + fmt("%g", z));
    }
    rec.check("abs-mass-error", std::abs(ratio_total_mass(rp).value - 1.0), 1e-6, name);
  }
  if (!opts.cli) {
    rec.note("figure-data output not checked (no runner supplied)");
    return;
  }
  std::string out, err;
  const int code = opts.cli({"figure-data", "--format", "csv"}, out, err);
  const auto lines = static_cast<std::size_t>(std::count(out.begin(), out.end(), '\n'));
  rec.expect("cli-figure-data", code == 0 && lines == 1 + grid.size() * figure_curves().size(),
             "figure-data exit " + std::to_string(code) + ", " + std::to_string(lines) + " lines");
}

struct Criterion {
  const char* name;
  void (*run)(Recorder&, const Options&);
};

const Criterion kCriteria[kCriterionCount] = {
    {"closed-form-anchors", anchors},     {"oracle-equivalence", oracle_equivalence},
    {"form-equivalence", form_equivalence}, {"normalization", normalization},
    {"cdf-dual-path", cdf_dual_path},     {"asymptotics", asymptotics},
    {"monte-carlo", monte_carlo},         {"normal-product-ratio", normal_product},
    {"defined-failures", defined_failures}, {"figure-reproduction", figures},
};

}  // namespace

std::string GridPoint::label() const {
  char buf[160];
  std::snprintf(buf, sizeof buf, "m=%g n=%g alpha1=%g alpha2=%g beta1=%g beta2=%g", m, n, alpha1, alpha2, beta1,
                beta2);
  return buf;
}

const std::vector<GridPoint>& acceptance_grid() {
  static const std::vector<GridPoint> grid = [] {
    std::vector<GridPoint> g;
    const double shapes[] = {-0.25, 0.0, 0.5, 1.0, 1.5};
    const double scales[] = {0.5, 1.0, 2.0};
    for (double m : shapes) {
      for (double n : shapes) {
        for (double a1 : scales) {
          for (double a2 : scales) {
            g.push_back({m, n, a1, a2, 0.0, 0.0});
            g.push_back({m, n, a1, a2, 0.4 * a1, 0.0});
            g.push_back({m, n, a1, a2, 0.0, -0.4 * a2});
            g.push_back({m, n, a1, a2, 0.4 * a1, 0.4 * a2});
          }
        }
      }
    }
    return g;
  }();
  return grid;
}

const std::vector<double>& acceptance_z() {
  static const std::vector<double> z{-5, -2, -1, -0.5, -0.1, 0.1, 0.5, 1, 2, 5};
  return z;
}

const std::vector<FigureCurve>& figure_curves() {
  static const std::vector<FigureCurve> curves = [] {
    std::vector<FigureCurve> c;
    for (double m : {-0.25, 0.0}) {
      const std::string fig = (m < 0.0) ? "figure1a" : "figure1b";
      for (double n : {-0.25, 0.0, 0.5, 1.5}) {
        c.push_back({fig, "m=" + fmt("%g", m) + " n=" + fmt("%g", n), {m, n, 1.0, 1.0, 0.0, 0.0}});
      }
    }
    for (double b2 : {-0.5, 0.0, 0.5}) {
      c.push_back({"figure2", "beta2=" + fmt("%g", b2), {1.5, 1.5, 1.0, 1.0, 0.5, b2}});
    }
    return c;
  }();
  return curves;
}

std::vector<double> figure_grid() {
  // An even count keeps the symmetric grid clear of z = 0.
  constexpr int kPoints = 160;
  constexpr double kReach = 4.0;
  std::vector<double> z(kPoints);
  for (int i = 0; i < kPoints; ++i) z[i] = -kReach + 2.0 * kReach * i / (kPoints - 1);
  return z;
}

CriterionResult run_criterion(int id, const Options& opts) {
  CriterionResult r;
  r.id = id;
  if (id < 1 || id > kCriterionCount) {
    r.name = "unknown";
    r.notes.push_back("no criterion " + std::to_string(id));
    return r;
  }
  const Criterion& c = kCriteria[id - 1];
  r.name = c.name;
  Recorder rec(r);
  const auto start = std::chrono::steady_clock::now();
  bool crashed = false;
  try {
    c.run(rec, opts);
  } catch (const std::exception& e) {
    crashed = true;
    rec.note(std::string("exception: ") + e.what());
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  r.passed = !crashed && !r.groups.empty() &&
             std::all_of(r.groups.begin(), r.groups.end(), [](const CheckGroup& g) { return g.failures == 0; });
  return r;
}

std::vector<CriterionResult> run_all(const Options& opts, const std::function<void(const CriterionResult&)>& on_result) {
  std::vector<CriterionResult> out;
  for (int id = 1; id <= kCriterionCount; ++id) {
    out.push_back(run_criterion(id, opts));
    if (on_result) on_result(out.back());
  }
  return out;
}

std::string format_line(const CriterionResult& r) {
  std::ostringstream s;
  s << (r.passed ? "PASS" : "FAIL") << " C" << r.id << ' ' << r.name;
  for (const auto& g : r.groups) {
    s << " | " << g.name << ' ' << fmt("%.3g", g.max_deviation) << " <= " << fmt("%.3g", g.tolerance) << " ("
      << g.checks;
    if (g.failures) s << ", " << g.failures << " failed";
    s << ')';
  }
  s << " | " << fmt("%.2f", r.seconds) << " s";
  return s.str();
}

}  // namespace vgr::verify
