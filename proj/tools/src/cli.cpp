#include "vgr_tools/cli.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "vgr/errors.hpp"
#include "vgr/oracle.hpp"
#include "vgr/vg_ratio.hpp"
#include "vgr_tools/verify.hpp"

namespace vgr::cli {

namespace {

using nlohmann::json;

/// Thrown for flag combinations CLI11 cannot express; maps to exit 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// One output stream of homogeneous records in CSV or JSON lines.
class RecordWriter {
 public:
  RecordWriter(std::ostream& out, bool jsonl, std::vector<std::string> columns)
      : out_(out), jsonl_(jsonl), columns_(std::move(columns)) {
    if (jsonl_) return;
    for (std::size_t i = 0; i < columns_.size(); ++i) out_ << (i ? "," : "") << columns_[i];
    out_ << '\n';
  }

  using Field = std::variant<double, std::string, std::uint64_t>;

  void write(const std::vector<Field>& fields) {
    if (jsonl_) {
      json j = json::object();
      for (std::size_t i = 0; i < fields.size(); ++i) {
        std::visit([&](const auto& v) { j[columns_[i]] = v; }, fields[i]);
      }
      out_ << j.dump() << '\n';
      return;
    }
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i) out_ << ',';
      if (const auto* d = std::get_if<double>(&fields[i])) {
        out_ << number(*d);
      } else if (const auto* s = std::get_if<std::string>(&fields[i])) {
        out_ << *s;
      } else {
        out_ << std::get<std::uint64_t>(fields[i]);
      }
    }
    out_ << '\n';
  }

 private:
  std::ostream& out_;
  bool jsonl_;
  std::vector<std::string> columns_;
};

struct Settings {
  double m = 0.5, n = 0.5;
  double alpha1 = 1.0, alpha2 = 1.0;
  double beta1 = 0.0, beta2 = 0.0;
  double s1 = 1.0, s2 = 1.0, rho1 = 0.0, rho2 = 0.0;
  std::vector<double> z;
  std::string grid;
  std::vector<double> k;
  std::string format = "csv";
  double tol = 1e-12;
  std::size_t max_terms = 10000;
  std::optional<std::uint64_t> seed;
  std::size_t count = 10;
  std::optional<std::size_t> mc_samples;
  std::vector<int> criteria;
  bool survival = false;

  RatioParams params() const { return RatioParams::make(m, alpha1, beta1, n, alpha2, beta2); }
  SeriesControl control() const {
    SeriesControl c{tol, 1e-300, max_terms};
    c.validate();
    return c;
  }
  bool jsonl() const { return format == "jsonl"; }
};

void add_shape_flags(CLI::App* app, Settings& s) {
  app->add_option("--m", s.m, "numerator shape (> -1/2)")->capture_default_str();
  app->add_option("--n", s.n, "denominator shape (> -1/2)")->capture_default_str();
  app->add_option("--alpha1", s.alpha1, "numerator tail rate (> 0)")->capture_default_str();
  app->add_option("--alpha2", s.alpha2, "denominator tail rate (> 0)")->capture_default_str();
  app->add_option("--beta1", s.beta1, "numerator skew (|beta1| < alpha1)")->capture_default_str();
  app->add_option("--beta2", s.beta2, "denominator skew (|beta2| < alpha2)")->capture_default_str();
}

void add_numeric_flags(CLI::App* app, Settings& s) {
  app->add_option("--tol", s.tol, "relative truncation tolerance")->capture_default_str();
  app->add_option("--max-terms", s.max_terms, "series term budget")->capture_default_str();
}

void add_format_flag(CLI::App* app, Settings& s) {
  app->add_option("--format", s.format, "output format")
      ->check(CLI::IsMember({"csv", "jsonl"}))
      ->capture_default_str();
}

void add_abscissa_flags(CLI::App* app, Settings& s) {
  auto* z = app->add_option("--z", s.z, "evaluation point (repeatable)");
  auto* g = app->add_option("--grid", s.grid, "inclusive grid lo:hi:count");
  z->excludes(g);
}

std::vector<double> parse_grid(const std::string& spec) {
  double lo = 0, hi = 0;
  long long count = 0;
  char tail = 0;
  if (std::sscanf(spec.c_str(), "%lf:%lf:%lld%c", &lo, &hi, &count, &tail) != 3) {
    throw UsageError("--grid must be lo:hi:count, got '" + spec + "'");
  }
  if (count < 1) throw UsageError("--grid count must be >= 1");
  if (!(lo <= hi) || !std::isfinite(lo) || !std::isfinite(hi)) throw UsageError("--grid requires finite lo <= hi");
  if (count == 1) {
    if (lo != hi) throw UsageError("--grid with count 1 requires lo = hi");
    return {lo};
  }
  std::vector<double> z(static_cast<std::size_t>(count));
  for (long long i = 0; i < count; ++i) z[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
  z.back() = hi;
  return z;
}

std::vector<double> abscissae(const Settings& s) {
  if (!s.grid.empty()) return parse_grid(s.grid);
  if (s.z.empty()) throw UsageError("one of --z or --grid is required");
  return s.z;
}

// Evaluates every point before anything is written, so a failure part way
// through a grid leaves no partial output behind.
template <class Eval>
std::vector<EvalReport> evaluate_all(const std::vector<double>& xs, Eval eval) {
  std::vector<EvalReport> r;
  r.reserve(xs.size());
  for (double x : xs) r.push_back(eval(x));
  return r;
}

void write_reports(RecordWriter& w, const std::vector<double>& xs, const std::vector<EvalReport>& rs) {
  for (std::size_t i = 0; i < xs.size(); ++i) {
    w.write({xs[i], rs[i].value, rs[i].err_estimate, std::string(to_string(rs[i].method))});
  }
}

int cmd_pdf(const Settings& s, std::ostream& out) {
  const auto rp = s.params();
  const auto ctrl = s.control();
  const auto zs = abscissae(s);
  const auto rs = evaluate_all(zs, [&](double z) { return ratio_pdf(rp, z, ctrl); });
  RecordWriter w(out, s.jsonl(), {"z", "value", "err", "method"});
  write_reports(w, zs, rs);
  return kExitOk;
}

int cmd_cdf(const Settings& s, std::ostream& out) {
  const auto rp = s.params();
  const auto ctrl = s.control();
  const auto zs = abscissae(s);
  const auto rs = evaluate_all(zs, [&](double z) { return s.survival ? ratio_sf(rp, z, ctrl) : ratio_cdf(rp, z, ctrl); });
  RecordWriter w(out, s.jsonl(), {"z", "value", "err", "method"});
  write_reports(w, zs, rs);
  return kExitOk;
}

int cmd_sample(const Settings& s, std::ostream& out) {
  const auto rp = s.params();
  std::mt19937_64 rng(*s.seed);
  const auto xs = oracle::mc_ratio_sample(rp, rng, s.count);
  RecordWriter w(out, s.jsonl(), {"index", "value"});
  for (std::size_t i = 0; i < xs.size(); ++i) w.write({static_cast<std::uint64_t>(i), xs[i]});
  return kExitOk;
}

int cmd_moment(const Settings& s, std::ostream& out) {
  const auto rp = s.params();
  if (s.k.empty()) throw UsageError("--k is required");
  for (double k : s.k) fractional_moment(rp, k);  // reject before emitting anything
  RecordWriter w(out, s.jsonl(), {"k", "value", "err", "method"});
  for (double k : s.k) {
    const double v = fractional_moment(rp, k);
    // Independent factorisation E|X|^k E|Y|^-k as the error estimate.
    const double check = vg_abs_moment(rp.num(), k) * vg_abs_moment(rp.den(), -k);
    w.write({k, v, std::abs(v - check), std::string(to_string(Method::kClosedForm))});
  }
  return kExitOk;
}

int cmd_tails(const Settings& s, std::ostream& out) {
  const auto rp = s.params();
  if (s.z.empty() && s.grid.empty()) {
    RecordWriter w(out, s.jsonl(), {"side", "regime", "coefficient"});
    const auto o = origin_behavior(rp);
    const auto t = tail_behavior(rp);
    w.write({std::string("origin"), std::string(to_string(o.regime)), o.coefficient});
    w.write({std::string("tail"), std::string(to_string(t.regime)), t.coefficient});
    return kExitOk;
  }
  const auto ctrl = s.control();
  const auto zs = abscissae(s);
  // err is the distance to the exact quantity, i.e. the approximation error.
  const auto rs = evaluate_all(zs, [&](double z) {
    const double v = s.survival ? tail_probability_asymptotic(rp, z) : tail_pdf_asymptotic(rp, z);
    const double exact = s.survival ? ratio_sf(rp, z, ctrl).value : ratio_pdf(rp, z, ctrl).value;
    return EvalReport{v, std::abs(v - exact), Method::kClosedForm};
  });
  const std::string tag = std::string(s.survival ? "tail-sf-" : "tail-pdf-") + to_string(tail_behavior(rp).regime);
  RecordWriter w(out, s.jsonl(), {"z", "value", "err", "method"});
  for (std::size_t i = 0; i < zs.size(); ++i) w.write({zs[i], rs[i].value, rs[i].err_estimate, tag});
  return kExitOk;
}

int cmd_normal_product(const Settings& s, std::ostream& out) {
  const auto ctrl = s.control();
  const auto ts = abscissae(s);
  const auto rs =
      evaluate_all(ts, [&](double t) { return normal_product_ratio_pdf(s.s1, s.s2, s.rho1, s.rho2, t, ctrl); });
  RecordWriter w(out, s.jsonl(), {"t", "value", "err", "method"});
  write_reports(w, ts, rs);
  return kExitOk;
}

int cmd_figure_data(const Settings& s, std::ostream& out) {
  const auto ctrl = s.control();
  const auto zs = s.grid.empty() && s.z.empty() ? verify::figure_grid() : abscissae(s);
  std::vector<std::vector<EvalReport>> curves;
  for (const auto& c : verify::figure_curves()) {
    const auto rp = c.point.params();
    curves.push_back(evaluate_all(zs, [&](double z) { return ratio_pdf(rp, z, ctrl); }));
  }
  RecordWriter w(out, s.jsonl(), {"figure", "curve", "z", "value", "err", "method"});
  for (std::size_t i = 0; i < curves.size(); ++i) {
    const auto& c = verify::figure_curves()[i];
    for (std::size_t j = 0; j < zs.size(); ++j) {
      const auto& r = curves[i][j];
      w.write({c.figure, c.label, zs[j], r.value, r.err_estimate, std::string(to_string(r.method))});
    }
  }
  return kExitOk;
}

int cmd_verify(const Settings& s, std::ostream& out) {
  verify::Options opts;
  if (s.seed) opts.seed = *s.seed;
  if (s.mc_samples) opts.mc_samples = *s.mc_samples;
  opts.cli = [](const std::vector<std::string>& args, std::string& o, std::string& e) {
    std::ostringstream os, es;
    const int code = run_cli(args, os, es);
    o = os.str();
    e = es.str();
    return code;
  };
  std::vector<int> ids = s.criteria;
  if (ids.empty()) {
    for (int i = 1; i <= verify::kCriterionCount; ++i) ids.push_back(i);
  }
  bool all = true;
  for (int id : ids) {
    const auto r = verify::run_criterion(id, opts);
    out << verify::format_line(r) << '\n';
    for (const auto& note : r.notes) out << "    " << note << '\n';
    out.flush();
    all = all && r.passed;
  }
  return all ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Ratio of independent variance-gamma random variables", "vgr"};
  app.require_subcommand(1);
  Settings s;

  auto* pdf = app.add_subcommand("pdf", "density of Z = X/Y");
  add_shape_flags(pdf, s);
  add_abscissa_flags(pdf, s);
  add_numeric_flags(pdf, s);
  add_format_flag(pdf, s);

  auto* cdf = app.add_subcommand("cdf", "distribution function P(Z <= z)");
  add_shape_flags(cdf, s);
  add_abscissa_flags(cdf, s);
  add_numeric_flags(cdf, s);
  add_format_flag(cdf, s);
  cdf->add_flag("--survival", s.survival, "emit P(Z > z) instead");

  auto* sample = app.add_subcommand("sample", "draw Z = X/Y by simulation");
  add_shape_flags(sample, s);
  add_format_flag(sample, s);
  sample->add_option("--seed", s.seed, "random seed")->required();
  sample->add_option("--count", s.count, "number of draws")->capture_default_str();

  auto* moment = app.add_subcommand("moment", "fractional absolute moment E|Z|^k");
  add_shape_flags(moment, s);
  add_format_flag(moment, s);
  moment->add_option("--k", s.k, "moment order (repeatable)");

  auto* tails = app.add_subcommand("tails", "origin and tail constants, or tail approximations on a grid");
  add_shape_flags(tails, s);
  add_abscissa_flags(tails, s);
  add_numeric_flags(tails, s);
  add_format_flag(tails, s);
  tails->add_flag("--survival", s.survival, "approximate P(Z > z) instead of the density");

  auto* np = app.add_subcommand("normal-product", "density of W1/W2 for products of correlated normals");
  np->add_option("--s1", s.s1, "sigma_U1 sigma_V1 (> 0)")->capture_default_str();
  np->add_option("--s2", s.s2, "sigma_U2 sigma_V2 (> 0)")->capture_default_str();
  np->add_option("--rho1", s.rho1, "correlation of (U1, V1)")->capture_default_str();
  np->add_option("--rho2", s.rho2, "correlation of (U2, V2)")->capture_default_str();
  add_abscissa_flags(np, s);
  add_numeric_flags(np, s);
  add_format_flag(np, s);

  auto* ver = app.add_subcommand("verify", "run the acceptance criteria");
  ver->add_option("--criterion", s.criteria, "criterion id 1-10 (repeatable)")
      ->check(CLI::Range(1, verify::kCriterionCount));
  ver->add_option("--seed", s.seed, "base random seed");
  ver->add_option("--count", s.mc_samples, "Monte Carlo sample size")->check(CLI::PositiveNumber);

  auto* fig = app.add_subcommand("figure-data", "density curves of the reference figures");
  add_abscissa_flags(fig, s);
  add_numeric_flags(fig, s);
  add_format_flag(fig, s);

  std::vector<const char*> argv{"vgr"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    if (pdf->parsed()) return cmd_pdf(s, out);
    if (cdf->parsed()) return cmd_cdf(s, out);
    if (sample->parsed()) return cmd_sample(s, out);
    if (moment->parsed()) return cmd_moment(s, out);
    if (tails->parsed()) return cmd_tails(s, out);
    if (np->parsed()) return cmd_normal_product(s, out);
    if (ver->parsed()) return cmd_verify(s, out);
    if (fig->parsed()) return cmd_figure_data(s, out);
  } catch (const UsageError& e) {
    err << "vgr: " << e.what() << '\n';
    return kExitUsage;
  } catch (const UndefinedMeanError& e) {
    err << "vgr: " << e.what() << '\n';
    return kExitUsage;
  } catch (const SingularityError& e) {
    err << "vgr: singularity: " << e.what() << '\n';
    return kExitUsage;
  } catch (const BudgetExceeded& e) {
    err << "vgr: " << e.what() << " (partial " << number(e.partial()) << "); raise --max-terms\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "vgr: invalid input: " << e.what() << '\n';
    return kExitUsage;
  }
  err << "vgr: no subcommand\n";
  return kExitUsage;
}

}  // namespace vgr::cli
