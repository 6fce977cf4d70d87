#include "vgr/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <string>
#include <vector>

#include "vgr/errors.hpp"

namespace vgr::quad {

namespace {

constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                           0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double lo;
  double hi;
  double value;
  double err;
  bool operator<(const Panel& o) const { return err < o.err; }
};

double checked(const Integrand& f, double x) {
  const double v = f(x);
  if (!std::isfinite(v)) {
    throw DomainError("integrate: integrand not finite at x = " + std::to_string(x));
  }
  return v;
}

Panel gk15(const Integrand& f, double lo, double hi) {
  constexpr double kEps = std::numeric_limits<double>::epsilon();
  constexpr double kTiny = std::numeric_limits<double>::min();
  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  double fv1[7];
  double fv2[7];
  const double fc = checked(f, center);
  double resg = fc * kWg[3];
  double resk = fc * kWgk[7];
  double resabs = std::abs(resk);
  for (int j = 0; j < 3; ++j) {
    const int jtw = 2 * j + 1;
    const double dx = half * kXgk[jtw];
    const double f1 = checked(f, center - dx);
    const double f2 = checked(f, center + dx);
    fv1[jtw] = f1;
    fv2[jtw] = f2;
    resg += kWg[j] * (f1 + f2);
    resk += kWgk[jtw] * (f1 + f2);
    resabs += kWgk[jtw] * (std::abs(f1) + std::abs(f2));
  }
  for (int j = 0; j < 4; ++j) {
    const int jtwm1 = 2 * j;
    const double dx = half * kXgk[jtwm1];
    const double f1 = checked(f, center - dx);
    const double f2 = checked(f, center + dx);
    fv1[jtwm1] = f1;
    fv2[jtwm1] = f2;
    resk += kWgk[jtwm1] * (f1 + f2);
    resabs += kWgk[jtwm1] * (std::abs(f1) + std::abs(f2));
  }
  const double reskh = 0.5 * resk;
  double resasc = kWgk[7] * std::abs(fc - reskh);
  for (int j = 0; j < 7; ++j) {
    resasc += kWgk[j] * (std::abs(fv1[j] - reskh) + std::abs(fv2[j] - reskh));
  }
  const double ah = std::abs(half);
  resabs *= ah;
  resasc *= ah;
  double err = std::abs((resk - resg) * half);
  if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  if (resabs > kTiny / (50.0 * kEps)) err = std::max(50.0 * kEps * resabs, err);
  return {lo, hi, resk * half, err};
}

}  // namespace

QuadratureResult integrate(const Integrand& f, std::span<const double> breakpoints,
                           const QuadOptions& opts) {
  if (breakpoints.size() < 2) throw DomainError("integrate: need at least two breakpoints");
  QuadratureResult out;
  std::priority_queue<Panel> heap;
  double total = 0.0;
  double total_err = 0.0;
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    if (breakpoints[i + 1] == breakpoints[i]) continue;
    const Panel p = gk15(f, breakpoints[i], breakpoints[i + 1]);
    out.evaluations += 15;
    total += p.value;
    total_err += p.err;
    heap.push(p);
  }
  std::size_t subdivisions = heap.size();
  while (!heap.empty() && total_err > std::max(opts.abs_tol, opts.rel_tol * std::abs(total))) {
    if (subdivisions >= opts.max_subdivisions) {
      out.converged = false;
      break;
    }
    const Panel worst = heap.top();
    const double mid = 0.5 * (worst.lo + worst.hi);
    if (!(mid > worst.lo && mid < worst.hi)) {
      // Panel cannot be split further in floating point.
      out.converged = false;
      break;
    }
    heap.pop();
    const Panel left = gk15(f, worst.lo, mid);
    const Panel right = gk15(f, mid, worst.hi);
    out.evaluations += 30;
    total += left.value + right.value - worst.value;
    total_err += left.err + right.err - worst.err;
    heap.push(left);
    heap.push(right);
    ++subdivisions;
  }
  // Re-sum to shed the drift of the incremental updates.
  double sum = 0.0;
  double err = 0.0;
  while (!heap.empty()) {
    sum += heap.top().value;
    err += heap.top().err;
    heap.pop();
  }
  out.value = sum;
  out.abs_err_estimate = err;
  return out;
}

QuadratureResult integrate(const Integrand& f, double lo, double hi, const QuadOptions& opts) {
  const double bp[2] = {lo, hi};
  return integrate(f, std::span<const double>(bp, 2), opts);
}

}  // namespace vgr::quad
