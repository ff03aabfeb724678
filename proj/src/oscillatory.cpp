#include "hsp/oscillatory.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hsp/error.hpp"
#include "quadrature.hpp"

namespace hsp {

namespace {

constexpr int kRuleSize = 20;
constexpr int kLevels = 40;
constexpr double kScaleLimit = 1e12;

const std::vector<double>& quartic_breaks() {
  // exp(-u^4) < 1e-19 beyond 2.6
  static const auto b = detail::graded_breaks(2.6, kLevels, 8);
  return b;
}

const std::vector<double>& quadratic_breaks() {
  // exp(-u^2) < 1e-18 beyond 6.5
  static const auto b = detail::graded_breaks(6.5, kLevels, 16);
  return b;
}

// Integral of exp(i(at + bt^2)) t^{-1/2} from c to the valley at infinity
// along the steepest-descent path of the phase, b > 0.  Paths from c >= t*
// end in the upper-right valley, from c <= t* in the lower-left one; side
// only matters when c = t*.
cplx descent(double a, double b, double c, double t_star, int side) {
  if (std::isinf(c)) return 0.0;
  const double wc = c - t_star;
  const double rb = std::sqrt(b);
  const cplx dir = std::polar(1.0 / rb, side > 0 ? kPi / 4 : 5 * kPi / 4);
  const auto& rule = detail::gauss_legendre(kRuleSize);
  auto integrand = [&](double u) -> cplx {
    const double s = u * u;
    cplx delta, dtds;
    if (wc == 0.0) {
      delta = dir * s;
      dtds = dir;
    } else {
      // b w^2 = b wc^2 + i s^2, w = wc sqrt(1 + i x)
      const double x = s * s / (b * wc * wc);
      const cplx r = std::sqrt(cplx(1.0, x));
      delta = wc * cplx(0.0, x) / (r + 1.0);
      dtds = cplx(0.0, s) / (b * wc * r);
    }
    const cplx t = c + delta;
    return std::exp(-s * s) / std::sqrt(t) * dtds * (2.0 * u);
  };
  const cplx body =
      detail::integrate_panels<cplx>(integrand, quartic_breaks(), rule);
  return std::polar(1.0, a * c + b * c * c) * body;
}

// Same for b = 0, a > 0: vertical path t = c + i s / a.
cplx vertical(double a, double c) {
  if (std::isinf(c)) return 0.0;
  const auto& rule = detail::gauss_legendre(kRuleSize);
  auto integrand = [&](double u) -> cplx {
    const double s = u * u;
    const cplx t = cplx(c, s / a);
    return std::exp(-s) / std::sqrt(t) * cplx(0.0, 1.0 / a) * (2.0 * u);
  };
  const cplx body =
      detail::integrate_panels<cplx>(integrand, quadratic_breaks(), rule);
  return std::polar(1.0, a * c) * body;
}

// int_alpha^beta exp(i(at + bt^2)) t^{-1/2} dt, 0 <= alpha <= beta <= inf.
cplx half_line(double a, double b, double alpha, double beta) {
  if (alpha >= beta) return 0.0;
  if (b < 0.0 || (b == 0.0 && a < 0.0))
    return std::conj(half_line(-a, -b, alpha, beta));
  if (b == 0.0) return vertical(a, alpha) - vertical(a, beta);
  const double ts = -a / (2.0 * b);
  if (beta <= ts) return descent(a, b, alpha, ts, -1) - descent(a, b, beta, ts, -1);
  if (alpha >= ts) return descent(a, b, alpha, ts, 1) - descent(a, b, beta, ts, 1);
  return descent(a, b, alpha, ts, -1) - descent(a, b, ts, ts, -1) +
         descent(a, b, ts, ts, 1) - descent(a, b, beta, ts, 1);
}

bool is_boundary(double v, std::span<const double> values) {
  double lo = kInf, hi = 0.0;
  for (double x : values) {
    lo = std::min(lo, std::abs(x));
    hi = std::max(hi, std::abs(x));
  }
  return std::abs(v) == lo || std::abs(v) == hi;
}

}  // namespace

cplx osc_integral(const OscParams& p) {
  require(std::isfinite(p.a) && std::isfinite(p.b),
          "osc_integral: a and b must be finite");
  if (p.a == 0.0 && p.b == 0.0)
    fail(ErrorKind::precondition, "osc_integral: (a, b) must not be (0, 0)");
  require(!std::isnan(p.J.lo) && !std::isnan(p.J.hi) && p.J.lo <= p.J.hi,
          "osc_integral: interval must satisfy lo <= hi");

  const bool unbounded = std::isinf(p.J.lo) || std::isinf(p.J.hi);
  double scale = kInf;
  if (p.a != 0.0) scale = std::min(scale, 1.0 / std::abs(p.a));
  if (p.b != 0.0) scale = std::min(scale, 1.0 / std::sqrt(std::abs(p.b)));
  if (unbounded && scale > kScaleLimit)
    fail(ErrorKind::convergence,
         "osc_integral: decay length " + std::to_string(scale) +
             " exceeds " + std::to_string(kScaleLimit) +
             " on an unbounded interval; the value is not computable to "
             "useful accuracy");
  if (p.b != 0.0) {
    const double ts = -p.a / (2.0 * p.b);
    const double phase = p.a * p.a / (4.0 * std::abs(p.b));
    if (ts >= p.J.lo && ts <= p.J.hi && phase > kScaleLimit)
      fail(ErrorKind::convergence,
           "osc_integral: stationary phase " + std::to_string(phase) +
               " rad is beyond double-precision phase accuracy");
  }

  cplx sum = 0.0;
  if (p.J.lo < 0.0)
    sum += half_line(-p.a, p.b, std::max(-p.J.hi, 0.0), -p.J.lo);
  if (p.J.hi > 0.0) sum += half_line(p.a, p.b, std::max(p.J.lo, 0.0), p.J.hi);
  if (!std::isfinite(sum.real()) || !std::isfinite(sum.imag()))
    fail(ErrorKind::convergence, "osc_integral: quadrature produced a non-finite value");
  return sum;
}

double osc_bound(double a, double b) {
  double m = kInf;
  if (a != 0.0) m = std::min(m, std::pow(std::abs(a), -0.5));
  if (b != 0.0) m = std::min(m, std::pow(std::abs(b), -0.25));
  return m;
}

double osc_ratio(const OscParams& p) {
  return std::abs(osc_integral(p)) / osc_bound(p.a, p.b);
}

SweepResult bound_sweep(std::span<const double> a_values,
                        std::span<const double> b_values, const Interval& J) {
  require(!a_values.empty() && !b_values.empty(),
          "bound_sweep: empty coefficient grid");
  SweepResult r;
  r.a_values.assign(a_values.begin(), a_values.end());
  r.b_values.assign(b_values.begin(), b_values.end());
  for (double a : a_values) {
    for (double b : b_values) {
      if (a == 0.0 && b == 0.0) continue;
      SweepCell c;
      c.a = a;
      c.b = b;
      c.value = osc_integral({a, b, J});
      c.bound = osc_bound(a, b);
      c.ratio = std::abs(c.value) / c.bound;
      r.cells.push_back(c);
    }
  }
  require(!r.cells.empty(), "bound_sweep: grid has no admissible cell");
  for (const auto& c : r.cells)
    if (c.ratio > r.max_ratio) {
      r.max_ratio = c.ratio;
      r.argmax = c;
    }
  for (const auto& c : r.cells) {
    if (c.ratio < r.max_ratio * (1.0 - 1e-9)) continue;
    if (!is_boundary(c.a, a_values) && !is_boundary(c.b, b_values)) {
      r.interior = true;
      r.argmax = c;
      break;
    }
  }
  return r;
}

std::vector<double> signed_decades(int k_lo, int k_hi) {
  require(k_lo <= k_hi, "signed_decades: k_lo must not exceed k_hi");
  std::vector<double> v;
  for (int k = k_hi; k >= k_lo; --k) v.push_back(-std::pow(10.0, k));
  for (int k = k_lo; k <= k_hi; ++k) v.push_back(std::pow(10.0, k));
  return v;
}

SweepResult bound_sweep_decades(int k_lo, int k_hi, const Interval& J,
                                int max_extensions) {
  int a_lo = k_lo, a_hi = k_hi, b_lo = k_lo, b_hi = k_hi;
  for (int ext = 0;; ++ext) {
    const auto av = signed_decades(a_lo, a_hi);
    const auto bv = signed_decades(b_lo, b_hi);
    auto r = bound_sweep(av, bv, J);
    r.extensions = ext;
    if (r.interior || ext == max_extensions) return r;
    const double ea = std::abs(r.argmax.a), eb = std::abs(r.argmax.b);
    if (ea == std::pow(10.0, a_hi)) ++a_hi;
    else if (ea == std::pow(10.0, a_lo)) --a_lo;
    if (eb == std::pow(10.0, b_hi)) ++b_hi;
    else if (eb == std::pow(10.0, b_lo)) --b_lo;
  }
}

double max_subinterval_ratio(double a, double b,
                             std::span<const double> endpoints) {
  require(std::is_sorted(endpoints.begin(), endpoints.end()),
          "max_subinterval_ratio: endpoints must be sorted");
  const double bound = osc_bound(a, b);
  double m = 0.0;
  for (std::size_t i = 0; i < endpoints.size(); ++i)
    for (std::size_t j = i + 1; j < endpoints.size(); ++j)
      m = std::max(m, std::abs(osc_integral({a, b, {endpoints[i], endpoints[j]}})) / bound);
  return m;
}

}  // namespace hsp
