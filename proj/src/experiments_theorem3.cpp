#include <algorithm>
#include <cmath>
#include <string>

#include "hsp/error.hpp"
#include "hsp/experiments.hpp"
#include "quadrature.hpp"

namespace hsp {

namespace {

std::vector<double> uniform_breaks(double lo, double hi, int n) {
  std::vector<double> b(n + 1);
  for (int k = 0; k <= n; ++k) b[k] = lo + (hi - lo) * k / n;
  return b;
}

}  // namespace

BumpReport theorem3_bump(double x0, const Profile& tau, const BumpOptions& o) {
  require(x0 > 2.0, "theorem3_bump: x0 must exceed 2, got " + std::to_string(x0));
  require(tau.lo >= -1.0 && tau.hi <= 1.0,
          "theorem3_bump: tau must be supported in (-1, 1)");
  require(o.n_x >= 2, "theorem3_bump: n_x must be at least 2");
  for (double p : o.p_values)
    require(p >= 1.0, "theorem3_bump: exponents must be >= 1");

  // transform samples on [-1, 1], fine enough for points up to x0 sqrt 2
  const double extent = x0 * (1.0 + std::sqrt(2.0)) + 2.0;
  const double dxi = std::min(kPi / extent, 1.0 / 512.0);
  const auto n_xi = 2 * static_cast<std::size_t>(std::ceil(1.0 / dxi)) + 1;
  FreqFunction fhat(Grid(1.0, n_xi), std::vector<cplx>(n_xi));
  for (std::size_t m = 0; m < n_xi; ++m) {
    const double xi = fhat.freq_grid.point(m);
    const double a = tau(xi);
    require(a >= 0.0, "theorem3_bump: tau must be nonnegative");
    fhat.values[m] = 2.0 * kPi * a * std::polar(1.0, -x0 * xi);
  }

  BumpReport r;
  r.x0 = x0;
  r.min_real = r.min_real_perturbed = kInf;
  const double x_lo = x0 / std::sqrt(2.0);
  const double dx = (x0 - x_lo) / o.n_x;
  const double at_x0[] = {x0};
  for (int j = 0; j < o.n_x; ++j) {
    const double x = x_lo + (j + 0.5) * dx;
    const double v = std::sqrt((x0 / x) * (x0 / x) - 1.0);
    if (!(v > 0.0 && v < 1.0))
      fail(ErrorKind::domain, "theorem3_bump: v(x) = " + std::to_string(v) +
                                  " outside (0, 1) at x = " + std::to_string(x));
    // exp(i(v/2) Laplacian) f at x sqrt(1+v^2) = x0
    const cplx w = free_propagate(fhat, 0.5 * v, at_x0)[0];
    r.min_real = std::min(r.min_real, w.real());
    for (double scale : {0.99, 1.01}) {
      const cplx wp = free_propagate(fhat, 0.5 * v * scale, at_x0)[0];
      r.min_real_perturbed = std::min(r.min_real_perturbed, wp.real());
    }
    r.x.push_back(x);
    r.maximal.push_back(std::pow(1.0 + v * v, 0.25) * std::abs(w));
  }
  // the selector time is one sample; the log t-grid adds the rest
  const auto mt = maximal_function_at(fhat, r.x, o.maximal);
  for (std::size_t j = 0; j < r.x.size(); ++j)
    r.maximal[j] = std::max(r.maximal[j], mt[j]);

  for (double p : o.p_values) {
    double acc = 0.0;
    for (double m : r.maximal) acc += std::pow(m, p) * dx;
    r.norms.push_back(std::pow(acc, 1.0 / p));
  }
  r.sobolev = sobolev_norm_fourier(fhat, o.sobolev_s);
  return r;
}

double fitted_growth(std::span<const BumpReport> reports, std::size_t p_index) {
  require(reports.size() >= 2, "fitted_growth: need at least two reports");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(reports.size());
  for (const auto& r : reports) {
    require(p_index < r.norms.size(), "fitted_growth: p index out of range");
    const double x = std::log(r.x0), y = std::log(r.norms[p_index]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

// ---------------------------------------------------------------------------

namespace {

// C-infinity step: 0 below 0, 1 above 1
double smooth_step(double u) {
  if (u <= 0.0) return 0.0;
  if (u >= 1.0) return 1.0;
  const double a = std::exp(-1.0 / u), b = std::exp(-1.0 / (1.0 - u));
  return a / (a + b);
}

cplx logtail_core(cplx xi) { return std::pow(std::log(xi), -2.0 / 3.0) / xi; }

// int_0^inf tau(xi) exp(-i v xi^2 / 2) d xi: quadrature up to R = 4/sqrt(v),
// rotated ray xi = R + sigma e^{-i pi/4} / sqrt(v) beyond.
cplx logtail_transform(double v, double& R_out) {
  const auto& rule = detail::gauss_legendre(20);
  const double R = std::max(4.0 / std::sqrt(v), 4.0);
  R_out = R;
  auto head = [&](double u) {
    const double xi = std::exp(u);
    return logtail_tau(xi) * xi * std::polar(1.0, -0.5 * v * xi * xi);
  };
  cplx sum = detail::integrate_panels<cplx>(
      head, uniform_breaks(std::log(1.5), std::log(2.0), 16), rule);
  const int n_head = 8 + static_cast<int>(std::ceil(8.0 * (std::log(R) - std::log(2.0))));
  sum += detail::integrate_panels<cplx>(
      head, uniform_breaks(std::log(2.0), std::log(R), n_head), rule);
  const cplx dir = std::polar(1.0 / std::sqrt(v), -kPi / 4);
  auto tail = [&](double sigma) {
    const cplx xi = R + sigma * dir;
    return logtail_core(xi) * std::exp(cplx(0.0, -0.5 * v) * xi * xi) * dir;
  };
  sum += detail::integrate_panels<cplx>(tail, uniform_breaks(0.0, 14.0, 28), rule);
  return sum;
}

// ||f||_{W^{1/2}} with f^ = 2 pi e^{-i x0 xi} tau: quadrature to Xi plus the
// tail 3 (log Xi)^{-1/3} of int xi^{-1} (log xi)^{-4/3}.
double logtail_sobolev_half(double Xi) {
  auto g = [](double u) {
    const double xi = std::exp(u);
    const double t = logtail_tau(xi);
    return t * t * std::sqrt(1.0 + xi * xi) * xi;
  };
  const int n = 8 + static_cast<int>(std::ceil(4.0 * std::log(Xi)));
  double acc = detail::integrate_panels<double>(
      g, uniform_breaks(std::log(1.5), std::log(2.0), 16), detail::gauss_legendre(20));
  acc += detail::integrate_panels<double>(
      g, uniform_breaks(std::log(2.0), std::log(Xi), n), detail::gauss_legendre(20));
  acc += 3.0 * std::pow(std::log(Xi), -1.0 / 3.0);
  return std::sqrt(2.0 * kPi * acc);
}

}  // namespace

double logtail_tau(double xi) {
  if (xi <= 1.5) return 0.0;
  return smooth_step((xi - 1.5) / 0.5) * std::pow(std::log(xi), -2.0 / 3.0) / xi;
}

LogtailReport theorem3_logtail(double v0, double x0, int n_x) {
  if (!(v0 > 0.0 && v0 < 1e-2))
    fail(ErrorKind::precondition,
         "theorem3_logtail: v0 must lie in (0, 1e-2), got " + std::to_string(v0));
  require(x0 > 0.0, "theorem3_logtail: x0 must be positive");
  require(n_x >= 2, "theorem3_logtail: n_x must be at least 2");
  LogtailReport r;
  r.v0 = v0;
  r.x0 = x0;
  r.I = {x0 / std::sqrt(1.0 + v0 * v0), x0 / std::sqrt(1.0 + v0 * v0 / 4.0)};
  r.min_value = kInf;
  double R = 0.0;
  for (int j = 0; j < n_x; ++j) {
    const double x = r.I.lo + (r.I.hi - r.I.lo) * (j + 0.5) / n_x;
    const double v = std::sqrt((x0 / x) * (x0 / x) - 1.0);
    r.min_value = std::min(r.min_value, std::abs(logtail_transform(v, R)));
  }
  r.ratio = r.min_value / std::cbrt(std::log(1.0 / v0));
  const double Xi = std::max(4.0 / std::sqrt(v0), 4.0);
  r.sobolev_half = logtail_sobolev_half(Xi);
  r.sobolev_half_doubled = logtail_sobolev_half(2.0 * Xi);
  return r;
}

}  // namespace hsp
