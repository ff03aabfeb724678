#include "hsp/propagators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "hsp/error.hpp"
#include "spectral.hpp"

namespace hsp {

namespace {

constexpr double kKernelSinFloor = 1e-12;
constexpr double kSpectralSwitch = 1e-3;
constexpr double kSupportThreshold = 1e-14;

// sum_k g[k] z^k by Horner's rule; stable for |z| = 1.
cplx horner(std::span<const cplx> g, cplx z) {
  cplx s = 0.0;
  for (std::size_t k = g.size(); k-- > 0;) s = s * z + g[k];
  return s;
}

double floor_branch(double t) { return std::floor(2.0 * t / kPi); }

// 1 / (2 pi sin 2t)^{d/2} with the floor(2t/pi) pi d/2 argument.
cplx mehler_prefactor(double t, int d) {
  const double s = std::sin(2.0 * t);
  const double modulus = std::pow(2.0 * kPi * std::abs(s), -0.5 * d);
  const double arg = floor_branch(t) * kPi * d / 2.0;
  return std::polar(modulus, -arg) * std::polar(1.0, -kPi * d / 4.0);
}

GridFunction spectral_route(const GridFunction& f, double t) {
  const int n_max = max_supported_order(f.grid);
  const auto c = analyze(f, n_max);
  const auto back = synthesize(c, f.grid);
  double err = 0.0;
  for (std::size_t k = 0; k < f.size(); ++k)
    err = std::max(err, std::abs(back.values[k] - f.values[k]));
  if (err > 1e-8 * std::max(1.0, f.max_abs())) {
    fail(ErrorKind::resolution,
         "propagate_mehler: near-singular time t=" + std::to_string(t) +
             " needs the spectral path, but f is not represented by h_0..h_" +
             std::to_string(n_max) + " on this grid (residual " +
             std::to_string(err) + ")");
  }
  return synthesize(propagate_spectral(c, t), f.grid);
}

}  // namespace

cplx mehler_kernel(double t, std::span<const double> x,
                   std::span<const double> y) {
  require(x.size() == y.size() && !x.empty(),
          "mehler_kernel: x and y must have the same positive dimension");
  const double s = std::sin(2.0 * t);
  if (!(std::abs(s) > kKernelSinFloor)) {
    fail(ErrorKind::singularity,
         "mehler_kernel: t=" + std::to_string(t) +
             " is too close to a multiple of pi/2 (|sin 2t| <= 1e-12)");
  }
  const int d = static_cast<int>(x.size());
  double xx = 0.0, yy = 0.0, xy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    xx += x[i] * x[i];
    yy += y[i] * y[i];
    xy += x[i] * y[i];
  }
  const double cot = std::cos(2.0 * t) / s;
  const double phase = 0.5 * (cot * (xx + yy) - 2.0 / s * xy);
  return mehler_prefactor(t, d) * std::polar(1.0, phase);
}

cplx mehler_kernel(double t, double x, double y) {
  return mehler_kernel(t, std::span<const double>(&x, 1),
                       std::span<const double>(&y, 1));
}

HermiteCoeffs propagate_spectral(const HermiteCoeffs& c, double t) {
  HermiteCoeffs out = c;
  for (int n = 0; n <= c.n_max(); ++n)
    out.coeffs[n] *= std::polar(1.0, -(2.0 * n + 1.0) * t);
  return out;
}

GridFunction propagate_mehler(const GridFunction& f, double t) {
  f.validate();
  require(std::isfinite(t), "propagate_mehler: t must be finite");
  check_decay(f, "propagate_mehler");
  const double s = std::sin(2.0 * t);
  if (std::abs(s) < kSpectralSwitch) return spectral_route(f, t);

  const Grid& g = f.grid;
  const double h = g.spacing();
  if (h * g.half_extent() / std::abs(s) > kPi) {
    fail(ErrorKind::resolution,
         "propagate_mehler: kernel oscillation unresolved at t=" +
             std::to_string(t) + " (spacing*half_extent/|sin 2t| = " +
             std::to_string(h * g.half_extent() / std::abs(s)) +
             " exceeds pi); refine the grid");
  }

  const double alpha = 0.5 * std::cos(2.0 * t) / s;
  const double beta = 1.0 / s;
  const auto w = g.trapezoid_weights();
  const std::size_t n = g.size();
  std::vector<cplx> gk(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double y = g.point(k);
    gk[k] = w[k] * f.values[k] * std::polar(1.0, alpha * y * y);
  }
  const double y0 = g.point(0);
  const cplx pref = mehler_prefactor(t, 1);
  GridFunction u(g);
  for (std::size_t j = 0; j < n; ++j) {
    const double x = g.point(j);
    const cplx z = std::polar(1.0, -beta * x * h);
    const cplx sum = horner(gk, z) * std::polar(1.0, -beta * x * y0);
    u.values[j] = pref * std::polar(1.0, alpha * x * x) * sum;
  }
  return u;
}

Grid default_frequency_grid() { return Grid(64.0, 4096); }

FreqFunction fourier_forward(const GridFunction& f, const Grid& freq_grid) {
  f.validate();
  check_decay(f, "fourier_forward");
  const Grid& g = f.grid;
  const auto w = g.trapezoid_weights();
  std::vector<cplx> gk(g.size());
  for (std::size_t k = 0; k < g.size(); ++k) gk[k] = w[k] * f.values[k];
  std::vector<cplx> out(freq_grid.size());
  const double x0 = g.point(0);
  const double h = g.spacing();
  for (std::size_t m = 0; m < freq_grid.size(); ++m) {
    const double xi = freq_grid.point(m);
    out[m] = horner(gk, std::polar(1.0, -h * xi)) * std::polar(1.0, -x0 * xi);
  }
  return FreqFunction(freq_grid, std::move(out));
}

// ---------------------------------------------------------------------------
// FreeEvolution

FreeEvolution::FreeEvolution(const GridFunction& f) : f_(f) {
  f_.validate();
  check_decay(f_, "free_propagate");
  const double fmax = f_.max_abs();
  if (fmax == 0.0) {
    zero_ = true;
    return;
  }
  k_lo_ = 0;
  k_hi_ = f_.size() - 1;
  while (k_lo_ < k_hi_ && std::abs(f_.values[k_lo_]) <= kSupportThreshold * fmax)
    ++k_lo_;
  while (k_hi_ > k_lo_ && std::abs(f_.values[k_hi_]) <= kSupportThreshold * fmax)
    --k_hi_;
  k_lo_ = k_lo_ > 0 ? k_lo_ - 1 : 0;
  k_hi_ = std::min(k_hi_ + 1, f_.size() - 1);

  const auto spec = detail::sampled_spectrum(f_, 2);
  double smax = 0.0;
  for (const auto& z : spec.values) smax = std::max(smax, std::abs(z));
  std::size_t m_lo = 0, m_hi = spec.values.size() - 1;
  while (m_lo < m_hi && std::abs(spec.values[m_lo]) <= kSupportThreshold * smax)
    ++m_lo;
  while (m_hi > m_lo && std::abs(spec.values[m_hi]) <= kSupportThreshold * smax)
    --m_hi;
  xi_lo_ = spec.frequency(m_lo) - 2.0 * spec.dxi;
  xi_hi_ = spec.frequency(m_hi) + 2.0 * spec.dxi;
}

FreeEvolution::Plan FreeEvolution::frequency_plan(
    double t, std::span<const double> out) const {
  Plan p;
  const double y_lo = f_.grid.point(k_lo_), y_hi = f_.grid.point(k_hi_);
  double extent = 0.0;
  for (double x : out) {
    for (double y : {y_lo, y_hi})
      for (double xi : {xi_lo_, xi_hi_})
        extent = std::max(extent, std::abs(x - y - 2.0 * t * xi));
  }
  extent = std::max(extent, 1.0);
  p.dxi = kPi / extent;
  const double m = std::ceil((xi_hi_ - xi_lo_) / p.dxi) + 1.0;
  const double n_src = static_cast<double>(k_hi_ - k_lo_ + 1);
  p.cost = m * (n_src + static_cast<double>(out.size()));
  p.feasible = m < 5e6;
  return p;
}

FreeEvolution::Plan FreeEvolution::kernel_plan(
    double t, std::span<const double> out) const {
  Plan p;
  if (t == 0.0) return p;
  const double y_lo = f_.grid.point(k_lo_), y_hi = f_.grid.point(k_hi_);
  double dist = 0.0;
  for (double x : out)
    dist = std::max({dist, std::abs(x - y_lo), std::abs(x - y_hi)});
  const double max_freq = dist / (2.0 * std::abs(t));
  p.feasible = max_freq * f_.grid.spacing() < 0.5 * kPi;
  p.cost = static_cast<double>(k_hi_ - k_lo_ + 1) *
           static_cast<double>(out.size());
  return p;
}

FreeRoute FreeEvolution::choose_route(double t,
                                      std::span<const double> out) const {
  if (zero_) return FreeRoute::frequency;
  const Plan fp = frequency_plan(t, out);
  const Plan kp = kernel_plan(t, out);
  if (fp.feasible && kp.feasible)
    return kp.cost < fp.cost ? FreeRoute::kernel : FreeRoute::frequency;
  if (fp.feasible) return FreeRoute::frequency;
  if (kp.feasible) return FreeRoute::kernel;
  fail(ErrorKind::resolution,
       "free_propagate: t=" + std::to_string(t) +
           " is resolved neither by the frequency sum (|t| xi_max dxi too "
           "large) nor by kernel quadrature (spacing too coarse for "
           "|x-y|/(2t)); refine the spatial grid");
}

std::vector<cplx> FreeEvolution::evaluate(double t,
                                          std::span<const double> out,
                                          FreeRoute route) const {
  require(std::isfinite(t), "free_propagate: t must be finite");
  if (zero_) return std::vector<cplx>(out.size(), 0.0);
  if (route == FreeRoute::automatic) route = choose_route(t, out);
  if (route == FreeRoute::frequency) {
    const Plan p = frequency_plan(t, out);
    if (!p.feasible)
      fail(ErrorKind::resolution,
           "free_propagate: frequency sum needs too many nodes at t=" +
               std::to_string(t));
    return eval_frequency(t, out, p.dxi);
  }
  const Plan p = kernel_plan(t, out);
  if (!p.feasible)
    fail(ErrorKind::resolution,
         "free_propagate: kernel quadrature unresolved at t=" +
             std::to_string(t) + " (needs spacing*|x-y|/(2|t|) < pi/2)");
  return eval_kernel(t, out);
}

std::vector<cplx> FreeEvolution::eval_frequency(double t,
                                                std::span<const double> out,
                                                double dxi) const {
  const Grid& g = f_.grid;
  const double h = g.spacing();
  const auto w = g.trapezoid_weights();
  const std::size_t n_src = k_hi_ - k_lo_ + 1;
  std::vector<cplx> gk(n_src);
  for (std::size_t k = 0; k < n_src; ++k)
    gk[k] = w[k_lo_ + k] * f_.values[k_lo_ + k];
  const double y0 = g.point(k_lo_);

  const auto m_count =
      static_cast<std::size_t>(std::ceil((xi_hi_ - xi_lo_) / dxi)) + 1;
  const double step = (xi_hi_ - xi_lo_) / static_cast<double>(m_count - 1);
  // weighted transform times the multiplier, ready for the inverse sum
  std::vector<cplx> spectrum(m_count);
  for (std::size_t m = 0; m < m_count; ++m) {
    const double xi = xi_lo_ + static_cast<double>(m) * step;
    const cplx fhat =
        horner(gk, std::polar(1.0, -h * xi)) * std::polar(1.0, -y0 * xi);
    const double wm = (m == 0 || m + 1 == m_count) ? 0.5 * step : step;
    spectrum[m] = wm * fhat * std::polar(1.0, -t * xi * xi);
  }
  std::vector<cplx> u(out.size());
  for (std::size_t j = 0; j < out.size(); ++j) {
    const double x = out[j];
    u[j] = horner(spectrum, std::polar(1.0, x * step)) *
           std::polar(1.0, x * xi_lo_) / (2.0 * kPi);
  }
  return u;
}

std::vector<cplx> FreeEvolution::eval_kernel(double t,
                                             std::span<const double> out) const {
  const Grid& g = f_.grid;
  const double h = g.spacing();
  const auto w = g.trapezoid_weights();
  const std::size_t n_src = k_hi_ - k_lo_ + 1;
  const double inv4t = 1.0 / (4.0 * t);
  std::vector<cplx> gk(n_src);
  for (std::size_t k = 0; k < n_src; ++k) {
    const double y = g.point(k_lo_ + k);
    gk[k] = w[k_lo_ + k] * f_.values[k_lo_ + k] * std::polar(1.0, y * y * inv4t);
  }
  const double y0 = g.point(k_lo_);
  const double sign = t > 0.0 ? 1.0 : -1.0;
  const cplx pref = std::polar(std::pow(4.0 * kPi * std::abs(t), -0.5),
                               -sign * kPi / 4.0);
  std::vector<cplx> u(out.size());
  for (std::size_t j = 0; j < out.size(); ++j) {
    const double x = out[j];
    // (x - y)^2 / 4t = x^2/4t - x y / 2t + y^2/4t
    const cplx z = std::polar(1.0, -x * h * 2.0 * inv4t);
    const cplx sum = horner(gk, z) * std::polar(1.0, -x * y0 * 2.0 * inv4t);
    u[j] = pref * std::polar(1.0, x * x * inv4t) * sum;
  }
  return u;
}

std::vector<cplx> free_propagate(const GridFunction& f, double t,
                                 std::span<const double> out_points,
                                 FreeRoute route) {
  return FreeEvolution(f).evaluate(t, out_points, route);
}

std::vector<cplx> free_propagate(const FreqFunction& fhat, double t,
                                 std::span<const double> out_points) {
  require(std::isfinite(t), "free_propagate: t must be finite");
  const Grid& g = fhat.freq_grid;
  const double step = g.spacing();
  const double xi0 = g.point(0);
  std::vector<cplx> spectrum(g.size());
  for (std::size_t m = 0; m < g.size(); ++m) {
    const double xi = g.point(m);
    const double wm = (m == 0 || m + 1 == g.size()) ? 0.5 * step : step;
    spectrum[m] = wm * fhat.values[m] * std::polar(1.0, -t * xi * xi);
  }
  std::vector<cplx> u(out_points.size());
  for (std::size_t j = 0; j < out_points.size(); ++j) {
    const double x = out_points[j];
    u[j] = horner(spectrum, std::polar(1.0, x * step)) *
           std::polar(1.0, x * xi0) / (2.0 * kPi);
  }
  return u;
}

std::vector<cplx> hermite_via_free_at(const FreeEvolution& evo, double v,
                                      std::span<const double> x) {
  require(std::isfinite(v) && v >= 0.0,
          "hermite_via_free: v must be a finite non-negative number, got " +
              std::to_string(v));
  const GridFunction& f = evo.initial();
  if (v == 0.0) {
    // identity; points must be grid points
    std::vector<cplx> u(x.size());
    const Grid& g = f.grid;
    for (std::size_t j = 0; j < x.size(); ++j) {
      const double pos = (x[j] - g.point(0)) / g.spacing();
      const auto k = static_cast<std::size_t>(std::llround(pos));
      require(std::abs(pos - static_cast<double>(k)) < 1e-9 && k < g.size(),
              "hermite_via_free: v = 0 only supports grid output points");
      u[j] = f.values[k];
    }
    return u;
  }
  const double stretch = std::sqrt(1.0 + v * v);
  std::vector<double> scaled(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) scaled[j] = x[j] * stretch;
  auto u = evo.evaluate(0.5 * v, scaled);
  const double amp = std::sqrt(stretch);
  for (std::size_t j = 0; j < x.size(); ++j)
    u[j] *= amp * std::polar(1.0, -0.5 * v * x[j] * x[j]);
  return u;
}

std::vector<cplx> hermite_via_free_at(const FreqFunction& fhat, double v,
                                      std::span<const double> x) {
  require(std::isfinite(v) && v > 0.0,
          "hermite_via_free: v must be finite and positive, got " +
              std::to_string(v));
  const double stretch = std::sqrt(1.0 + v * v);
  std::vector<double> scaled(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) scaled[j] = x[j] * stretch;
  auto u = free_propagate(fhat, 0.5 * v, scaled);
  const double amp = std::sqrt(stretch);
  for (std::size_t j = 0; j < x.size(); ++j)
    u[j] *= amp * std::polar(1.0, -0.5 * v * x[j] * x[j]);
  return u;
}

GridFunction hermite_via_free(const FreeEvolution& evo, double v) {
  const GridFunction& f = evo.initial();
  if (v == 0.0) {
    require(std::isfinite(v), "hermite_via_free: v must be finite");
    return f;
  }
  const auto x = f.grid.points();
  return GridFunction(f.grid, hermite_via_free_at(evo, v, x));
}

GridFunction hermite_via_free(const GridFunction& f, double v) {
  require(std::isfinite(v) && v >= 0.0,
          "hermite_via_free: v must be a finite non-negative number, got " +
              std::to_string(v));
  if (v == 0.0) return f;
  return hermite_via_free(FreeEvolution(f), v);
}

}  // namespace hsp
