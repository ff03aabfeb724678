#include <algorithm>
#include <cmath>
#include <string>

#include "hsp/error.hpp"
#include "hsp/experiments.hpp"
#include "hsp/mixed_norms.hpp"
#include "quadrature.hpp"

namespace hsp {

Profile bump_profile(double lo, double hi, double scale) {
  require(lo < hi, "bump_profile: empty support");
  Profile p;
  p.lo = lo;
  p.hi = hi;
  p.name = "bump";
  const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
  p.value = [mid, half, scale](double y) {
    const double u = (y - mid) / half;
    const double q = 1.0 - u * u;
    return q <= 0.0 ? 0.0 : scale * std::exp(-1.0 / q);
  };
  return p;
}

Profile default_base_profile() { return bump_profile(-2.0, -1.0); }

Profile default_tau() {
  const Profile raw = bump_profile(-1.0, 1.0);
  Profile tau = bump_profile(-1.0, 1.0, 1.0 / profile_integral(raw));
  tau.name = "tau";
  return tau;
}

double profile_integral(const Profile& f) {
  std::vector<double> breaks(65);
  for (int k = 0; k <= 64; ++k) breaks[k] = f.lo + (f.hi - f.lo) * k / 64.0;
  return detail::integrate_panels<double>(
      [&](double y) { return f(y); }, breaks, detail::gauss_legendre(20));
}

// ---------------------------------------------------------------------------

namespace {

void check_maximal(const MaximalOptions& o) {
  require(o.n_t >= 16, "maximal_function: n_t must be at least 16, got " +
                           std::to_string(o.n_t));
  require(o.t_min > 0.0 && o.t_min < kPi / 8,
          "maximal_function: t_min must lie in (0, pi/8)");
}

double t_sample(const MaximalOptions& o, int k) {
  if (k == o.n_t - 1) return kPi / 8;
  return o.t_min * std::pow((kPi / 8) / o.t_min,
                            static_cast<double>(k) / (o.n_t - 1));
}

}  // namespace

std::vector<double> maximal_function_at(const GridFunction& f,
                                        std::span<const double> x,
                                        const MaximalOptions& opts) {
  check_maximal(opts);
  f.validate();
  std::vector<double> m(x.size(), 0.0);
  const FreeEvolution evo(f);
  if (evo.is_zero() || x.empty()) return m;

  // transform samples fine enough for every free time up to 1/2
  const double xi_max = std::max(std::abs(evo.band_lo()), std::abs(evo.band_hi()));
  const double y_max =
      std::max(std::abs(evo.support_lo()), std::abs(evo.support_hi()));
  double x_max = 0.0;
  for (double xj : x) x_max = std::max(x_max, std::abs(xj));
  const double extent = std::sqrt(2.0) * x_max + y_max + xi_max + 1.0;
  const double dxi = kPi / extent;
  const auto n_freq =
      2 * static_cast<std::size_t>(std::ceil(xi_max / dxi)) + 1;
  return maximal_function_at(fourier_forward(f, Grid(xi_max, n_freq)), x, opts);
}

std::vector<double> maximal_function_at(const FreqFunction& fhat,
                                        std::span<const double> x,
                                        const MaximalOptions& opts) {
  check_maximal(opts);
  std::vector<double> m(x.size(), 0.0);
  for (int k = 0; k < opts.n_t; ++k) {
    const double v = std::tan(2.0 * t_sample(opts, k));
    const auto u = hermite_via_free_at(fhat, v, x);
    for (std::size_t j = 0; j < x.size(); ++j)
      m[j] = std::max(m[j], std::abs(u[j]));
  }
  return m;
}

GridFunction maximal_function(const GridFunction& f,
                              const MaximalOptions& opts) {
  const auto x = f.grid.points();
  const auto m = maximal_function_at(f, x, opts);
  GridFunction out(f.grid);
  for (std::size_t j = 0; j < m.size(); ++j) out.values[j] = m[j];
  return out;
}

double maximal_refinement(const GridFunction& f, const MaximalOptions& opts) {
  MaximalOptions fine = opts;
  fine.n_t = 2 * opts.n_t - 1;
  const auto x = f.grid.points();
  const auto a = maximal_function_at(f, x, opts);
  const auto b = maximal_function_at(f, x, fine);
  double d = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) d = std::max(d, std::abs(a[j] - b[j]));
  return d;
}

double local_l1_ratio(const GridFunction& f, const Interval& I,
                      const LocalL1Options& opts) {
  require(std::isfinite(I.lo) && std::isfinite(I.hi) && I.lo < I.hi,
          "local_l1_ratio: I must be a bounded non-empty interval");
  const double ext = f.grid.half_extent();
  require(I.lo >= -ext && I.hi <= ext,
          "local_l1_ratio: I must lie inside the grid extent");
  const double norm = sobolev_norm_fourier(f, 0.25);
  if (norm == 0.0)
    fail(ErrorKind::undefined_ratio,
         "local_l1_ratio: ||f||_{W^{1/4}} is zero, ratio undefined");
  const double h = opts.x_spacing > 0.0 ? opts.x_spacing : f.grid.spacing();
  const auto n = static_cast<std::size_t>(std::ceil((I.hi - I.lo) / h)) + 1;
  std::vector<double> x(n);
  for (std::size_t j = 0; j < n; ++j)
    x[j] = I.lo + (I.hi - I.lo) * static_cast<double>(j) / (n - 1);
  const auto m = maximal_function_at(f, x, opts.maximal);
  return trapezoid(m, (I.hi - I.lo) / (n - 1)) / norm;
}

GridFunction random_unit_w14(int n_band, std::uint64_t seed, const Grid& grid) {
  auto f = synthesize(random_coefficients(n_band, seed), grid);
  const double norm = sobolev_norm_fourier(f, 0.25);
  for (auto& z : f.values) z /= norm;
  return f;
}

SobolevComparison compare_sobolev(const GridFunction& f, double s) {
  SobolevComparison r;
  r.fourier = sobolev_norm_fourier(f, s);
  r.hermite = sobolev_norm_hermite(analyze(f, max_supported_order(f.grid)), s);
  if (r.hermite == 0.0)
    fail(ErrorKind::undefined_ratio, "compare_sobolev: zero Hermite norm");
  r.ratio = r.fourier / r.hermite;
  return r;
}

}  // namespace hsp
