#include "hsp/hermite_basis.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "hsp/error.hpp"
#include "spectral.hpp"

namespace hsp {

namespace {

const double kPiQuarterInv = std::pow(kPi, -0.25);

// Fills h_0..h_{n_max} at x into out (size n_max+1).
void hermite_column(int n_max, double x, double* out, std::size_t stride) {
  double prev = 0.0;
  double cur = kPiQuarterInv * std::exp(-0.5 * x * x);
  out[0] = cur;
  for (int n = 0; n < n_max; ++n) {
    const double dn = static_cast<double>(n);
    const double next = x * std::sqrt(2.0 / (dn + 1.0)) * cur -
                        std::sqrt(dn / (dn + 1.0)) * prev;
    prev = cur;
    cur = next;
    out[static_cast<std::size_t>(n + 1) * stride] = cur;
  }
}

}  // namespace

double HermiteCoeffs::l2_norm() const {
  double s = 0.0;
  for (const auto& c : coeffs) s += std::norm(c);
  return std::sqrt(s);
}

void check_hermite_resolution(const Grid& grid, int n_max) {
  require(n_max >= 0, "n_max must be non-negative, got " + std::to_string(n_max));
  const double limit = kPi / std::sqrt(2.0 * n_max + 1.0);
  if (!(grid.spacing() < limit)) {
    fail(ErrorKind::resolution,
         "grid spacing " + std::to_string(grid.spacing()) +
             " does not resolve h_" + std::to_string(n_max) +
             " (needs spacing < pi/sqrt(2 n_max + 1) = " +
             std::to_string(limit) + ")");
  }
}

int max_supported_order(const Grid& grid) {
  const double turning = 0.7 * grid.half_extent();
  const int by_extent =
      static_cast<int>(std::floor((turning * turning - 1.0) / 2.0));
  const double r = kPi / grid.spacing();
  const int by_spacing = static_cast<int>(std::ceil((r * r - 1.0) / 2.0)) - 1;
  return std::max(0, std::min(by_extent, by_spacing));
}

HermiteTable eval_hermite(int n_max, const Grid& grid) {
  check_hermite_resolution(grid, n_max);
  HermiteTable table(n_max, grid.size());
  const std::size_t n = grid.size();
  std::vector<double> column(static_cast<std::size_t>(n_max + 1));
  for (std::size_t k = 0; k < n; ++k) {
    hermite_column(n_max, grid.point(k), column.data(), 1);
    for (int m = 0; m <= n_max; ++m) table.row(m)[k] = column[m];
  }
  return table;
}

std::vector<double> eval_hermite_at(int n_max, double x) {
  require(n_max >= 0, "n_max must be non-negative");
  std::vector<double> out(static_cast<std::size_t>(n_max + 1));
  hermite_column(n_max, x, out.data(), 1);
  return out;
}

GridFunction sample_hermite(int n, const Grid& grid) {
  const auto table = eval_hermite(n, grid);
  GridFunction f(grid);
  const auto row = table.row(n);
  for (std::size_t k = 0; k < grid.size(); ++k) f.values[k] = row[k];
  return f;
}

HermiteCoeffs analyze(const GridFunction& f, int n_max) {
  f.validate();
  const auto table = eval_hermite(n_max, f.grid);
  const auto w = f.grid.trapezoid_weights();
  HermiteCoeffs c;
  c.coeffs.assign(static_cast<std::size_t>(n_max + 1), 0.0);
  for (int n = 0; n <= n_max; ++n) {
    const auto row = table.row(n);
    cplx s = 0.0;
    for (std::size_t k = 0; k < f.size(); ++k) s += (w[k] * row[k]) * f.values[k];
    c.coeffs[n] = s;
  }
  return c;
}

GridFunction synthesize(const HermiteCoeffs& c, const Grid& grid) {
  require(!c.coeffs.empty(), "cannot synthesize from an empty coefficient vector");
  const auto table = eval_hermite(c.n_max(), grid);
  GridFunction f(grid);
  for (int n = 0; n <= c.n_max(); ++n) {
    const cplx cn = c.coeffs[n];
    if (cn == cplx(0.0)) continue;
    const auto row = table.row(n);
    for (std::size_t k = 0; k < grid.size(); ++k) f.values[k] += cn * row[k];
  }
  return f;
}

void check_decay(const GridFunction& f, const char* what) {
  const double r = f.edge_ratio();
  if (r > kTailTolerance) {
    fail(ErrorKind::tail_leak,
         std::string(what) + ": function has not decayed at the grid ends "
         "(edge/max = " + std::to_string(r) + ", tolerance " +
         std::to_string(kTailTolerance) + "); enlarge half_extent");
  }
}

double sobolev_norm_fourier(const GridFunction& f, double s) {
  f.validate();
  require(std::isfinite(s), "Sobolev order must be finite");
  check_decay(f, "sobolev_norm_fourier");
  const auto spec = detail::sampled_spectrum(f, 2);
  double acc = 0.0;
  for (std::size_t m = 0; m < spec.values.size(); ++m) {
    const double xi = spec.frequency(m);
    acc += std::pow(1.0 + xi * xi, s) * std::norm(spec.values[m]);
  }
  return std::sqrt(acc * spec.dxi / (2.0 * kPi));
}

double sobolev_norm_fourier(const FreqFunction& fhat, double s) {
  require(std::isfinite(s), "Sobolev order must be finite");
  const Grid& g = fhat.freq_grid;
  std::vector<double> integrand(g.size());
  for (std::size_t m = 0; m < g.size(); ++m) {
    const double xi = g.point(m);
    integrand[m] = std::pow(1.0 + xi * xi, s) * std::norm(fhat.values[m]);
  }
  return std::sqrt(trapezoid(integrand, g.spacing()) / (2.0 * kPi));
}

double sobolev_norm_hermite(const HermiteCoeffs& c, double s) {
  double acc = 0.0;
  for (int n = 0; n <= c.n_max(); ++n) {
    acc += std::pow(2.0 * n + 1.0, s) * std::norm(c.coeffs[n]);
  }
  return std::sqrt(acc);
}

HermiteCoeffs random_coefficients(int n_band, std::uint64_t seed,
                                  bool real_valued) {
  require(n_band >= 0, "n_band must be non-negative");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  HermiteCoeffs c;
  c.coeffs.resize(static_cast<std::size_t>(n_band + 1));
  for (auto& z : c.coeffs) {
    const double re = normal(rng);
    const double im = normal(rng);
    z = real_valued ? cplx(re, 0.0) : cplx(re, im);
  }
  return c;
}

}  // namespace hsp
