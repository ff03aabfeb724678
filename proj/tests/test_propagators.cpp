#include <cmath>
#include <random>

#include "doctest.h"
#include "hsp/error.hpp"
#include "hsp/propagators.hpp"

using namespace hsp;

namespace {

// Abel-regularized eigen-series sum_n exp(-(2n+1)(eps + i t)) h_n(x) h_n(y),
// extrapolated to eps -> 0 with three-level Richardson.
cplx eigen_series_oracle(double t, double x, double y) {
  auto series = [&](double eps) {
    const int n_terms = static_cast<int>(45.0 / (2.0 * eps));
    const auto hx = eval_hermite_at(n_terms, x);
    const auto hy = eval_hermite_at(n_terms, y);
    cplx s = 0.0;
    for (int n = 0; n <= n_terms; ++n)
      s += std::exp(-(2.0 * n + 1.0) * cplx(eps, t)) * hx[n] * hy[n];
    return s;
  };
  const double eps = 4e-3;
  const cplx s1 = series(eps), s2 = series(eps / 2), s4 = series(eps / 4);
  const cplx r1 = 2.0 * s2 - s1, r2 = 2.0 * s4 - s2;
  return (4.0 * r2 - r1) / 3.0;
}

double sup_diff(std::span<const cplx> a, std::span<const cplx> b) {
  double d = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) d = std::max(d, std::abs(a[k] - b[k]));
  return d;
}

double l2(const GridFunction& f) {
  std::vector<double> m(f.size());
  for (std::size_t k = 0; k < f.size(); ++k) m[k] = std::norm(f.values[k]);
  return std::sqrt(trapezoid(m, f.grid.spacing()));
}

GridFunction band_limited(std::uint64_t seed, int n_band = 20) {
  auto c = random_coefficients(n_band, seed);
  const double nrm = c.l2_norm();
  for (auto& z : c.coeffs) z /= nrm;
  return synthesize(c, default_grid());
}

}  // namespace

TEST_CASE("Mehler kernel at the origin for t = pi/8") {
  const double t = kPi / 8;
  const cplx k = mehler_kernel(t, 0.0, 0.0);
  CHECK(std::abs(k) == doctest::Approx(0.4744249983287943).epsilon(1e-12));
  CHECK(std::arg(k) == doctest::Approx(-kPi / 4).epsilon(1e-12));
  CHECK(std::abs(k - eigen_series_oracle(t, 0.0, 0.0)) < 1e-6);
}

TEST_CASE("Mehler kernel at t = pi/4 has modulus (2 pi)^{-1/2}") {
  const cplx k = mehler_kernel(kPi / 4, 1.0, 2.0);
  CHECK(std::abs(k) == doctest::Approx(0.3989422804014327).epsilon(1e-12));
  CHECK(std::abs(k - eigen_series_oracle(kPi / 4, 1.0, 2.0)) < 1e-5);
}

TEST_CASE("Mehler kernel matches the eigen-series across phase branches") {
  for (double t : {0.3, 1.2, 2.0, 2.9, -0.4, -1.9}) {
    for (auto [x, y] : {std::pair{0.5, -0.3}, std::pair{-1.0, 0.7}}) {
      CAPTURE(t);
      CHECK(std::abs(mehler_kernel(t, x, y) - eigen_series_oracle(t, x, y)) < 1e-5);
    }
  }
}

TEST_CASE("Mehler kernel symmetries") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> pos(-3.0, 3.0), time(-3.0, 3.0);
  for (int i = 0; i < 200; ++i) {
    const double x = pos(rng), y = pos(rng), t = time(rng);
    if (std::abs(std::sin(2 * t)) < 0.1) continue;
    const cplx k = mehler_kernel(t, x, y);
    CHECK(std::abs(mehler_kernel(-t, x, y) - std::conj(k)) < 1e-10 * std::abs(k));
    CHECK(std::abs(mehler_kernel(t + kPi / 2, x, y) -
                   std::polar(1.0, -kPi / 2) * mehler_kernel(t, -x, y)) < 1e-10 * std::abs(k));
  }
  // d = 2: tensor product of two 1-d kernels
  const double x2[] = {0.4, -1.1}, y2[] = {0.9, 0.2};
  const double t = 0.7;
  CHECK(std::abs(mehler_kernel(t, x2, y2) -
                 mehler_kernel(t, x2[0], y2[0]) * mehler_kernel(t, x2[1], y2[1])) < 1e-12);
}

TEST_CASE("Mehler kernel refuses multiples of pi/2") {
  try {
    mehler_kernel(kPi / 2, 0.0, 0.0);
    FAIL("expected singularity");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::singularity);
  }
}

TEST_CASE("spectral propagation") {
  HermiteCoeffs c;
  c.coeffs = {0.0, 0.0, 1.0};
  const auto out = propagate_spectral(c, kPi / 10);
  CHECK(std::abs(out.coeffs[2] - cplx(0.0, -1.0)) < 1e-15);

  const auto r = random_coefficients(16, 11);
  const auto same = propagate_spectral(r, 0.0);
  const auto flip = propagate_spectral(r, kPi);
  for (int n = 0; n <= 16; ++n) {
    CHECK(same.coeffs[n] == r.coeffs[n]);
    CHECK(std::abs(flip.coeffs[n] + r.coeffs[n]) < 1e-13);
  }
  CHECK(propagate_spectral(r, 0.77).l2_norm() == doctest::Approx(r.l2_norm()).epsilon(1e-14));
  const auto a = propagate_spectral(propagate_spectral(r, 0.3), 0.45);
  const auto b = propagate_spectral(r, 0.75);
  for (int n = 0; n <= 16; ++n) CHECK(std::abs(a.coeffs[n] - b.coeffs[n]) < 1e-14);
}

TEST_CASE("Mehler propagation of eigenfunctions and combinations") {
  const Grid g = default_grid();
  const auto h0 = sample_hermite(0, g), h1 = sample_hermite(1, g);
  auto u = propagate_mehler(h0, kPi / 8);
  for (std::size_t k = 0; k < g.size(); ++k)
    REQUIRE(std::abs(u.values[k] - std::polar(1.0, -kPi / 8) * h0.values[k]) < 1e-6);

  GridFunction f(g);
  for (std::size_t k = 0; k < g.size(); ++k) f.values[k] = h0.values[k] + h1.values[k];
  u = propagate_mehler(f, kPi / 6);
  for (std::size_t k = 0; k < g.size(); ++k) {
    const cplx expect = std::polar(1.0, -kPi / 6) * h0.values[k] +
                        std::polar(1.0, -kPi / 2) * h1.values[k];
    REQUIRE(std::abs(u.values[k] - expect) < 1e-6);
  }
}

TEST_CASE("Mehler and spectral propagation agree on band-limited data") {
  const Grid g = default_grid();
  const auto c = random_coefficients(24, 5);
  const auto f = synthesize(c, g);
  for (double t : {0.3, 1.0, 2.5, -0.6}) {
    const auto a = propagate_mehler(f, t);
    const auto b = synthesize(propagate_spectral(c, t), g);
    CAPTURE(t);
    CHECK(sup_diff(a.values, b.values) < 1e-6);
    CHECK(l2(a) == doctest::Approx(l2(f)).epsilon(1e-6));
  }
  // near-singular time is routed through the spectral path
  const auto near = propagate_mehler(f, kPi / 2 + 1e-4);
  const auto exact = synthesize(propagate_spectral(c, kPi / 2 + 1e-4), g);
  CHECK(sup_diff(near.values, exact.values) < 1e-8);
}

TEST_CASE("Mehler propagation refuses under-resolved kernels") {
  const auto f = sample_hermite(0, default_grid());
  try {
    propagate_mehler(f, 0.01);
    FAIL("expected resolution error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::resolution);
  }
}

TEST_CASE("Fourier transform conventions") {
  const Grid g = default_grid();
  const auto h0 = sample_hermite(0, g);
  const auto fh = fourier_forward(h0);
  double worst = 0.0, worst_im = 0.0, worst_even = 0.0;
  const std::size_t m = fh.freq_grid.size();
  for (std::size_t j = 0; j < m; ++j) {
    const double xi = fh.freq_grid.point(j);
    const double expect = std::sqrt(2 * kPi) * eval_hermite_at(0, xi)[0];
    worst = std::max(worst, std::abs(fh.values[j] - expect));
    worst_im = std::max(worst_im, std::abs(fh.values[j].imag()));
    worst_even = std::max(worst_even, std::abs(fh.values[j] - fh.values[m - 1 - j]));
  }
  CHECK(worst < 1e-8);
  CHECK(worst_im < 1e-10);
  CHECK(worst_even < 1e-10);

  const auto zero = fourier_forward(GridFunction(g));
  for (const auto& z : zero.values) CHECK(z == cplx(0.0));
}

TEST_CASE("free propagation of the Gaussian") {
  const Grid g = default_grid();
  const auto h0 = sample_hermite(0, g);
  const double x0 = 0.0;
  const auto u = free_propagate(h0, 0.5, std::span<const double>(&x0, 1));
  // closed form pi^{-1/4} (1 + 2 i t)^{-1/2} at x = 0
  const cplx expect = std::pow(kPi, -0.25) / std::sqrt(cplx(1.0, 1.0));
  CHECK(std::abs(u[0] - expect) < 1e-10);
  CHECK(std::abs(u[0]) == doctest::Approx(0.6316187777460647).epsilon(1e-10));

  std::vector<double> xs;
  for (double x = -20; x <= 20; x += 0.37) xs.push_back(x);
  for (double t : {0.1, 0.5, 2.0, 10.0, -0.7}) {
    const cplx a = cplx(1.0, 2.0 * t);
    for (auto route : {FreeRoute::automatic, FreeRoute::kernel, FreeRoute::frequency}) {
      if (route == FreeRoute::frequency && std::abs(t) > 5) continue;
      if (route == FreeRoute::kernel && std::abs(t) < 0.5) continue;
      const auto v = free_propagate(h0, t, xs, route);
      double worst = 0.0;
      for (std::size_t j = 0; j < xs.size(); ++j) {
        const cplx e = std::pow(kPi, -0.25) / std::sqrt(a) *
                       std::exp(-xs[j] * xs[j] / (2.0 * a));
        worst = std::max(worst, std::abs(v[j] - e));
      }
      CAPTURE(t);
      CHECK(worst < 1e-10);
    }
  }
}

TEST_CASE("free propagation: identity at t = 0 and unitarity") {
  const Grid g = default_grid();
  const auto f = band_limited(21);
  const auto x = g.points();
  const auto u0 = free_propagate(f, 0.0, x);
  CHECK(sup_diff(u0, f.values) < 1e-8);

  for (double t : {0.1, 1.0, 5.0}) {
    // output grid wide enough to hold the spreading solution
    const Grid wide(12.0 + 2.0 * t * 14.0, 6000);
    const auto u = free_propagate(f, t, wide.points());
    CAPTURE(t);
    CHECK(l2(GridFunction(wide, u)) == doctest::Approx(l2(f)).epsilon(1e-8));
  }
  CHECK_THROWS_AS(free_propagate(f, 1e-3, std::vector<double>{0.0}, FreeRoute::kernel), Error);
}

TEST_CASE("transfer formula") {
  const Grid g = default_grid();
  CHECK(hermite_via_free(sample_hermite(3, g), 0.0).values == sample_hermite(3, g).values);

  const auto h0 = sample_hermite(0, g);
  const auto u = hermite_via_free(h0, 1.0);
  for (std::size_t k = 0; k < g.size(); ++k)
    REQUIRE(std::abs(u.values[k] - std::polar(1.0, -kPi / 8) * h0.values[k]) < 1e-6);

  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const auto f = band_limited(seed);
    const auto a = hermite_via_free(f, std::tan(0.6));
    const auto b = propagate_mehler(f, 0.3);
    CHECK(sup_diff(a.values, b.values) < 1e-6);
    for (double v : {0.1, 0.5, 1.0, 3.0, 40.0}) {
      const auto via = hermite_via_free(f, v);
      CAPTURE(v);
      CHECK(l2(via) == doctest::Approx(1.0).epsilon(1e-6));
    }
  }
  CHECK_THROWS_AS(hermite_via_free(h0, -1.0), Error);
}
