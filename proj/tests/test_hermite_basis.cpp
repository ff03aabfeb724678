#include <cmath>
#include <random>

#include "doctest.h"
#include "hsp/error.hpp"
#include "hsp/hermite_basis.hpp"

using namespace hsp;

namespace {

double inner(const Grid& g, std::span<const double> a, std::span<const double> b) {
  std::vector<double> prod(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) prod[k] = a[k] * b[k];
  return trapezoid(prod, g.spacing());
}

}  // namespace

TEST_CASE("h_0 seed and parity at the origin") {
  const auto v = eval_hermite_at(5, 0.0);
  CHECK(v[0] == doctest::Approx(0.7511255444649425).epsilon(1e-15));
  CHECK(v[1] == 0.0);
  CHECK(v[3] == 0.0);
}

TEST_CASE("orthogonality of h_3 and h_5 at two resolutions") {
  for (std::size_t n : {1024u, 2047u}) {
    const Grid g(12.0, n);
    const auto t = eval_hermite(5, g);
    CHECK(std::abs(inner(g, t.row(3), t.row(5))) < 1e-10);
  }
}

TEST_CASE("orthonormality on the default grid") {
  const Grid g = default_grid();
  const int n_max = 32;
  const auto t = eval_hermite(n_max, g);
  double worst = 0.0;
  for (int m = 0; m <= n_max; ++m)
    for (int n = 0; n <= m; ++n)
      worst = std::max(worst, std::abs(inner(g, t.row(m), t.row(n)) - (m == n)));
  CHECK(worst < 1e-8);
}

TEST_CASE("parity holds exactly on symmetric grids") {
  const Grid g(10.0, 801);
  const auto t = eval_hermite(20, g);
  for (int n = 0; n <= 20; ++n) {
    const auto row = t.row(n);
    const double sign = n % 2 == 0 ? 1.0 : -1.0;
    for (std::size_t k = 0; k < g.size(); ++k)
      REQUIRE(row[g.size() - 1 - k] == sign * row[k]);
  }
}

TEST_CASE("resolution guard refuses unresolved orders") {
  const Grid coarse(12.0, 64);  // spacing ~0.381
  CHECK_NOTHROW(eval_hermite(30, coarse));
  try {
    eval_hermite(40, coarse);
    FAIL("expected resolution error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::resolution);
  }
  CHECK_THROWS_AS(eval_hermite(-1, coarse), Error);
}

TEST_CASE("analyze recovers unit vectors and linear combinations") {
  const Grid g = default_grid();
  auto c = analyze(sample_hermite(2, g), 8);
  for (int n = 0; n <= 8; ++n)
    CHECK(std::abs(c.coeffs[n] - cplx(n == 2 ? 1.0 : 0.0)) < 1e-8);

  GridFunction f(g);
  const auto h0 = sample_hermite(0, g), h1 = sample_hermite(1, g);
  for (std::size_t k = 0; k < g.size(); ++k)
    f.values[k] = (h0.values[k] + h1.values[k]) / std::sqrt(2.0);
  c = analyze(f, 4);
  CHECK(std::abs(c.coeffs[0] - 1.0 / std::sqrt(2.0)) < 1e-8);
  CHECK(std::abs(c.coeffs[1] - 1.0 / std::sqrt(2.0)) < 1e-8);
}

TEST_CASE("analyze of exp(-x^2) against the Gaussian integral") {
  // oracle: pi^{-1/4} sqrt(2 pi / 3), evaluated in extended precision
  const Grid g = default_grid();
  GridFunction f(g);
  for (std::size_t k = 0; k < g.size(); ++k)
    f.values[k] = std::exp(-g.point(k) * g.point(k));
  const auto c = analyze(f, 0);
  CHECK(std::abs(c.coeffs[0] - 1.0870307726111885) < 1e-12);
}

TEST_CASE("synthesize round trip on random coefficients") {
  const Grid g(12.0, 2048);
  const auto c = random_coefficients(32, 7);
  const auto back = analyze(synthesize(c, g), 32);
  for (int n = 0; n <= 32; ++n) CHECK(std::abs(back.coeffs[n] - c.coeffs[n]) < 1e-8);

  HermiteCoeffs zero;
  zero.coeffs.assign(5, 0.0);
  CHECK(synthesize(zero, g).max_abs() == 0.0);

  HermiteCoeffs unit;
  unit.coeffs = {1.0};
  const auto f = synthesize(unit, g);
  const auto h0 = sample_hermite(0, g);
  for (std::size_t k = 0; k < g.size(); ++k) REQUIRE(f.values[k] == h0.values[k]);
}

TEST_CASE("Fourier Sobolev norm of h_0") {
  const Grid g = default_grid();
  const auto h0 = sample_hermite(0, g);
  CHECK(sobolev_norm_fourier(h0, 0.0) == doctest::Approx(1.0).epsilon(1e-8));
  // oracle: sqrt(int |h0|^2 + |h0'|^2) = sqrt(3/2)
  CHECK(sobolev_norm_fourier(h0, 1.0) ==
        doctest::Approx(1.224744871391589).epsilon(1e-8));
  // oracle: sqrt(int (1+xi^2)^{1/4} e^{-xi^2} / sqrt(pi)) by mpmath quadrature
  CHECK(sobolev_norm_fourier(h0, 0.25) ==
        doctest::Approx(1.0443804904472567).epsilon(1e-8));
}

TEST_CASE("Sobolev norm refuses non-decaying functions") {
  const Grid g(5.0, 512);
  GridFunction f(g);
  for (auto& v : f.values) v = 1.0;
  try {
    sobolev_norm_fourier(f, 0.5);
    FAIL("expected tail leak");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::tail_leak);
  }
}

TEST_CASE("Hermite Sobolev norm") {
  HermiteCoeffs c;
  c.coeffs = {1.0};
  CHECK(sobolev_norm_hermite(c, 3.7) == doctest::Approx(1.0));
  c.coeffs = {0.0, 0.0, 1.0};
  CHECK(sobolev_norm_hermite(c, 1.0) == doctest::Approx(std::sqrt(5.0)));
  // H applied twice spectrally: eigenvalues 1 and 3 -> (1 + 9)/2
  c.coeffs = {1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)};
  HermiteCoeffs h2 = c;
  for (int n = 0; n <= 1; ++n) h2.coeffs[n] *= (2.0 * n + 1.0);
  CHECK(sobolev_norm_hermite(c, 2.0) == doctest::Approx(std::sqrt(5.0)));
  CHECK(h2.l2_norm() == doctest::Approx(sobolev_norm_hermite(c, 2.0)));
}

TEST_CASE("norm consistency between Fourier and Hermite sides") {
  const Grid g = default_grid();
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto c = random_coefficients(24, seed);
    const auto f = synthesize(c, g);
    CHECK(sobolev_norm_fourier(f, 0.0) ==
          doctest::Approx(sobolev_norm_hermite(analyze(f, 24), 0.0)).epsilon(1e-6));
  }
}
