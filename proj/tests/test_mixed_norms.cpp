#include <cmath>

#include "doctest.h"
#include "hsp/error.hpp"
#include "hsp/mixed_norms.hpp"
#include "hsp/propagators.hpp"

using namespace hsp;

namespace {

GridFunction band_limited(std::uint64_t seed, int n_band = 16, bool real = false) {
  auto c = random_coefficients(n_band, seed, real);
  const double nrm = c.l2_norm();
  for (auto& z : c.coeffs) z /= nrm;
  return synthesize(c, default_grid());
}

}  // namespace

TEST_CASE("spatial Lebesgue norms of h_0") {
  const auto h0 = sample_hermite(0, default_grid());
  CHECK(lp_norm(h0, 2.0) == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(lp_norm(h0, 6.0) == doctest::Approx(0.754017773957633).epsilon(1e-10));
  CHECK(lp_norm(h0, kInf) == doctest::Approx(0.7511255444649425).epsilon(2e-5));
  CHECK(lp_norm(h0, 1.0) == doctest::Approx(std::sqrt(2.0) * std::pow(kPi, 0.25)).epsilon(1e-10));
  CHECK_THROWS_AS(lp_norm(h0, 0.5), Error);
}

TEST_CASE("mixed norms") {
  const Grid g = default_grid();
  const auto h0 = sample_hermite(0, g);

  MixedNormSpec spec{2.0, 4.0, 0.0, 1.0, 11};
  std::vector<GridFunction> constant(11, h0);
  CHECK(mixed_norm(constant, spec) == doctest::Approx(1.0).epsilon(1e-8));

  spec = {6.0, 6.0, 0.0, kPi / 4, 33};
  std::vector<GridFunction> flow;
  for (int k = 0; k < spec.n_t; ++k) {
    GridFunction u = h0;
    for (auto& z : u.values) z *= std::polar(1.0, -spec.time(k));
    flow.push_back(u);
  }
  CHECK(mixed_norm(flow, spec) == doctest::Approx(0.724263440821656).epsilon(1e-10));

  std::vector<GridFunction> zero(33, GridFunction(g));
  CHECK(mixed_norm(zero, spec) == 0.0);

  spec.q = kInf;
  CHECK(mixed_norm(flow, spec) == doctest::Approx(0.754017773957633).epsilon(1e-10));

  spec = {2.0, 2.0, 0.0, 1.0, 1};
  std::vector<GridFunction> one(1, h0);
  CHECK_THROWS_AS(mixed_norm(one, spec), Error);
  spec.n_t = 3;
  CHECK_THROWS_AS(mixed_norm(one, spec), Error);
}

TEST_CASE("change of variables weight") {
  for (double v : {0.0, 0.3, 1.0, 17.0}) {
    CHECK(change_of_variables_weight(v, 6.0, 6.0) == 1.0);
    CHECK(change_of_variables_weight(v, 2.0, kInf) == 1.0);
  }
  CHECK(change_of_variables_weight(1.0, 2.0, 8.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(change_of_variables_weight(0.0, 4.0, 4.0) == 1.0);
  CHECK(change_of_variables_weight(2.0, 4.0, 4.0) == doctest::Approx(std::pow(5.0, -0.5)));
  CHECK(change_of_variables_weight(1.0, 2.0, 8.0, 2) ==
        doctest::Approx(std::pow(2.0, -4.0 * (1.0 + 0.25 - 1.0))));
  CHECK(change_of_variables_weight(1.0, 4.0, kInf) == kInf);
  CHECK_THROWS_AS(change_of_variables_weight(-1.0, 6.0, 6.0), Error);
}

TEST_CASE("Strichartz equality for h_0") {
  const auto h0 = sample_hermite(0, default_grid());
  const auto r = strichartz_check(h0, 6.0, 6.0);
  CHECK(r.lhs_power == doctest::Approx(0.144337567297406).epsilon(1e-6));
  CHECK(r.rhs_power == doctest::Approx(0.144337567297406).epsilon(1e-4));
  CHECK(r.lhs == doctest::Approx(0.724263440821656).epsilon(1e-6));
  CHECK(r.rel_err < 1e-4);
  CHECK(r.tail > 0.0);
  CHECK(r.tail < 0.01 * r.rhs_power);
}

TEST_CASE("Strichartz equality for h_1 and random data") {
  const auto h1 = sample_hermite(1, default_grid());
  auto r = strichartz_check(h1, 6.0, 6.0);
  CHECK(r.rel_err < 1e-3);
  for (std::uint64_t seed : {7u, 8u}) {
    r = strichartz_check(band_limited(seed), 6.0, 6.0);
    CAPTURE(seed);
    CHECK(r.lhs / r.rhs == doctest::Approx(1.0).epsilon(1e-3));
  }
  r = strichartz_check(band_limited(9), 4.0, 8.0);
  CHECK(r.rel_err < 1e-3);
  r = strichartz_check(band_limited(10), 2.0, kInf);
  CHECK(r.lhs == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(r.rhs == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("Strichartz preconditions") {
  const auto h0 = sample_hermite(0, default_grid());
  try {
    strichartz_check(h0, 4.0, 4.0);
    FAIL("expected precondition error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::precondition);
    CHECK(std::string(e.what()).find("1/p + 2/q = 1/2") != std::string::npos);
  }
  StrichartzOptions o;
  o.v_max = 0.5;
  CHECK_THROWS_AS(strichartz_check(h0, 6.0, 6.0, o), Error);
}

TEST_CASE("substitution consistency") {
  const auto f = band_limited(12);
  for (auto [p, q] : {std::pair{6.0, 6.0}, std::pair{4.0, 4.0}, std::pair{3.0, 10.0}}) {
    const auto r = substitution_consistency(f, p, q);
    CAPTURE(p);
    CHECK(r.rel_err < 5e-3);
  }
}

TEST_CASE("periodicity and evenness of the Lebesgue norm along the flow") {
  const auto f = band_limited(4, 16, true);
  for (double p : {3.0, 6.0}) {
    for (double t : {0.2, 0.45, 1.1}) {
      const double a = lp_norm(propagate_mehler(f, t), p);
      CHECK(std::abs(lp_norm(propagate_mehler(f, -t), p) - a) < 1e-6);
      CHECK(std::abs(lp_norm(propagate_mehler(f, t + kPi / 2), p) - a) < 1e-6);
    }
  }
}

TEST_CASE("refinement changes the Strichartz sides less than the reported error") {
  const auto f = band_limited(13);
  const auto coarse = strichartz_check(f, 6.0, 6.0);
  StrichartzOptions fine;
  fine.n_t = 2 * (fine.n_t - 1) + 1;
  fine.n_v = 2 * (fine.n_v - 1) + 1;
  fine.x_resolution = 2.0;
  const auto r = strichartz_check(f, 6.0, 6.0, fine);
  const double bound = std::max(coarse.rel_err, 1e-6);
  CHECK(std::abs(r.lhs - coarse.lhs) / coarse.lhs < bound);
  CHECK(std::abs(r.rhs - coarse.rhs) / coarse.rhs < bound);
}
