// One PASS/FAIL line per acceptance criterion.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "hsp/experiments.hpp"
#include "hsp/hermite_basis.hpp"
#include "hsp/hsp.h"
#include "hsp/mixed_norms.hpp"
#include "hsp/oscillatory.hpp"
#include "hsp/propagators.hpp"

using namespace hsp;

namespace {

struct Outcome {
  bool passed = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double sup_diff(std::span<const cplx> a, std::span<const cplx> b) {
  double d = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) d = std::max(d, std::abs(a[k] - b[k]));
  return d;
}

Outcome eigenflow() {
  const Grid g = default_grid();
  const double ts[] = {0.1, 0.3, kPi / 8, 1.2};
  double worst = 0.0;
  for (int n = 0; n <= 32; ++n) {
    const auto h = sample_hermite(n, g);
    for (double t : ts) {
      const auto u = propagate_mehler(h, t);
      std::vector<cplx> e(h.values);
      for (auto& z : e) z *= std::polar(1.0, -(2.0 * n + 1.0) * t);
      worst = std::max(worst, sup_diff(u.values, e));
    }
  }
  return {worst < 1e-6, fmt("max sup error %.3g over n <= 32, 4 times", worst)};
}

Outcome transfer() {
  const Grid g = default_grid();
  const double vs[] = {0.1, 0.5, 1.0, 3.0};
  double worst = 0.0;
  for (std::uint64_t s = 1; s <= 20; ++s) {
    const auto f = synthesize(random_coefficients(12, s), g);
    const FreeEvolution evo(f);
    for (double v : vs)
      worst = std::max(worst, sup_diff(hermite_via_free(evo, v).values,
                                       propagate_mehler(f, std::atan(v) / 2).values));
  }
  return {worst < 1e-6, fmt("max residual %.3g over 20 functions, 4 values of v", worst)};
}

Outcome strichartz() {
  const Grid g = default_grid();
  const double exact = 1.0 / (4.0 * std::sqrt(3.0));
  const auto r0 = strichartz_check(sample_hermite(0, g), 6.0, 6.0);
  bool ok = std::abs(r0.lhs_power / exact - 1) < 0.01 &&
            std::abs(r0.rhs_power / exact - 1) < 0.01;
  double lo = HUGE_VAL, hi = 0.0;
  for (std::uint64_t s = 1; s <= 5; ++s) {
    auto f = synthesize(random_coefficients(8, s), g);
    const auto r = strichartz_check(f, 6.0, 6.0);
    lo = std::min(lo, r.lhs / r.rhs);
    hi = std::max(hi, r.lhs / r.rhs);
  }
  ok = ok && lo >= 0.99 && hi <= 1.01;
  return {ok, fmt("h0 sixth powers %.6f / %.6f (exact %.6f); random lhs/rhs in [%.6f, %.6f]",
                  r0.lhs_power, r0.rhs_power, exact, lo, hi)};
}

Outcome symmetries() {
  double kernel = 0.0;
  const double ts[] = {-1.3, -0.9, -0.4, 0.2, 0.5, 0.95, 1.25, 2.0};
  for (int i = 0; i < 10; ++i) {
    for (int j = 0; j < 10; ++j) {
      const double x = -3.0 + 6.0 * i / 9.0, y = -2.7 + 5.9 * j / 9.0;
      for (double t : ts) {
        const cplx k = mehler_kernel(t, x, y);
        kernel = std::max(kernel, std::abs(mehler_kernel(-t, x, y) - std::conj(k)));
        kernel = std::max(kernel, std::abs(mehler_kernel(t + kPi / 2, x, y) -
                                           cplx(0.0, -1.0) * mehler_kernel(t, -x, y)));
      }
    }
  }
  const Grid g = default_grid();
  const auto f = synthesize(random_coefficients(10, 5, true), g);
  double period = 0.0;
  for (double t : {0.15, 0.4, 0.7}) {
    const auto a = propagate_mehler(f, t), b = propagate_mehler(f, t + kPi / 2);
    for (double p : {2.0, 4.0, 6.0, kInf})
      period = std::max(period, std::abs(lp_norm(a, p) - lp_norm(b, p)));
  }
  return {kernel < 1e-10 && period < 1e-6,
          fmt("kernel identities %.3g on 10x10x8; pi/2 periodicity of norms %.3g", kernel,
              period)};
}

Outcome oscillatory() {
  const double q = std::abs(osc_integral({0.0, 1.0, {}}));
  const double g = osc_integral({1.0, 0.0, {}}).real();
  const auto s = bound_sweep_decades(-2, 4);
  const bool ok = std::abs(q - std::tgamma(0.25)) < 1e-4 &&
                  std::abs(g - std::sqrt(2 * kPi)) < 1e-4 && std::isfinite(s.max_ratio) &&
                  s.max_ratio <= 8.0 && s.interior;
  return {ok, fmt("spot %.6f, %.6f; sweep max ratio %.5f at (%g, %g), interior %d", q, g,
                  s.max_ratio, s.argmax.a, s.argmax.b, int(s.interior))};
}

Outcome local_maximal() {
  const Grid g = default_grid(), fine = g.refined();
  LocalL1Options o1, o2;
  o1.maximal.n_t = 256;
  o1.x_spacing = 0.01;
  o2.maximal.n_t = 512;
  o2.x_spacing = 0.005;
  double c1 = 0.0, c2 = 0.0;
  for (std::uint64_t s = 1; s <= 100; ++s) {
    c1 = std::max(c1, local_l1_ratio(random_unit_w14(12, s, g), {-1.0, 1.0}, o1));
    c2 = std::max(c2, local_l1_ratio(random_unit_w14(12, s, fine), {-1.0, 1.0}, o2));
  }
  const double drift = std::abs(c2 / c1 - 1.0);
  return {std::isfinite(c1) && drift < 0.05,
          fmt("ceiling %.6f, doubled resolution %.6f, change %.3g", c1, c2, drift)};
}

Outcome divergence() {
  const Profile base = default_base_profile();
  const double ts[] = {0.02, 0.01, 0.005, 0.0025};
  double slope_err = 0.0;
  for (double s : {0.1, 0.2, 0.25})
    slope_err = std::max(slope_err, std::abs(ft_sobolev_slope(base, s, ts) - (0.5 - 2 * s)));
  const auto d = divergence_demo(base, 5);
  const auto lb = lower_bound_scan(base, 0.05, d.scan.I_prime);
  std::string rows;
  for (const auto& r : d.rows) rows += fmt(" %.4f>%.4f", r.min_observed, r.predicted);
  return {slope_err < 0.05 && lb.max_deviation < 1e-4 && d.all_exceed,
          fmt("slope error %.3g; closed-form deviation %.3g; c %.4f; observed>predicted:%s",
              slope_err, lb.max_deviation, d.scan.c, rows.c_str())};
}

Outcome bump() {
  const Profile tau = default_tau();
  std::vector<BumpReport> reps;
  for (double x0 : {16.0, 64.0, 256.0, 1024.0}) reps.push_back(theorem3_bump(x0, tau));
  double lo = HUGE_VAL;
  for (const auto& r : reps) lo = std::min({lo, r.min_real, r.min_real_perturbed});
  const double g2 = fitted_growth(reps, 0), g4 = fitted_growth(reps, 1);
  const double sob = std::abs(reps.front().sobolev - reps.back().sobolev);
  const bool ok = lo >= std::cos(0.5) - 5e-3 && std::abs(g2 / 0.5 - 1) <= 0.1 &&
                  std::abs(g4 / 0.25 - 1) <= 0.1 && sob < 1e-8;
  return {ok, fmt("min Re %.6f (bound %.6f); growth p=2 %.4f, p=4 %.4f; W^s spread %.3g", lo,
                  std::cos(0.5) - 5e-3, g2, g4, sob)};
}

Outcome logtail() {
  std::vector<double> mins, ratios;
  for (double v0 : {1e-3, 1e-4, 1e-5, 1e-6}) {
    const auto r = theorem3_logtail(v0);
    mins.push_back(r.min_value);
    ratios.push_back(r.ratio);
  }
  bool grows = mins.back() > mins.front();
  for (std::size_t k = 1; k < mins.size(); ++k) grows = grows && mins[k] >= 0.9 * mins[k - 1];
  const double lo = *std::min_element(ratios.begin(), ratios.end());
  const double hi = *std::max_element(ratios.begin(), ratios.end());
  return {grows && hi / lo <= 3.0,
          fmt("min %.4f %.4f %.4f %.4f; ratio band [%.4f, %.4f], width %.3f", mins[0], mins[1],
              mins[2], mins[3], lo, hi, hi / lo)};
}

Outcome determinism() {
  const std::pair<const char*, const char*> runs[] = {
      {"propagate", "{}"},
      {"verify-transfer", "{\"n_functions\": 2}"},
      {"strichartz", "{\"n_t\": 129, \"n_v\": 129}"},
      {"oscillatory", "{\"k_lo\": -1, \"k_hi\": 1, \"subintervals\": false}"},
      {"maximal", "{\"n_t\": 64}"},
      {"local-l1", "{\"n_functions\": 2, \"n_t\": 32}"},
      {"divergence", "{\"K\": 2}"},
      {"theorem3-bump", "{\"x0_values\": [16, 64], \"n_x\": 32, \"n_t\": 64}"},
      {"theorem3-logtail", "{}"},
  };
  int same = 0;
  std::string bad;
  for (const auto& [name, cfg] : runs) {
    std::string out[2];
    bool ok = true;
    for (auto& o : out) {
      hsp_run* run = nullptr;
      ok = ok && hsp_run_experiment(name, cfg, &run) == HSP_OK;
      if (run) o = hsp_run_json(run);
      hsp_run_free(run);
    }
    if (ok && out[0] == out[1]) ++same;
    else bad += std::string(" ") + name;
  }
  return {same == 9, fmt("%d of 9 subcommands bit-identical across two runs%s", same,
                         bad.empty() ? "" : (";" + bad).c_str())};
}

struct Criterion {
  int id;
  const char* name;
  double budget_s;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const Criterion criteria[] = {
      {1, "eigenflow exactness", 10, eigenflow},
      {2, "transfer formula", 30, transfer},
      {3, "Strichartz equality", 120, strichartz},
      {4, "symmetries", 10, symmetries},
      {5, "oscillatory bound", 60, oscillatory},
      {6, "local L1 maximal estimate", 300, local_maximal},
      {7, "divergence construction", 300, divergence},
      {8, "bump counterexample", 300, bump},
      {9, "log-tail counterexample", 300, logtail},
      {10, "determinism", 300, determinism},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool ok = o.passed && secs < c.budget_s;
    failed += !ok;
    std::printf("%s criterion %d (%s): %s [%.1f s, budget %.0f s]\n", ok ? "PASS" : "FAIL",
                c.id, c.name, o.detail.c_str(), secs, c.budget_s);
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
