#include <algorithm>
#include <cmath>
#include <cstdio>

#include "hsp/error.hpp"
#include "hsp/hermite_basis.hpp"
#include "hsp/mixed_norms.hpp"
#include "hsp/oscillatory.hpp"
#include "hsp/propagators.hpp"
#include "runner.hpp"

namespace hsp::detail {

namespace {

double sup_distance(std::span<const cplx> a, std::span<const cplx> b) {
  double d = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) d = std::max(d, std::abs(a[k] - b[k]));
  return d;
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", x);
  return buf;
}

double l2(const GridFunction& f) { return lp_norm(f, 2.0); }

}  // namespace

Grid read_grid(Params& p) {
  const double half = p.number("half_extent", 12.0);
  const int n = p.integer("n_points", 2048);
  p.expect(half > 0.0, "half_extent", "must be positive");
  p.expect(n >= 16 && n <= (1 << 20), "n_points", "must lie in [16, 2^20]");
  return Grid(half, static_cast<std::size_t>(n));
}

std::uint64_t read_seed(Params& p) {
  const int seed = p.integer("seed", 1);
  p.expect(seed >= 0, "seed", "must be nonnegative");
  return static_cast<std::uint64_t>(seed);
}

InitialSpec read_initial(Params& p, const Grid& grid, const std::string& def) {
  InitialSpec s;
  s.kind = p.choice("initial", def, {"gaussian", "hermite", "random"});
  const int order_cap = max_supported_order(grid);
  if (s.kind == "hermite") {
    s.n = p.integer("n", 0);
    p.expect(s.n >= 0 && s.n <= order_cap, "n",
             "must lie in [0, " + std::to_string(order_cap) + "] on this grid");
  }
  if (s.kind == "random") {
    s.n_band = p.integer("n_band", 12);
    p.expect(s.n_band >= 0 && s.n_band <= order_cap, "n_band",
             "must lie in [0, " + std::to_string(order_cap) + "] on this grid");
    s.seed = read_seed(p);
  }
  return s;
}

GridFunction build_initial(const InitialSpec& s, const Grid& grid) {
  if (s.kind == "random") return synthesize(random_coefficients(s.n_band, s.seed), grid);
  return sample_hermite(s.kind == "hermite" ? s.n : 0, grid);
}

RunOutput run_propagate(Params& p) {
  const Grid grid = read_grid(p);
  const InitialSpec init = read_initial(p, grid, "gaussian");
  const std::string method = p.choice("method", "mehler", {"mehler", "spectral", "transfer"});
  const double t = p.number("t", 0.3);
  const double tol = p.number("tolerance", 1e-6);
  if (method == "transfer")
    p.expect(t > 0.0 && t < kPi / 4, "t", "the transfer method needs 0 < t < pi/4");
  p.finish();

  Report rep("propagate", p.resolved());
  const GridFunction f = build_initial(init, grid);
  GridFunction u(grid);
  if (method == "mehler") {
    u = propagate_mehler(f, t);
  } else if (method == "spectral") {
    u = synthesize(propagate_spectral(analyze(f, max_supported_order(grid)), t), grid);
  } else {
    u = hermite_via_free(f, std::tan(2.0 * t));
  }
  const double n0 = l2(f), n1 = l2(u);
  rep.results()["l2_initial"] = n0;
  rep.results()["l2_final"] = n1;
  rep.results()["norm_drift"] = std::abs(n1 - n0);
  rep.check_at_most("norm_conservation", std::abs(n1 - n0), tol * std::max(1.0, n0));
  if (init.kind != "random") {
    const cplx phase = std::polar(1.0, -(2.0 * init.n + 1.0) * t);
    std::vector<cplx> exact(f.values);
    for (auto& z : exact) z *= phase;
    const double err = sup_distance(u.values, exact);
    rep.results()["eigenflow_error"] = err;
    rep.check_at_most("eigenflow", err, tol);
  }
  auto& tab = rep.table("solution", {"x", "re", "im", "abs"});
  for (std::size_t k = 0; k < grid.size(); ++k)
    tab.rows.push_back({grid.point(k), u.values[k].real(), u.values[k].imag(),
                        std::abs(u.values[k])});
  return rep.finish();
}

RunOutput run_verify_transfer(Params& p) {
  const Grid grid = read_grid(p);
  const int n_band = p.integer("n_band", 12);
  const int order_cap = max_supported_order(grid);
  p.expect(n_band >= 0 && n_band <= order_cap, "n_band",
           "must lie in [0, " + std::to_string(order_cap) + "] on this grid");
  const int count = p.integer("n_functions", 20);
  p.expect(count >= 1 && count <= 1000, "n_functions", "must lie in [1, 1000]");
  const std::uint64_t seed = read_seed(p);
  const auto vs = p.numbers("v_values", {0.1, 0.5, 1.0, 3.0});
  for (double v : vs) p.expect(v > 0.0, "v_values", "entries must be positive");
  const double tol = p.number("tolerance", 1e-6);
  p.finish();

  Report rep("verify-transfer", p.resolved());
  auto& tab = rep.table("residuals", {"seed", "v", "residual", "relative"});
  double worst = 0.0, worst_rel = 0.0;
  for (int j = 0; j < count; ++j) {
    const std::uint64_t s = seed + static_cast<std::uint64_t>(j);
    const GridFunction f = synthesize(random_coefficients(n_band, s), grid);
    const FreeEvolution evo(f);
    const double scale = f.max_abs();
    for (double v : vs) {
      const auto a = hermite_via_free(evo, v);
      const auto b = propagate_mehler(f, std::atan(v) / 2.0);
      const double r = sup_distance(a.values, b.values);
      worst = std::max(worst, r);
      worst_rel = std::max(worst_rel, r / scale);
      tab.rows.push_back({static_cast<double>(s), v, r, r / scale});
    }
  }
  rep.results()["max_residual"] = worst;
  rep.results()["max_relative_residual"] = worst_rel;
  rep.check_at_most("transfer_residual", worst, tol);
  return rep.finish();
}

RunOutput run_strichartz(Params& p) {
  const Grid grid = read_grid(p);
  const InitialSpec init = read_initial(p, grid, "gaussian");
  const double pe = p.extended("p", 6.0);
  const double qe = p.extended("q", 6.0);
  p.expect(pe >= 2.0, "p", "must be at least 2");
  p.expect(qe >= 4.0, "q", "must be at least 4");
  if (!is_admissible(pe, qe))
    fail(ErrorKind::precondition,
         "config 'p', 'q': (" + fmt(pe) + ", " + fmt(qe) +
             ") violates the admissibility condition 1/p + 2/q = 1/2");
  StrichartzOptions o;
  o.n_t = p.integer("n_t", o.n_t);
  o.n_v = p.integer("n_v", o.n_v);
  o.v_max = p.number("v_max", o.v_max);
  o.x_resolution = p.number("x_resolution", o.x_resolution);
  p.expect(o.n_t >= 3 && o.n_t % 2 == 1, "n_t", "must be odd and at least 3");
  p.expect(o.n_v >= 3 && o.n_v % 2 == 1, "n_v", "must be odd and at least 3");
  p.expect(o.v_max >= 10.0, "v_max", "must be at least 10");
  p.expect(o.x_resolution >= 0.25, "x_resolution", "must be at least 0.25");
  const double tol = p.number("tolerance", 0.01);
  p.finish();

  Report rep("strichartz", p.resolved());
  const GridFunction f = build_initial(init, grid);
  const auto r = strichartz_check(f, pe, qe, o);
  auto& res = rep.results();
  res["lhs"] = r.lhs;
  res["rhs"] = r.rhs;
  res["lhs_power"] = r.lhs_power;
  res["rhs_power"] = r.rhs_power;
  res["tail"] = r.tail;
  res["rel_err"] = r.rel_err;
  rep.check_at_most("rel_err", r.rel_err, tol);
  if (init.kind == "gaussian" && pe == 6.0 && qe == 6.0) {
    const double exact = 1.0 / (4.0 * std::sqrt(3.0));
    res["expected_power"] = exact;
    rep.check_at_most("lhs_power_exact", std::abs(r.lhs_power / exact - 1.0), tol);
    rep.check_at_most("rhs_power_exact", std::abs(r.rhs_power / exact - 1.0), tol);
  }
  return rep.finish();
}

RunOutput run_oscillatory(Params& p) {
  const std::string sweep = p.choice("sweep", "default", {"default", "none"});
  const double a = p.number("a", 0.0);
  const double b = p.number("b", 1.0);
  const double lo = p.extended("lo", -HUGE_VAL);
  const double hi = p.extended("hi", HUGE_VAL);
  p.expect(lo <= hi, "lo", "must not exceed hi");
  const int k_lo = p.integer("k_lo", -2);
  const int k_hi = p.integer("k_hi", 4);
  p.expect(k_lo <= k_hi && k_lo >= -8 && k_hi <= 8, "k_lo",
           "need -8 <= k_lo <= k_hi <= 8");
  const int max_ext = p.integer("max_extensions", 4);
  p.expect(max_ext >= 0 && max_ext <= 8, "max_extensions", "must lie in [0, 8]");
  const double ceiling = p.number("ceiling", 8.0);
  const bool subintervals = p.flag("subintervals", true);
  if (sweep == "none") p.expect(a != 0.0 || b != 0.0, "a", "a and b must not both vanish");
  p.finish();

  Report rep("oscillatory", p.resolved());
  auto& res = rep.results();
  const double gamma_quarter = std::tgamma(0.25);
  const double spot_quartic = std::abs(osc_integral({0.0, 1.0, {}}));
  const double spot_gauss = osc_integral({1.0, 0.0, {}}).real();
  res["spot_quartic"] = spot_quartic;
  res["spot_quadratic"] = spot_gauss;
  rep.check_at_most("spot_quartic", std::abs(spot_quartic - gamma_quarter), 1e-4);
  rep.check_at_most("spot_quadratic", std::abs(spot_gauss - std::sqrt(2.0 * kPi)), 1e-4);

  const Interval J{lo, hi};
  if (sweep == "none") {
    const cplx v = osc_integral({a, b, J});
    res["value_re"] = v.real();
    res["value_im"] = v.imag();
    res["bound"] = number_json(osc_bound(a, b));
    res["ratio"] = std::abs(v) / osc_bound(a, b);
    rep.check_at_most("ratio_ceiling", std::abs(v) / osc_bound(a, b), ceiling);
    return rep.finish();
  }

  const auto s = bound_sweep_decades(k_lo, k_hi, J, max_ext);
  res["max_ratio"] = s.max_ratio;
  res["argmax_a"] = s.argmax.a;
  res["argmax_b"] = s.argmax.b;
  res["interior"] = s.interior;
  res["extensions"] = s.extensions;
  res["cells"] = s.cells.size();
  auto& tab = rep.table("sweep", {"a", "b", "re", "im", "abs", "bound", "ratio"});
  for (const auto& c : s.cells)
    tab.rows.push_back({c.a, c.b, c.value.real(), c.value.imag(), std::abs(c.value),
                        c.bound, c.ratio});
  rep.check_true("max_ratio_finite", std::isfinite(s.max_ratio));
  rep.check_at_most("max_ratio_ceiling", s.max_ratio, ceiling);
  rep.check_true("max_interior", s.interior);

  if (subintervals) {
    const double ends[] = {-HUGE_VAL, -2.0, -1.0, 0.0, 0.5, 2.0, HUGE_VAL};
    auto& sub = rep.table("subintervals", {"a", "b", "max_ratio"});
    double worst = 0.0;
    for (double sa : signed_decades(-1, 2)) {
      for (double sb : signed_decades(-1, 2)) {
        const double r = max_subinterval_ratio(sa, sb, ends);
        worst = std::max(worst, r);
        sub.rows.push_back({sa, sb, r});
      }
    }
    res["max_subinterval_ratio"] = worst;
    rep.check_at_most("subinterval_ceiling", worst, ceiling);
  }
  return rep.finish();
}

}  // namespace hsp::detail
