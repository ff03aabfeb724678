#include <algorithm>
#include <cmath>
#include <cstdio>

#include "hsp/error.hpp"
#include "hsp/experiments.hpp"
#include "hsp/hermite_basis.hpp"
#include "runner.hpp"

namespace hsp::detail {

namespace {

MaximalOptions read_maximal(Params& p, int def_n_t) {
  MaximalOptions o;
  o.n_t = p.integer("n_t", def_n_t);
  o.t_min = p.number("t_min", 1e-4);
  p.expect(o.n_t >= 16 && o.n_t <= (1 << 16), "n_t", "must lie in [16, 65536]");
  p.expect(o.t_min > 0.0 && o.t_min < kPi / 16, "t_min", "must lie in (0, pi/16)");
  return o;
}

std::string tag(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", x);
  return buf;
}

double row_max(std::span<const double> v) { return *std::max_element(v.begin(), v.end()); }
double row_min(std::span<const double> v) { return *std::min_element(v.begin(), v.end()); }

}  // namespace

RunOutput run_maximal(Params& p) {
  const Grid grid = read_grid(p);
  const InitialSpec init = read_initial(p, grid, "gaussian");
  const MaximalOptions o = read_maximal(p, 512);
  const bool refine = p.flag("refinement", true);
  const double dominance_tol = p.number("dominance_tolerance", 1e-3);
  const double refine_tol = p.number("refinement_tolerance", 1e-4);
  p.finish();

  Report rep("maximal", p.resolved());
  const GridFunction f = build_initial(init, grid);
  const GridFunction m = maximal_function(f, o);
  double dom = HUGE_VAL, peak = 0.0, eig = 0.0;
  auto& tab = rep.table("maximal", {"x", "abs_f", "maximal"});
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double mf = m.values[k].real(), af = std::abs(f.values[k]);
    dom = std::min(dom, mf - af);
    peak = std::max(peak, mf);
    eig = std::max(eig, std::abs(mf - af));
    tab.rows.push_back({grid.point(k), af, mf});
  }
  auto& res = rep.results();
  res["max_maximal"] = peak;
  res["dominance_margin"] = dom;
  rep.check_at_least("dominance", dom, -dominance_tol);
  if (init.kind != "random") {
    res["eigenflow_error"] = eig;
    rep.check_at_most("eigenflow_modulus", eig, 1e-6);
  }
  if (refine) {
    const double r = maximal_refinement(f, o);
    res["refinement"] = r;
    rep.check_at_most("refinement", r, refine_tol);
  }
  return rep.finish();
}

RunOutput run_local_l1(Params& p) {
  const Grid grid = read_grid(p);
  const int n_band = p.integer("n_band", 12);
  const int order_cap = max_supported_order(grid.refined());
  p.expect(n_band >= 0 && n_band <= std::min(order_cap, max_supported_order(grid)),
           "n_band", "exceeds the orders supported by the grid");
  const int count = p.integer("n_functions", 100);
  p.expect(count >= 1 && count <= 10000, "n_functions", "must lie in [1, 10000]");
  const std::uint64_t seed = read_seed(p);
  const double lo = p.number("lo", -1.0);
  const double hi = p.number("hi", 1.0);
  p.expect(lo < hi, "lo", "must be below hi");
  p.expect(lo > -grid.half_extent() && hi < grid.half_extent(), "hi",
           "the interval must lie inside the grid");
  LocalL1Options o;
  o.maximal = read_maximal(p, 256);
  o.x_spacing = p.number("x_spacing", 0.01);
  p.expect(o.x_spacing > 0.0 && o.x_spacing <= (hi - lo) / 8, "x_spacing",
           "must lie in (0, (hi - lo)/8]");
  const double stability = p.number("stability_tolerance", 0.05);
  p.finish();

  Report rep("local-l1", p.resolved());
  const Interval I{lo, hi};
  const Grid fine = grid.refined();
  LocalL1Options o2 = o;
  o2.maximal.n_t *= 2;
  o2.x_spacing /= 2;

  auto& res = rep.results();
  const double gauss = local_l1_ratio(sample_hermite(0, grid), I, o);
  res["gaussian_ratio"] = gauss;
  if (lo == -1.0 && hi == 1.0) {
    // int_{-1}^{1} h_0 / ||h_0||_{W^{1/4}}, both by independent quadrature
    const double exact = 1.28536267443495 / 1.04438049044726;
    res["gaussian_expected"] = exact;
    rep.check_at_most("gaussian_ratio", std::abs(gauss - exact), 1e-4);
  }

  auto& tab = rep.table("ratios", {"seed", "ratio", "ratio_doubled"});
  double c1 = 0.0, c2 = 0.0;
  for (int j = 0; j < count; ++j) {
    const std::uint64_t s = seed + static_cast<std::uint64_t>(j);
    const double r1 = local_l1_ratio(random_unit_w14(n_band, s, grid), I, o);
    const double r2 = local_l1_ratio(random_unit_w14(n_band, s, fine), I, o2);
    c1 = std::max(c1, r1);
    c2 = std::max(c2, r2);
    tab.rows.push_back({static_cast<double>(s), r1, r2});
  }
  res["ceiling"] = c1;
  res["ceiling_doubled"] = c2;
  const double drift = std::abs(c2 / c1 - 1.0);
  res["ceiling_drift"] = drift;
  rep.check_true("ceiling_finite", std::isfinite(c1) && std::isfinite(c2));
  rep.check_at_most("ceiling_stability", drift, stability);
  return rep.finish();
}

RunOutput run_divergence(Params& p) {
  const int K = p.integer("K", 5);
  p.expect(K >= 2 && K <= 8, "K", "must lie in [2, 8]");
  DivergenceOptions o;
  o.t1 = p.number("t1", o.t1);
  p.expect(o.t1 > 0.0 && o.t1 <= 0.1, "t1", "must lie in (0, 0.1]");
  o.max_halvings = p.integer("max_halvings", o.max_halvings);
  p.expect(o.max_halvings >= 1 && o.max_halvings <= 200, "max_halvings",
           "must lie in [1, 200]");
  o.n_x = p.integer("n_x", o.n_x);
  p.expect(o.n_x >= 2 && o.n_x <= 256, "n_x", "must lie in [2, 256]");
  o.n_v = p.integer("n_v", o.n_v);
  p.expect(o.n_v >= 1 && o.n_v <= 64, "n_v", "must lie in [1, 64]");
  o.sobolev_s = p.numbers("sobolev_s", o.sobolev_s);
  for (double s : o.sobolev_s)
    p.expect(s >= 0.0 && s < 0.25, "sobolev_s", "entries must lie in [0, 1/4)");
  const auto slope_s = p.numbers("slope_s", {0.1, 0.2, 0.25});
  for (double s : slope_s)
    p.expect(s >= 0.0 && s <= 1.0, "slope_s", "entries must lie in [0, 1]");
  const double t_scan = p.number("lower_bound_t", 0.05);
  p.expect(t_scan > 0.0 && t_scan < 1.0, "lower_bound_t", "must lie in (0, 1)");
  const double slope_tol = p.number("slope_tolerance", 0.05);
  const double dev_tol = p.number("deviation_tolerance", 1e-4);
  p.finish();

  Report rep("divergence", p.resolved());
  auto& res = rep.results();
  const Profile base = default_base_profile();

  const double ts[] = {0.02, 0.01, 0.005, 0.0025};
  Json slopes = Json::array();
  for (double s : slope_s) {
    const double k = ft_sobolev_slope(base, s, ts);
    slopes.push_back({{"s", s}, {"slope", k}, {"expected", 0.5 - 2 * s}});
    rep.check_at_most("sobolev_slope_s" + tag(s),
                      std::abs(k - (0.5 - 2 * s)), slope_tol);
  }
  res["sobolev_slopes"] = slopes;

  const DivergenceReport d = divergence_demo(base, K, o);
  res["phi_interval"] = {d.scan.I.lo, d.scan.I.hi};
  res["phi_interval_prime"] = {d.scan.I_prime.lo, d.scan.I_prime.hi};
  res["phi_max_modulus"] = d.scan.max_modulus;
  res["phi_min_on_interval"] = d.scan.min_on_I;
  res["c"] = d.scan.c;
  auto& scan = rep.table("phi_scan", {"z", "modulus"});
  for (std::size_t k = 0; k < d.scan.z.size(); ++k)
    scan.rows.push_back({d.scan.z[k], d.scan.modulus[k]});

  const LowerBoundScan lb = lower_bound_scan(base, t_scan, d.scan.I_prime);
  res["lower_bound_min"] = lb.min_value;
  res["lower_bound_deviation"] = lb.max_deviation;
  rep.check_at_most("closed_form_deviation", lb.max_deviation, dev_tol);
  rep.check_at_least("lower_bound_positive", lb.min_value, 0.0);
  auto& lbt = rep.table("lower_bound", {"x", "direct", "closed_form"});
  for (std::size_t k = 0; k < lb.x.size(); ++k)
    lbt.rows.push_back({lb.x[k], lb.direct[k], lb.closed_form[k]});

  auto& sched = rep.table("schedule", {"k", "t", "halvings", "min_observed", "predicted",
                                       "cond4_max", "cond5_bound"});
  for (const auto& r : d.rows)
    sched.rows.push_back({double(r.k), r.t, double(r.halvings), r.min_observed,
                          r.predicted, r.cond4_max, r.cond5_bound});
  res["all_exceed"] = d.all_exceed;
  res["monotone"] = d.monotone;
  Json sob = Json::array();
  for (std::size_t j = 0; j < d.sobolev_s.size(); ++j)
    sob.push_back({{"s", d.sobolev_s[j]},
                   {"partial_sums", d.sobolev_partial[j]},
                   {"schedule_sum", d.schedule_sum[j]},
                   {"tail_ratio", number_json(d.sobolev_tail_ratio[j])}});
  res["sobolev"] = sob;
  rep.check_true("exceeds_prediction", d.all_exceed);
  rep.check_true("monotone_growth", d.monotone);
  return rep.finish();
}

RunOutput run_theorem3_bump(Params& p) {
  const auto x0s = p.numbers("x0_values", {16.0, 64.0, 256.0, 1024.0});
  for (double x0 : x0s) p.expect(x0 > 2.0 && x0 <= 1e5, "x0_values", "entries must lie in (2, 1e5]");
  BumpOptions o;
  o.p_values = p.numbers("p_values", o.p_values);
  for (double q : o.p_values) p.expect(q >= 1.0, "p_values", "entries must be at least 1");
  o.n_x = p.integer("n_x", o.n_x);
  p.expect(o.n_x >= 8 && o.n_x <= 8192, "n_x", "must lie in [8, 8192]");
  o.maximal = read_maximal(p, o.maximal.n_t);
  o.sobolev_s = p.number("sobolev_s", o.sobolev_s);
  p.expect(o.sobolev_s >= 0.0 && o.sobolev_s <= 2.0, "sobolev_s", "must lie in [0, 2]");
  const double lower_tol = p.number("lower_tolerance", 5e-3);
  const double growth_tol = p.number("growth_tolerance", 0.1);
  const double sob_tol = p.number("sobolev_tolerance", 1e-8);
  p.finish();

  Report rep("theorem3-bump", p.resolved());
  const Profile tau = default_tau();
  std::vector<BumpReport> reports;
  for (double x0 : x0s) reports.push_back(theorem3_bump(x0, tau, o));

  std::vector<std::string> cols{"x0", "min_real", "min_real_perturbed"};
  for (double q : o.p_values) cols.push_back("norm_p" + tag(q));
  cols.push_back("sobolev");
  auto& tab = rep.table("bump", cols);
  auto& mt = rep.table("maximal", {"x0", "x", "maximal"});
  double lo = HUGE_VAL, lo_pert = HUGE_VAL, sob_lo = HUGE_VAL, sob_hi = 0.0;
  for (const auto& r : reports) {
    std::vector<double> row{r.x0, r.min_real, r.min_real_perturbed};
    row.insert(row.end(), r.norms.begin(), r.norms.end());
    row.push_back(r.sobolev);
    tab.rows.push_back(std::move(row));
    for (std::size_t k = 0; k < r.x.size(); ++k) mt.rows.push_back({r.x0, r.x[k], r.maximal[k]});
    lo = std::min(lo, r.min_real);
    lo_pert = std::min(lo_pert, r.min_real_perturbed);
    sob_lo = std::min(sob_lo, r.sobolev);
    sob_hi = std::max(sob_hi, r.sobolev);
  }
  auto& res = rep.results();
  const double target = std::cos(0.5) * profile_integral(tau) - lower_tol;
  res["min_real"] = lo;
  res["min_real_perturbed"] = lo_pert;
  res["sobolev_spread"] = sob_hi - sob_lo;
  rep.check_at_least("interval_lower_bound", lo, target);
  rep.check_at_least("perturbed_lower_bound", lo_pert, target);
  rep.check_at_most("sobolev_independent_of_x0", sob_hi - sob_lo, sob_tol);
  if (reports.size() >= 2) {
    Json growth = Json::array();
    for (std::size_t j = 0; j < o.p_values.size(); ++j) {
      const double g = fitted_growth(reports, j);
      const double expect = 1.0 / o.p_values[j];
      growth.push_back({{"p", o.p_values[j]}, {"slope", g}, {"expected", expect}});
      rep.check_at_most("growth_p" + tag(o.p_values[j]),
                        std::abs(g / expect - 1.0), growth_tol);
    }
    res["growth"] = growth;
  }
  return rep.finish();
}

RunOutput run_theorem3_logtail(Params& p) {
  const auto v0s = p.numbers("v0_values", {1e-3, 1e-4, 1e-5, 1e-6});
  for (std::size_t k = 0; k < v0s.size(); ++k) {
    p.expect(v0s[k] > 0.0 && v0s[k] < 1e-2, "v0_values", "entries must lie in (0, 1e-2)");
    if (k) p.expect(v0s[k] < v0s[k - 1], "v0_values", "entries must be decreasing");
  }
  const double x0 = p.number("x0", 4.0);
  p.expect(x0 > 0.0 && x0 <= 64.0, "x0", "must lie in (0, 64]");
  const int n_x = p.integer("n_x", 32);
  p.expect(n_x >= 2 && n_x <= 1024, "n_x", "must lie in [2, 1024]");
  const double jitter = p.number("jitter", 0.1);
  const double band = p.number("band_factor", 3.0);
  const double sob_tol = p.number("sobolev_tolerance", 0.01);
  p.finish();

  Report rep("theorem3-logtail", p.resolved());
  auto& tab = rep.table("logtail", {"v0", "interval_lo", "interval_hi", "min_value",
                                    "ratio", "sobolev_half", "sobolev_half_doubled"});
  std::vector<double> mins, ratios;
  double sob_drift = 0.0;
  for (double v0 : v0s) {
    const auto r = theorem3_logtail(v0, x0, n_x);
    tab.rows.push_back({v0, r.I.lo, r.I.hi, r.min_value, r.ratio, r.sobolev_half,
                        r.sobolev_half_doubled});
    mins.push_back(r.min_value);
    ratios.push_back(r.ratio);
    sob_drift = std::max(sob_drift, std::abs(r.sobolev_half_doubled / r.sobolev_half - 1.0));
  }
  double worst_drop = 0.0;
  for (std::size_t k = 1; k < mins.size(); ++k)
    worst_drop = std::max(worst_drop, 1.0 - mins[k] / mins[k - 1]);
  const double width = row_max(ratios) / row_min(ratios);
  auto& res = rep.results();
  res["ratio_band"] = {row_min(ratios), row_max(ratios)};
  res["band_width"] = width;
  res["largest_relative_drop"] = worst_drop;
  res["sobolev_drift"] = sob_drift;
  rep.check_at_most("nondecreasing_min", worst_drop, jitter);
  rep.check_at_most("ratio_band", width, band);
  rep.check_at_most("sobolev_stable", sob_drift, sob_tol);
  return rep.finish();
}

}  // namespace hsp::detail
