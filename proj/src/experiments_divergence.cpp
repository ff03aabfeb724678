#include <algorithm>
#include <cmath>
#include <string>

#include "hsp/error.hpp"
#include "hsp/experiments.hpp"
#include "quadrature.hpp"

namespace hsp {

namespace {

constexpr double kDomainMargin = 1e-9;
constexpr double kScanEpsilon = 0.1;
constexpr double kShrink = 1e-4;

double least_squares_slope(std::span<const double> x, std::span<const double> y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    sx += x[k];
    sy += y[k];
    sxx += x[k] * x[k];
    sxy += x[k] * y[k];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace

Grid ft_grid(const Profile& base, double t, double refine) {
  require(t > 0.0 && t < 1.0, "ft_grid: t must lie in (0, 1)");
  require(refine > 0.0, "ft_grid: refine must be positive");
  const double half = 1.25 * t * std::max(std::abs(base.lo), std::abs(base.hi));
  const double h = kPi * t * t / 16.0 / refine;
  const auto n = static_cast<std::size_t>(std::ceil(2.0 * half / h)) + 1;
  return Grid(half, n);
}

GridFunction ft_family(const Profile& base, double t, const Grid& grid) {
  require(t > 0.0 && t < 1.0, "ft_family: t must lie in (0, 1), got " +
                                  std::to_string(t));
  require(base.hi <= 0.0, "ft_family: base profile must be supported in (-inf, 0]");
  require(t * base.lo >= -grid.half_extent(),
          "ft_family: support of f_t exceeds the grid");
  if (grid.spacing() >= kPi * t * t / 4.0)
    fail(ErrorKind::resolution,
         "ft_family: spacing " + std::to_string(grid.spacing()) +
             " does not resolve the modulation exp(2iy/t^2) (needs < pi t^2/4 = " +
             std::to_string(kPi * t * t / 4.0) + ")");
  GridFunction f(grid);
  const double inv_t2 = 1.0 / (t * t);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double y = grid.point(k);
    const double a = base(y / t);
    if (a != 0.0) f.values[k] = a * std::polar(1.0, 2.0 * y * inv_t2);
  }
  return f;
}

double selector_v(double x, double t) {
  require(std::isfinite(x) && std::isfinite(t), "selector_v: arguments must be finite");
  const double q = std::abs(x) * t * t;
  if (q > 2.0 - kDomainMargin)
    fail(ErrorKind::domain, "selector_v: |x| t^2 = " + std::to_string(q) +
                                " must stay below 2");
  return x * t * t / std::sqrt(4.0 - x * x * t * t * t * t);
}

cplx phi_map(const Profile& base, cplx z) {
  if (z == cplx(0.0)) fail(ErrorKind::precondition, "phi_map: z must be nonzero");
  const cplx w = 1.0 / z;
  const double y_max = std::max(std::abs(base.lo), std::abs(base.hi));
  const double rate = 2.0 * y_max * std::abs(w);
  const double panels = std::max(64.0, std::ceil(rate * (base.hi - base.lo) / 2.0));
  if (panels > 1e6)
    fail(ErrorKind::resolution, "phi_map: |z| = " + std::to_string(std::abs(z)) +
                                    " makes the phase exp(iy^2/z) unresolvable");
  const auto n = static_cast<int>(panels);
  std::vector<double> breaks(n + 1);
  for (int k = 0; k <= n; ++k) breaks[k] = base.lo + (base.hi - base.lo) * k / n;
  return detail::integrate_panels<cplx>(
      [&](double y) { return base(y) * std::exp(cplx(0.0, 1.0) * y * y * w); },
      breaks, detail::gauss_legendre(20));
}

PhiScan scan_phi(const Profile& base, int n_samples) {
  require(n_samples >= 8, "scan_phi: need at least 8 samples");
  PhiScan s;
  s.z.resize(n_samples);
  s.modulus.resize(n_samples);
  for (int k = 0; k < n_samples; ++k) {
    s.z[k] = 0.5 + 0.5 * (k + 0.5) / n_samples;
    s.modulus[k] = std::abs(phi_map(base, s.z[k]));
  }
  s.max_modulus = *std::max_element(s.modulus.begin(), s.modulus.end());
  if (s.max_modulus == 0.0)
    fail(ErrorKind::search_failure, "scan_phi: Phi vanishes on (1/2, 1)");
  const double level = 0.5 * s.max_modulus;
  bool found = false;
  for (int m = 0; !found && (1 << m) <= n_samples; ++m) {
    const int cells = 1 << m;
    for (int j = 0; j < cells; ++j) {
      const double lo = 0.5 + 0.5 * j / cells, hi = 0.5 + 0.5 * (j + 1) / cells;
      double mn = kInf;
      for (int k = 0; k < n_samples; ++k)
        if (s.z[k] > lo && s.z[k] < hi) mn = std::min(mn, s.modulus[k]);
      if (mn > level && mn > s.min_on_I) {
        s.I = {lo, hi};
        s.min_on_I = mn;
        found = true;
      }
    }
  }
  if (!found)
    fail(ErrorKind::search_failure,
         "scan_phi: no dyadic subinterval of (1/2, 1) keeps |Phi| above half its maximum");
  s.epsilon = kScanEpsilon;
  s.I_prime = {s.I.lo + kShrink, s.I.hi - kShrink};
  const double e4 = std::pow(s.epsilon, 4);
  s.c = 0.99 / std::sqrt(kPi) * std::pow(1.0 - e4 / 4.0, 0.25) * s.min_on_I;
  return s;
}

LowerBoundScan lower_bound_scan(const Profile& base, double t,
                                const Interval& Ip, int n_x) {
  require(Ip.lo > 0.5 && Ip.hi < 1.0 && Ip.lo < Ip.hi,
          "lower_bound_scan: I' must be a subinterval of (1/2, 1)");
  require(n_x >= 2, "lower_bound_scan: n_x must be at least 2");
  const Grid g = ft_grid(base, t);
  const FreeEvolution evo(ft_family(base, t, g));
  LowerBoundScan r;
  r.min_value = kInf;
  for (int j = 0; j < n_x; ++j) {
    const double x = Ip.lo + (Ip.hi - Ip.lo) * j / (n_x - 1);
    const double v = selector_v(x, t);
    const double X = x * std::sqrt(1.0 + v * v);
    const double pts[] = {X};
    const double direct = std::abs(evo.evaluate(0.5 * v, pts)[0]);
    const double q = x * x * t * t * t * t / 4.0;
    const double z = x / std::sqrt(1.0 - q);
    const double closed = std::pow(1.0 + v * v, -0.25) / std::sqrt(kPi * x) *
                          std::abs(phi_map(base, z));
    r.x.push_back(x);
    r.direct.push_back(direct);
    r.closed_form.push_back(closed);
    r.min_value = std::min(r.min_value, direct);
    r.max_deviation = std::max(r.max_deviation, std::abs(direct - closed));
  }
  return r;
}

namespace {

constexpr double kMaxPanels = 2e5;

struct FreeTerm {
  cplx value = 0.0;
  double bound = 0.0;  // |value| when exact, else an upper bound
  bool exact = true;
};

// e^{isLap} f_t (X) = (4 pi i s)^{-1/2} t int exp(i psi(w)) f(w) dw with
// psi(w) = (X - t w)^2 / 4s + 2w/t.  When the phase is too steep for
// quadrature, one integration by parts bounds the integral by the total
// variation of f / psi'.
FreeTerm ft_free_term(const Profile& base, double t, double s, double X) {
  require(s != 0.0 && std::isfinite(s), "ft_free_value: s must be finite and nonzero");
  auto dpsi = [&](double w) { return -t * (X - t * w) / (2.0 * s) + 2.0 / t; };
  const double d_lo = dpsi(base.lo), d_hi = dpsi(base.hi);
  const double rate = std::max(std::abs(d_lo), std::abs(d_hi));
  const double panels = std::max(32.0, std::ceil(rate * (base.hi - base.lo) / 3.0));
  const double pref_mod = std::pow(4.0 * kPi * std::abs(s), -0.5) * t;
  FreeTerm r;
  if (panels <= kMaxPanels) {
    const auto n = static_cast<int>(panels);
    std::vector<double> breaks(n + 1);
    for (int k = 0; k <= n; ++k) breaks[k] = base.lo + (base.hi - base.lo) * k / n;
    const double inv4s = 1.0 / (4.0 * s);
    const cplx body = detail::integrate_panels<cplx>(
        [&](double w) {
          const double a = base(w);
          if (a == 0.0) return cplx(0.0);
          const double d = X - t * w;
          return a * std::polar(1.0, d * d * inv4s + 2.0 * w / t);
        },
        breaks, detail::gauss_legendre(20));
    r.value = std::polar(pref_mod, s > 0.0 ? -kPi / 4 : kPi / 4) * body;
    r.bound = std::abs(r.value);
    return r;
  }
  if (!(d_lo * d_hi > 0.0))
    fail(ErrorKind::resolution,
         "ft_free_value: stationary kernel phase too steep for quadrature (rate " +
             std::to_string(rate) + ")");
  constexpr int kSamples = 4096;
  double tv = 0.0, prev = 0.0;
  for (int k = 0; k <= kSamples; ++k) {
    const double w = base.lo + (base.hi - base.lo) * k / kSamples;
    const double g = base(w) / dpsi(w);
    if (k > 0) tv += std::abs(g - prev);
    prev = g;
  }
  r.exact = false;
  r.bound = pref_mod * tv;
  return r;
}

}  // namespace

cplx ft_free_value(const Profile& base, double t, double s, double X) {
  const auto r = ft_free_term(base, t, s, X);
  if (!r.exact)
    fail(ErrorKind::resolution,
         "ft_free_value: kernel phase too steep for quadrature; only a bound is available");
  return r.value;
}

DivergenceReport divergence_demo(const Profile& base, int K,
                                 const DivergenceOptions& o) {
  require(K >= 2, "divergence_demo: depth K must be at least 2, got " +
                      std::to_string(K));
  require(o.n_x >= 2 && o.n_v >= 2, "divergence_demo: n_x and n_v must be >= 2");
  DivergenceReport rep;
  rep.scan = scan_phi(base);
  const auto& sc = rep.scan;
  require(o.t1 > 0.0 && o.t1 < sc.epsilon,
          "divergence_demo: t1 must lie in (0, epsilon = " +
              std::to_string(sc.epsilon) + ")");
  const double l1 = profile_integral(
      Profile{[&](double y) { return std::abs(base(y)); }, base.lo, base.hi, ""});

  std::vector<double> xs(o.n_x);
  for (int i = 0; i < o.n_x; ++i)
    xs[i] = sc.I_prime.lo + (sc.I_prime.hi - sc.I_prime.lo) * i / (o.n_x - 1);
  auto v_samples = [&](double vc) {
    std::vector<double> v(o.n_v);
    const double lo = 0.5 * vc * (1.0 + 1e-6), hi = 2.0 * vc * (1.0 - 1e-6);
    for (int i = 0; i < o.n_v; ++i)
      v[i] = lo * std::pow(hi / lo, static_cast<double>(i) / (o.n_v - 1));
    return v;
  };

  std::vector<double> t{o.t1};
  rep.rows.push_back({1, o.t1, 0, 0.0, 0.0, 0.0, 0.0});
  for (int J = 2; J <= K; ++J) {
    double tJ = t.back();
    bool ok = false;
    int halvings = 0;
    double c4 = 0.0, c5 = 0.0;
    while (!ok) {
      if (halvings == o.max_halvings)
        fail(ErrorKind::search_failure,
             "divergence_demo: no t_" + std::to_string(J) + " found after " +
                 std::to_string(halvings) + " halvings (last t = " +
                 std::to_string(tJ) + ", condition (4) max " + std::to_string(c4) +
                 ", kernel bound " + std::to_string(c5) + ")");
      tJ *= 0.5;
      ++halvings;
      // (5): kernel sup times L1 norm, smallest v over all earlier k
      c5 = 0.0;
      for (double tk : t) {
        const double vmin = 0.5 * selector_v(xs.front(), tk);
        c5 = std::max(c5, tJ * l1 / std::sqrt(2.0 * kPi * vmin));
      }
      if (c5 >= std::ldexp(1.0, -J)) continue;
      // (4): earlier profiles stay small near v(x, t_J)
      c4 = 0.0;
      bool pass = true;
      for (double x : xs) {
        for (double v : v_samples(selector_v(x, tJ))) {
          const double X = x * std::sqrt(1.0 + v * v);
          for (std::size_t j = 0; j < t.size() && pass; ++j) {
            const double val = ft_free_term(base, t[j], 0.5 * v, X).bound;
            c4 = std::max(c4, val * std::ldexp(1.0, static_cast<int>(j) + 1));
            if (val >= std::ldexp(1.0, -static_cast<int>(j) - 1)) pass = false;
          }
        }
        if (!pass) break;
      }
      ok = pass;
    }
    t.push_back(tJ);
    rep.rows.push_back({J, tJ, halvings, 0.0, 0.0, c4, c5});
  }

  // observed values of L_{iv/2} phi_K near v(x, t_k)
  rep.all_exceed = true;
  for (int k = 1; k <= K; ++k) {
    auto& row = rep.rows[k - 1];
    double tail = 0.0;
    for (int j = 1; j <= K; ++j)
      if (j != k) tail += j * std::ldexp(1.0, -j);
    row.predicted = sc.c * k - tail;
    row.min_observed = kInf;
    for (double x : xs) {
      const double v = selector_v(x, t[k - 1]);
      const double X = x * std::sqrt(1.0 + v * v);
      // terms known only by a bound count against the observed value
      cplx sum = 0.0;
      double slack = 0.0;
      for (int j = 1; j <= K; ++j) {
        const auto term = ft_free_term(base, t[j - 1], 0.5 * v, X);
        if (term.exact) sum += static_cast<double>(j) * term.value;
        else slack += j * term.bound;
      }
      const double val = std::abs(sum) - slack;
      row.min_observed = std::min(row.min_observed, val);
      if (!(val > row.predicted)) rep.all_exceed = false;
    }
  }
  rep.monotone = true;
  for (int k = 1; k < K; ++k)
    if (!(rep.rows[k].min_observed > rep.rows[k - 1].min_observed)) rep.monotone = false;

  // Sobolev control by the triangle inequality
  rep.sobolev_s = o.sobolev_s;
  for (double s : o.sobolev_s) {
    std::vector<double> partial;
    double acc = 0.0, sched = 0.0;
    for (int j = 1; j <= K; ++j) {
      const double tj = t[j - 1];
      acc += j * sobolev_norm_fourier(ft_family(base, tj, ft_grid(base, tj)), s);
      sched += j * std::pow(tj, 0.5 - 2.0 * s);
      partial.push_back(acc);
    }
    const double last = partial[K - 1] - partial[K - 2];
    const double before = K >= 3 ? partial[K - 2] - partial[K - 3] : partial[0];
    rep.sobolev_tail_ratio.push_back(last / before);
    rep.sobolev_partial.push_back(partial);
    rep.schedule_sum.push_back(sched);
  }
  return rep;
}

double ft_sobolev_slope(const Profile& base, double s,
                        std::span<const double> t_values) {
  require(t_values.size() >= 2, "ft_sobolev_slope: need at least two t values");
  std::vector<double> lx, ly;
  for (double t : t_values) {
    const auto f = ft_family(base, t, ft_grid(base, t));
    lx.push_back(std::log(t));
    ly.push_back(std::log(sobolev_norm_fourier(f, s)));
  }
  return least_squares_slope(lx, ly);
}

}  // namespace hsp
