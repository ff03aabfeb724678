#include "hsp/mixed_norms.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hsp/error.hpp"
#include "hsp/hermite_basis.hpp"
#include "hsp/propagators.hpp"

namespace hsp {

namespace {

void check_exponent(double p, const char* name) {
  require(p >= 1.0 && !std::isnan(p),
          std::string("exponent ") + name + " must lie in [1, inf], got " +
              std::to_string(p));
}

double inv(double p) { return std::isinf(p) ? 0.0 : 1.0 / p; }

// Hermite side: ||exp(-i t_k H) f||_p at n_t uniform times on [0, t_hi].
std::vector<double> hermite_side_norms(const GridFunction& f, double p,
                                       int n_t, double t_hi) {
  const Grid& g = f.grid;
  const int n_max = max_supported_order(g);
  const auto c = analyze(f, n_max);
  const auto back = synthesize(c, g);
  double res = 0.0, ref = 0.0;
  for (std::size_t k = 0; k < g.size(); ++k) {
    res = std::max(res, std::abs(back.values[k] - f.values[k]));
    ref = std::max(ref, std::abs(f.values[k]));
  }
  if (res > 1e-8 * std::max(ref, 1e-300))
    fail(ErrorKind::resolution,
         "strichartz_check: initial datum is not resolved by Hermite "
         "functions of order <= " +
             std::to_string(n_max) + " on its grid (residual " +
             std::to_string(res / ref) + ")");

  const auto table = eval_hermite(n_max, g);
  std::vector<double> norms(n_t);
  std::vector<cplx> u(g.size());
  for (int k = 0; k < n_t; ++k) {
    const double t = t_hi * k / (n_t - 1);
    const auto ct = propagate_spectral(c, t);
    std::fill(u.begin(), u.end(), cplx(0.0));
    for (int n = 0; n <= n_max; ++n) {
      const auto row = table.row(n);
      const cplx cn = ct.coeffs[n];
      for (std::size_t j = 0; j < u.size(); ++j) u[j] += cn * row[j];
    }
    norms[k] = lp_norm(u, g.spacing(), p);
  }
  return norms;
}

struct FreeSide {
  double power = 0.0;  // integral (or sup when q = inf)
  double tail = 0.0;
};

// int_0^{v_max} weight(v) ||exp(iv Laplacian) f||_p^q dv plus the tail
// C / v_max, where the integrand decays like C v^{-2}.
template <class Weight>
FreeSide free_side(const FreeEvolution& evo, double p, double q,
                   const StrichartzOptions& o, Weight weight) {
  const GridFunction& f = evo.initial();
  FreeSide out;
  if (evo.is_zero()) return out;
  const double len = evo.support_hi() - evo.support_lo() + 2.0;
  const double band = evo.band_hi() - evo.band_lo();
  const double p_eff = std::isinf(p) ? 8.0 : std::max(p, 2.0);
  const double theta_max = std::atan(o.v_max);

  std::vector<double> g(o.n_v);
  for (int k = 0; k < o.n_v; ++k) {
    const double theta = theta_max * k / (o.n_v - 1);
    const double v = std::tan(theta);
    double norm;
    if (k == 0) {
      norm = lp_norm(f, p);
    } else {
      // |u|^2 has x-band at most min(band, len/(2v))
      const double b2 = std::min(band, len / (2.0 * v));
      const double h = 2.0 * kPi / (p_eff * b2) / o.x_resolution;
      const double x_lo = evo.support_lo() + 2.0 * v * evo.band_lo() - 1.0;
      const double x_hi = evo.support_hi() + 2.0 * v * evo.band_hi() + 1.0;
      const auto n = static_cast<std::size_t>(std::ceil((x_hi - x_lo) / h)) + 1;
      const Grid out_grid(0.5 * (x_hi - x_lo), std::max<std::size_t>(n, 3));
      auto x = out_grid.points();
      const double centre = 0.5 * (x_hi + x_lo);
      for (auto& xi : x) xi += centre;
      const auto u = evo.evaluate(v, x);
      norm = lp_norm(u, out_grid.spacing(), p);
    }
    const double w = weight(v);
    if (std::isinf(q)) {
      g[k] = w * norm;
    } else {
      const double sec2 = 1.0 + v * v;
      g[k] = w * std::pow(norm, q) * sec2;  // dv = sec^2(theta) dtheta
    }
  }
  if (std::isinf(q)) {
    out.power = *std::max_element(g.begin(), g.end());
    return out;
  }
  const double dtheta = theta_max / (o.n_v - 1);
  out.power = trapezoid(g, dtheta);
  // g at the last node equals v^2 (1 + 1/v^2) times the integrand
  const double c = g.back() * o.v_max * o.v_max / (1.0 + o.v_max * o.v_max);
  out.tail = c / o.v_max;
  out.power += out.tail;
  return out;
}

}  // namespace

double lp_norm(std::span<const cplx> values, double spacing, double p) {
  check_exponent(p, "p");
  if (std::isinf(p)) {
    double m = 0.0;
    for (const auto& z : values) m = std::max(m, std::abs(z));
    return m;
  }
  std::vector<double> a(values.size());
  for (std::size_t k = 0; k < values.size(); ++k)
    a[k] = std::pow(std::abs(values[k]), p);
  return std::pow(trapezoid(a, spacing), 1.0 / p);
}

double lp_norm(const GridFunction& f, double p) {
  return lp_norm(f.values, f.grid.spacing(), p);
}

void MixedNormSpec::validate() const {
  check_exponent(p, "p");
  check_exponent(q, "q");
  require(std::isfinite(t_lo) && std::isfinite(t_hi) && t_lo < t_hi,
          "mixed norm: time interval must satisfy t_lo < t_hi");
  require(n_t >= 2, "mixed norm: n_t must be at least 2, got " +
                        std::to_string(n_t));
}

double MixedNormSpec::time(int k) const {
  return t_lo + (t_hi - t_lo) * k / (n_t - 1);
}

double mixed_norm(std::span<const GridFunction> u, const MixedNormSpec& spec) {
  spec.validate();
  require(u.size() == static_cast<std::size_t>(spec.n_t),
          "mixed norm: family has " + std::to_string(u.size()) +
              " samples, spec expects " + std::to_string(spec.n_t));
  std::vector<double> norms(u.size());
  for (std::size_t k = 0; k < u.size(); ++k) norms[k] = lp_norm(u[k], spec.p);
  if (std::isinf(spec.q)) return *std::max_element(norms.begin(), norms.end());
  for (auto& n : norms) n = std::pow(n, spec.q);
  const double dt = (spec.t_hi - spec.t_lo) / (spec.n_t - 1);
  return std::pow(trapezoid(norms, dt), 1.0 / spec.q);
}

double change_of_variables_weight(double v, double p, double q, int d) {
  check_exponent(p, "p");
  check_exponent(q, "q");
  require(v >= 0.0, "change_of_variables_weight: v must be >= 0");
  require(d >= 1, "change_of_variables_weight: d must be >= 1");
  const double gap = d * inv(p) + 2.0 * inv(q) - 0.5 * d;
  if (v == 0.0 || std::abs(gap) < 1e-12) return 1.0;
  if (std::isinf(q)) return gap > 0.0 ? 0.0 : kInf;
  return std::pow(1.0 + v * v, -0.5 * q * gap);
}

bool is_admissible(double p, double q) {
  return std::abs(inv(p) + 2.0 * inv(q) - 0.5) < 1e-12;
}

namespace {

void check_options(const StrichartzOptions& o) {
  require(o.n_t >= 2 && o.n_v >= 2, "strichartz: n_t and n_v must be >= 2");
  require(o.v_max > 0.0 && std::isfinite(o.v_max),
          "strichartz: v_max must be positive");
  require(o.x_resolution > 0.0, "strichartz: x_resolution must be positive");
}

}  // namespace

StrichartzResult strichartz_check(const GridFunction& f, double p, double q,
                                  const StrichartzOptions& opts) {
  check_exponent(p, "p");
  check_exponent(q, "q");
  if (!is_admissible(p, q))
    fail(ErrorKind::precondition,
         "strichartz: (p, q) = (" + std::to_string(p) + ", " +
             std::to_string(q) +
             ") violates the admissibility condition 1/p + 2/q = 1/2");
  check_options(opts);
  f.validate();

  StrichartzResult r;
  const auto norms = hermite_side_norms(f, p, opts.n_t, kPi / 4);
  if (std::isinf(q)) {
    r.lhs_power = *std::max_element(norms.begin(), norms.end());
  } else {
    std::vector<double> g(norms.size());
    for (std::size_t k = 0; k < g.size(); ++k) g[k] = std::pow(norms[k], q);
    r.lhs_power = trapezoid(g, (kPi / 4) / (opts.n_t - 1));
  }

  const FreeEvolution evo(f);
  const auto side = free_side(evo, p, q, opts, [](double) { return 1.0; });
  r.rhs_power = side.power;
  r.tail = side.tail;
  if (r.rhs_power > 0.0 && r.tail > opts.tail_tolerance * r.rhs_power)
    fail(ErrorKind::truncation,
         "strichartz: tail beyond v_max carries " +
             std::to_string(r.tail / r.rhs_power) +
             " of the free-side integral; raise v_max");

  const double root = std::isinf(q) ? 1.0 : 1.0 / q;
  r.lhs = std::pow(r.lhs_power, root);
  r.rhs = std::pow(r.rhs_power, root);
  r.rel_err = r.rhs > 0.0 ? std::abs(r.lhs - r.rhs) / r.rhs
                          : (r.lhs > 0.0 ? kInf : 0.0);
  return r;
}

SubstitutionResult substitution_consistency(const GridFunction& f, double p,
                                            double q,
                                            const StrichartzOptions& opts) {
  check_exponent(p, "p");
  check_exponent(q, "q");
  require(std::isfinite(q), "substitution_consistency: q must be finite");
  check_options(opts);
  f.validate();

  SubstitutionResult r;
  const auto norms = hermite_side_norms(f, p, opts.n_t, kPi / 4);
  std::vector<double> g(norms.size());
  for (std::size_t k = 0; k < g.size(); ++k) g[k] = std::pow(norms[k], q);
  r.direct = trapezoid(g, (kPi / 4) / (opts.n_t - 1));

  // (1/2) int w(v') ||exp(i(v'/2) Lap) f||^q dv' with v' = 2v
  const FreeEvolution evo(f);
  const auto side = free_side(evo, p, q, opts, [&](double v) {
    return change_of_variables_weight(2.0 * v, p, q, 1);
  });
  r.substituted = side.power;
  r.rel_err = r.substituted > 0.0
                  ? std::abs(r.direct - r.substituted) / r.substituted
                  : (r.direct > 0.0 ? kInf : 0.0);
  return r;
}

}  // namespace hsp
