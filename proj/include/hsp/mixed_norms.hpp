#pragma once

#include <limits>
#include <span>

#include "hsp/grid.hpp"

namespace hsp {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Trapezoid L^p norm; p = kInf gives the sample maximum.
double lp_norm(std::span<const cplx> values, double spacing, double p);
double lp_norm(const GridFunction& f, double p);

struct MixedNormSpec {
  double p = 2.0;
  double q = 2.0;
  double t_lo = 0.0;
  double t_hi = 1.0;
  int n_t = 2;

  void validate() const;
  double time(int k) const;
};

/// L^q_t L^p_x norm of a family sampled at spec.n_t uniform times.
double mixed_norm(std::span<const GridFunction> u, const MixedNormSpec& spec);

/// (1+v^2)^{-q(d/p + 2/q - d/2)/2}.  For q = kInf the limit is returned:
/// 1 on the admissible line or at v = 0, otherwise 0 or +inf.
double change_of_variables_weight(double v, double p, double q, int d = 1);

/// True when 1/p + 2/q = 1/2 within 1e-12 (d = 1).
bool is_admissible(double p, double q);

struct StrichartzOptions {
  int n_t = 513;            // uniform samples of t in [0, pi/4]
  int n_v = 513;            // samples of arctan v in [0, arctan v_max]
  double v_max = 200.0;
  double x_resolution = 1.0;  // scales the output-grid density on the free side
  double tail_tolerance = 0.05;
};

struct StrichartzResult {
  double lhs = 0.0;        // ||exp(-itH) f|| in L^q((0,pi/4), L^p)
  double rhs = 0.0;        // ||exp(iv Laplacian) f|| in L^q((0,inf), L^p)
  double lhs_power = 0.0;  // q-th powers; equal to lhs, rhs when q = inf
  double rhs_power = 0.0;
  double tail = 0.0;       // analytic contribution of v > v_max to rhs_power
  double rel_err = 0.0;
};

/// Both sides of the Hermite/free Strichartz equality.  The Hermite side
/// is evaluated spectrally on f's grid, the free side on per-v output grids
/// sized from f's support and band.
StrichartzResult strichartz_check(const GridFunction& f, double p, double q,
                                  const StrichartzOptions& opts = {});

struct SubstitutionResult {
  double direct = 0.0;       // int_0^{pi/4} ||exp(-itH) f||_p^q dt
  double substituted = 0.0;  // (1/2) int_0^inf w(v) ||exp(i(v/2) Laplacian) f||_p^q dv
  double rel_err = 0.0;
};

/// The t = arctan(v)/2 change of variables for arbitrary (p, q), q finite.
SubstitutionResult substitution_consistency(const GridFunction& f, double p,
                                            double q,
                                            const StrichartzOptions& opts = {});

}  // namespace hsp
