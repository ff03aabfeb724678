#pragma once

#include <span>
#include <vector>

#include "hsp/grid.hpp"
#include "hsp/mixed_norms.hpp"

namespace hsp {

/// Closed interval with possibly infinite endpoints.
struct Interval {
  double lo = -kInf;
  double hi = kInf;
};

struct OscParams {
  double a = 0.0;
  double b = 0.0;
  Interval J;
};

/// int_J exp(i(a t + b t^2)) |t|^{-1/2} dt.  Each half-line piece is moved
/// onto steepest-descent contours from its endpoints, split at the
/// stationary point; unbounded J needs no truncation.
cplx osc_integral(const OscParams& params);

/// min(|a|^{-1/2}, |b|^{-1/4}); a zero coefficient drops out.
double osc_bound(double a, double b);

/// |osc_integral| / osc_bound.
double osc_ratio(const OscParams& params);

struct SweepCell {
  double a = 0.0;
  double b = 0.0;
  cplx value;
  double bound = 0.0;
  double ratio = 0.0;
};

struct SweepResult {
  std::vector<double> a_values;
  std::vector<double> b_values;
  std::vector<SweepCell> cells;  // row-major in (a, b); (0, 0) skipped
  double max_ratio = 0.0;
  SweepCell argmax;
  /// Some cell within 1e-9 of the maximum lies off the outermost a and b
  /// values of the grid.
  bool interior = false;
  int extensions = 0;
};

SweepResult bound_sweep(std::span<const double> a_values,
                        std::span<const double> b_values,
                        const Interval& J = {});

/// Values {-10^k_hi, ..., -10^k_lo, 10^k_lo, ..., 10^k_hi}.
std::vector<double> signed_decades(int k_lo, int k_hi);

/// Sweep over signed_decades(k_lo, k_hi) for both coefficients.  While the
/// maximum sits only on the grid boundary, the offending side is widened by
/// one decade, at most max_extensions times.
SweepResult bound_sweep_decades(int k_lo, int k_hi, const Interval& J = {},
                                int max_extensions = 4);

/// Largest ratio over all sub-intervals [e_i, e_j] of the given sorted
/// endpoints (infinite endpoints allowed).
double max_subinterval_ratio(double a, double b,
                             std::span<const double> endpoints);

}  // namespace hsp
