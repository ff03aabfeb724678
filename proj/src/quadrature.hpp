#pragma once

#include <cmath>
#include <vector>

namespace hsp::detail {

struct GaussRule {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule; computed once per n and cached.
const GaussRule& gauss_legendre(int n);

/// Composite rule over consecutive breakpoints.
template <class T, class F>
T integrate_panels(F&& f, const std::vector<double>& breaks,
                   const GaussRule& rule) {
  T sum{};
  for (std::size_t p = 0; p + 1 < breaks.size(); ++p) {
    const double mid = 0.5 * (breaks[p] + breaks[p + 1]);
    const double half = 0.5 * (breaks[p + 1] - breaks[p]);
    if (half == 0.0) continue;
    T panel{};
    for (std::size_t k = 0; k < rule.nodes.size(); ++k)
      panel += rule.weights[k] * f(mid + half * rule.nodes[k]);
    sum += half * panel;
  }
  return sum;
}

/// Breakpoints 0, u_max 2^-levels, ..., u_max/2 followed by n_uniform equal
/// panels on [u_max/2, u_max].
std::vector<double> graded_breaks(double u_max, int levels, int n_uniform);

}  // namespace hsp::detail
