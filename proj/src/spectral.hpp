#pragma once

// FFT helpers shared by the Sobolev norm and the free propagator.

#include <vector>

#include "hsp/grid.hpp"

namespace hsp::detail {

/// Trapezoid transform F(xi_m) = sum_k w_k f_k exp(-i x_k xi_m) on the
/// frequencies xi_m = (m - M/2) * dxi, m = 0..M-1, M = pad * n_points,
/// dxi = 2 pi / (M h).  Computed with one FFT.
struct SampledSpectrum {
  double dxi = 0.0;
  double xi0 = 0.0;  // frequency of entry 0
  std::vector<cplx> values;

  double frequency(std::size_t m) const {
    return xi0 + static_cast<double>(m) * dxi;
  }
};

SampledSpectrum sampled_spectrum(const GridFunction& f, std::size_t pad);

}  // namespace hsp::detail
